"""Self-contained SAT routines: unit propagation, solving, exact model
counting, and projected model counting.

Counts are plain Python ints, so arbitrarily large totals are exact. The
counters decompose the clause set into variable-disjoint components and
multiply the per-component counts, which is what makes families of
independent subproblems (count 2^k) tractable.
"""

from .cnf import CnfFormula

PartialAssignment = dict[int, bool]


class _Conflict:
    """Sentinel returned by unit_propagate when an empty clause appears."""

    def __repr__(self):
        return "CONFLICT"


CONFLICT = _Conflict()


def _lit_value(assignment: PartialAssignment, lit: int):
    val = assignment.get(abs(lit))
    if val is None:
        return None
    return val if lit > 0 else not val


def unit_propagate(formula: CnfFormula, assignment: PartialAssignment):
    """Syntactic unit propagation to a fixed point.

    Repeats two reductions until neither applies: drop every clause with a
    literal true under ``assignment``; delete from the remaining clauses
    every literal that is false under ``assignment`` or whose negation is a
    unit clause. Unit clauses themselves persist unless satisfied. Returns
    the reduced formula, or CONFLICT once an empty clause appears.
    """
    clauses = [tuple(c) for c in formula.clauses]
    while True:
        units = {c[0] for c in clauses if len(c) == 1}
        changed = False
        reduced: list[tuple[int, ...]] = []
        for clause in clauses:
            if any(_lit_value(assignment, lit) is True for lit in clause):
                changed = True
                continue
            kept = tuple(
                lit
                for lit in clause
                if _lit_value(assignment, lit) is not False and -lit not in units
            )
            if len(kept) != len(clause):
                changed = True
            if not kept:
                return CONFLICT
            reduced.append(kept)
        clauses = reduced
        if not changed:
            return CnfFormula(formula.num_vars, clauses, dict(formula.var_registry))


def solve_clauses(
    clauses, num_vars: int, assumptions: PartialAssignment | None = None
) -> PartialAssignment | None:
    """Satisfiability over variables 1..num_vars.

    Returns a total assignment extending ``assumptions`` (unconstrained
    variables default to false), or None if unsatisfiable.
    """
    assignment: PartialAssignment = dict(assumptions or {})
    for var in assignment:
        if not 1 <= var <= num_vars:
            raise ValueError(f"assumption variable {var} out of range")
    clause_list = [tuple(c) for c in clauses]
    if not _dpll(clause_list, assignment):
        return None
    for var in range(1, num_vars + 1):
        assignment.setdefault(var, False)
    return assignment


def solve(
    formula: CnfFormula, assumptions: PartialAssignment | None = None
) -> PartialAssignment | None:
    return solve_clauses(formula.clauses, formula.num_vars, assumptions)


def _dpll(clauses, assignment: PartialAssignment) -> bool:
    trail: list[int] = []

    def undo():
        for var in trail:
            del assignment[var]

    # propagate to fixed point
    while True:
        forced = None
        all_sat = True
        branch_var = None
        for clause in clauses:
            satisfied = False
            unassigned = None
            n_open = 0
            for lit in clause:
                val = _lit_value(assignment, lit)
                if val is True:
                    satisfied = True
                    break
                if val is None:
                    n_open += 1
                    unassigned = lit
            if satisfied:
                continue
            if n_open == 0:
                undo()
                return False
            all_sat = False
            if n_open == 1:
                forced = unassigned
                break
            if branch_var is None:
                branch_var = abs(unassigned)
        if forced is not None:
            assignment[abs(forced)] = forced > 0
            trail.append(abs(forced))
            continue
        if all_sat:
            return True
        break

    var = branch_var
    for value in (True, False):
        assignment[var] = value
        if _dpll(clauses, assignment):
            return True
        del assignment[var]
    undo()
    return False


def _reduce(clauses, lit: int):
    """Assign ``lit`` true: drop satisfied clauses, strip the negation.
    Returns None if an empty clause results."""
    out = []
    neg = -lit
    for clause in clauses:
        if lit in clause:
            continue
        if neg in clause:
            kept = tuple(x for x in clause if x != neg)
            if not kept:
                return None
            out.append(kept)
        else:
            out.append(clause)
    return out


def _components(clauses):
    """Partition clauses into variable-disjoint groups via union-find.
    Returns [(clauses, vars)] sorted by smallest variable."""
    parent: dict[int, int] = {}

    def find(v):
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    for clause in clauses:
        for lit in clause:
            parent.setdefault(abs(lit), abs(lit))
        first = find(abs(clause[0]))
        for lit in clause[1:]:
            parent[find(abs(lit))] = first
    groups: dict[int, list] = {}
    group_vars: dict[int, set[int]] = {}
    for clause in clauses:
        root = find(abs(clause[0]))
        groups.setdefault(root, []).append(clause)
        group_vars.setdefault(root, set()).update(abs(lit) for lit in clause)
    keys = sorted(groups, key=lambda r: min(group_vars[r]))
    return [(groups[k], group_vars[k]) for k in keys]


def _pick_var(clauses, candidates: set[int]) -> int:
    counts: dict[int, int] = {}
    for clause in clauses:
        for lit in clause:
            var = abs(lit)
            if var in candidates:
                counts[var] = counts.get(var, 0) + 1
    return max(counts, key=lambda v: (counts[v], -v))


def count_models(formula: CnfFormula) -> int:
    """Exact number of satisfying assignments over all num_vars variables."""
    return _count([tuple(c) for c in formula.clauses], set(range(1, formula.num_vars + 1)))


def _count(clauses, free: set[int]) -> int:
    free = set(free)
    while True:
        unit = next((c[0] for c in clauses if len(c) == 1), None)
        if unit is None:
            break
        clauses = _reduce(clauses, unit)
        if clauses is None:
            return 0
        free.discard(abs(unit))
    if any(not c for c in clauses):
        return 0
    if not clauses:
        return 1 << len(free)
    total = 1
    constrained: set[int] = set()
    for comp_clauses, comp_vars in _components(clauses):
        constrained |= comp_vars
        var = _pick_var(comp_clauses, comp_vars)
        sub = 0
        for lit in (var, -var):
            reduced = _reduce(comp_clauses, lit)
            if reduced is not None:
                sub += _count(reduced, comp_vars - {var})
        if sub == 0:
            return 0
        total *= sub
    return total << len(free - constrained)


def projected_count(formula: CnfFormula, project_out) -> int:
    """Number of distinct assignments to the kept variables (those not in
    ``project_out``) extendable to a model of the formula."""
    out = set(project_out)
    for var in out:
        if not 1 <= var <= formula.num_vars:
            raise ValueError(f"projected variable {var} out of range")
    kept = set(range(1, formula.num_vars + 1)) - out
    return _pcount([tuple(c) for c in formula.clauses], kept)


def _pcount(clauses, kept_free: set[int]) -> int:
    kept_free = set(kept_free)
    while True:
        unit = next((c[0] for c in clauses if len(c) == 1), None)
        if unit is None:
            break
        clauses = _reduce(clauses, unit)
        if clauses is None:
            return 0
        kept_free.discard(abs(unit))
    if any(not c for c in clauses):
        return 0
    if not clauses:
        return 1 << len(kept_free)
    total = 1
    constrained: set[int] = set()
    for comp_clauses, comp_vars in _components(clauses):
        constrained |= comp_vars
        comp_kept = comp_vars & kept_free
        if not comp_kept:
            # residual constraints touch only projected variables: they
            # contribute a factor of 1 if satisfiable, else kill the branch
            max_var = max(comp_vars)
            if solve_clauses(comp_clauses, max_var) is None:
                return 0
            continue
        var = _pick_var(comp_clauses, comp_kept)
        sub = 0
        for lit in (var, -var):
            reduced = _reduce(comp_clauses, lit)
            if reduced is not None:
                sub += _pcount(reduced, comp_kept - {var})
        if sub == 0:
            return 0
        total *= sub
    return total << len(kept_free - constrained)
