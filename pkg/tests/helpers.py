"""Independent oracles and random generators shared by the test suite.

Everything here recomputes ground truth by a different route than the code
under test: truth tables for counting, DFS reachability for cycles, direct
implication evaluation for the completion, and subset enumeration for
answer-set minimality.
"""

import random

import numpy as np

from aspsubcount import CnfFormula, gl_reduct, satisfies_program


def tt_count(cnf: CnfFormula) -> int:
    """Model count by truth-table enumeration (vectorized)."""
    n = cnf.num_vars
    masks = np.arange(1 << n, dtype=np.int64)
    sat = np.ones(1 << n, dtype=bool)
    for clause in cnf.clauses:
        clause_sat = np.zeros(1 << n, dtype=bool)
        for lit in clause:
            bit = ((masks >> (abs(lit) - 1)) & 1).astype(bool)
            clause_sat |= bit if lit > 0 else ~bit
        sat &= clause_sat
    return int(sat.sum())


def tt_projected_count(cnf: CnfFormula, project_out) -> int:
    """Projected count: distinct kept-variable patterns among all models."""
    n = cnf.num_vars
    masks = np.arange(1 << n, dtype=np.int64)
    sat = np.ones(1 << n, dtype=bool)
    for clause in cnf.clauses:
        clause_sat = np.zeros(1 << n, dtype=bool)
        for lit in clause:
            bit = ((masks >> (abs(lit) - 1)) & 1).astype(bool)
            clause_sat |= bit if lit > 0 else ~bit
        sat &= clause_sat
    kept_mask = 0
    for v in range(1, n + 1):
        if v not in project_out:
            kept_mask |= 1 << (v - 1)
    return int(np.unique(masks[sat] & kept_mask).size)


def eval_clauses(clauses, assignment: dict) -> bool:
    return all(
        any(assignment[abs(lit)] == (lit > 0) for lit in clause) for clause in clauses
    )


def all_interpretations(num_atoms: int):
    for bits in range(1 << num_atoms):
        yield frozenset(x for x in range(num_atoms) if bits >> x & 1)


def direct_completion_holds(program, interp) -> bool:
    """Evaluate the completion as implications, no CNF involved."""
    heads = {a: [] for a in range(program.num_atoms)}
    for rule in program.rules:
        for a in rule.head:
            heads[a].append(rule)
    for a in range(program.num_atoms):
        if not heads[a] and a in interp:
            return False
    for rule in program.rules:
        body_true = rule.pos_body <= interp and not (rule.neg_body & interp)
        if body_true and not (rule.head & interp):
            return False
    for a in interp:
        if not heads[a]:
            continue
        supported = False
        for rule in heads[a]:
            if (
                rule.pos_body <= interp
                and not (rule.neg_body & interp)
                and not ((rule.head - {a}) & interp)
            ):
                supported = True
                break
        if not supported:
            return False
    return True


def cyclic_atoms_dfs(graph) -> frozenset:
    """Atoms on a directed cycle, by plain reachability from successors."""
    out = set()
    for start in range(graph.num_nodes):
        seen = set()
        stack = list(graph.successors[start])
        while stack:
            node = stack.pop()
            if node == start:
                out.add(start)
                break
            if node in seen:
                continue
            seen.add(node)
            stack.extend(graph.successors[node])
    return frozenset(out)


def reduct_satisfied(interp, reduct) -> bool:
    return all(
        (rule.head & interp) or (rule.pos_body - interp) for rule in reduct.rules
    )


def answer_sets_by_definition(program):
    """Answer sets by the textbook definition: classical models whose reduct
    has no smaller model among their proper subsets. No SAT involved."""
    out = []
    for interp in all_interpretations(program.num_atoms):
        if not satisfies_program(interp, program):
            continue
        reduct = gl_reduct(program, interp)
        members = sorted(interp)
        minimal = True
        for bits in range((1 << len(members)) - 1):  # proper subsets only
            sub = frozenset(
                members[i] for i in range(len(members)) if bits >> i & 1
            )
            if reduct_satisfied(sub, reduct):
                minimal = False
                break
        if minimal:
            out.append(interp)
    return out


def random_program_text(
    rng: random.Random,
    max_atoms: int = 10,
    max_rules: int = 16,
    max_head: int = 3,
    force_loop: bool | None = None,
) -> str:
    """Random ground program text. About half the draws get an injected
    positive cycle when force_loop is None."""
    n = rng.randint(2, max_atoms)
    names = [f"a{i}" for i in range(n)]
    if force_loop is None:
        force_loop = rng.random() < 0.5
    budget = rng.randint(1, max_rules - 2 if force_loop else max_rules)
    lines = []
    for _ in range(budget):
        head_size = rng.choices([0, 1, 2, 3], weights=[15, 50, 25, 10])[0]
        head_size = min(head_size, max_head, n)
        head = rng.sample(names, head_size)
        pos = rng.sample(names, min(rng.choices([0, 1, 2, 3], weights=[30, 40, 20, 10])[0], n))
        neg = rng.sample(names, min(rng.choices([0, 1, 2], weights=[50, 35, 15])[0], n))
        if not head and not pos and not neg:
            head = [rng.choice(names)]
        body = pos + ["not " + x for x in neg]
        if head and not body:
            lines.append(" | ".join(head) + ".")
        elif head:
            lines.append(" | ".join(head) + " :- " + ", ".join(body) + ".")
        else:
            lines.append(":- " + ", ".join(body) + ".")
    if force_loop:
        if n >= 2 and rng.random() < 0.8:
            x, y = rng.sample(names, 2)
            lines.append(f"{x} :- {y}.")
            lines.append(f"{y} :- {x}.")
        else:
            x = rng.choice(names)
            lines.append(f"{x} :- {x}.")
    return "\n".join(lines) + "\n"


def random_tight_program_text(
    rng: random.Random, max_atoms: int = 10, max_rules: int = 16, max_head: int = 3
) -> str:
    """Random program with no positive cycles: positive body atoms always
    have strictly smaller index than every head atom."""
    n = rng.randint(2, max_atoms)
    names = [f"a{i}" for i in range(n)]
    budget = rng.randint(1, max_rules)
    lines = []
    for _ in range(budget):
        head_size = min(rng.choices([0, 1, 2, 3], weights=[15, 50, 25, 10])[0], n)
        head_idx = sorted(rng.sample(range(n), head_size))
        if head_idx:
            lowest = head_idx[0]
            pos_pool = list(range(lowest))
        else:
            pos_pool = list(range(n))
        pos_size = min(rng.choices([0, 1, 2], weights=[40, 40, 20])[0], len(pos_pool))
        pos = rng.sample(pos_pool, pos_size)
        neg = rng.sample(range(n), min(rng.choices([0, 1, 2], weights=[50, 35, 15])[0], n))
        head = [names[i] for i in head_idx]
        body = [names[i] for i in pos] + ["not " + names[i] for i in neg]
        if not head and not body:
            head = [rng.choice(names)]
        if head and not body:
            lines.append(" | ".join(head) + ".")
        elif head:
            lines.append(" | ".join(head) + " :- " + ", ".join(body) + ".")
        else:
            lines.append(":- " + ", ".join(body) + ".")
    return "\n".join(lines) + "\n"


def random_cnf(rng: random.Random, max_vars: int = 16, max_clauses: int = 40) -> CnfFormula:
    n = rng.randint(1, max_vars)
    m = rng.randint(0, max_clauses)
    clauses = []
    for _ in range(m):
        width = min(rng.choices([1, 2, 3, 4], weights=[10, 30, 40, 20])[0], n)
        variables = rng.sample(range(1, n + 1), width)
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in variables))
    if rng.random() < 0.02:
        clauses.append(())
    return CnfFormula(n, clauses)
