"""Ground-truth answer-set machinery: reducts, brute-force counting, and
the SAT-based justification checks used to separate answer sets from other
completion models.

Everything here is deliberately straightforward; this module is the oracle
the encodings are validated against.
"""

from dataclasses import dataclass

from .cnf import CnfFormula
from .completion import CompletionArtifact, clark_completion, completion_model_check
from .copyenc import copy_operation
from .depgraph import build_dependency_graph, loop_atoms
from .program import GroundProgram, Interpretation, Rule, satisfies_program
from .sat import solve_clauses, unit_propagate, CONFLICT

BRUTE_FORCE_ATOM_LIMIT = 25


@dataclass(frozen=True)
class ReductRule:
    head: frozenset[int]
    pos_body: frozenset[int]


@dataclass
class ReductProgram:
    num_atoms: int
    rules: list[ReductRule]


def gl_reduct(program: GroundProgram, interp: Interpretation) -> ReductProgram:
    """The reduct: drop every rule whose negative body meets ``interp``,
    strip negative bodies from the rest."""
    rules = [
        ReductRule(r.head, r.pos_body)
        for r in program.rules
        if not r.neg_body & interp
    ]
    return ReductProgram(program.num_atoms, rules)


def _reduct_clauses(reduct: ReductProgram) -> list[tuple[int, ...]]:
    clauses = []
    for rule in reduct.rules:
        if rule.head & rule.pos_body:
            continue
        clause = [x + 1 for x in sorted(rule.head)]
        clause += [-(b + 1) for b in sorted(rule.pos_body)]
        clauses.append(tuple(sorted(clause, key=abs)))
    return clauses


def justification_check_all(
    program: GroundProgram, interp: Interpretation
) -> frozenset[int] | None:
    """Search for a proper subset of ``interp`` satisfying the reduct.

    Requires ``interp`` to be a classical model of the program. Returns the
    witness subset, or None when every atom of ``interp`` is justified
    (i.e. ``interp`` is an answer set). Note an empty witness is a real
    witness; compare against None, not for truthiness.
    """
    if not satisfies_program(interp, program):
        raise ValueError("interpretation is not a model of the program")
    clauses = _reduct_clauses(gl_reduct(program, interp))
    for x in range(program.num_atoms):
        if x not in interp:
            clauses.append((-(x + 1),))
    clauses.append(tuple(-(x + 1) for x in sorted(interp)))
    model = solve_clauses(clauses, program.num_atoms)
    if model is None:
        return None
    return frozenset(x for x in interp if model[x + 1])


def is_answer_set(program: GroundProgram, interp: Interpretation) -> bool:
    if not satisfies_program(interp, program):
        return False
    return justification_check_all(program, interp) is None


def count_answer_sets_bruteforce(program: GroundProgram) -> int:
    """Count answer sets by scanning all 2^n interpretations.

    Refuses programs with more than BRUTE_FORCE_ATOM_LIMIT atoms.
    """
    n = program.num_atoms
    if n > BRUTE_FORCE_ATOM_LIMIT:
        raise ValueError(
            f"brute force is capped at {BRUTE_FORCE_ATOM_LIMIT} atoms, got {n}"
        )
    count = 0
    for bits in range(1 << n):
        interp = frozenset(x for x in range(n) if bits >> x & 1)
        if not satisfies_program(interp, program):
            continue
        if justification_check_all(program, interp) is None:
            count += 1
    return count


def answer_sets_bruteforce(program: GroundProgram) -> list[Interpretation]:
    """All answer sets, same scan as count_answer_sets_bruteforce."""
    n = program.num_atoms
    if n > BRUTE_FORCE_ATOM_LIMIT:
        raise ValueError(
            f"brute force is capped at {BRUTE_FORCE_ATOM_LIMIT} atoms, got {n}"
        )
    out = []
    for bits in range(1 << n):
        interp = frozenset(x for x in range(n) if bits >> x & 1)
        if satisfies_program(interp, program) and (
            justification_check_all(program, interp) is None
        ):
            out.append(interp)
    return out


def _require_completion_model(
    program: GroundProgram,
    interp: Interpretation,
    completion: CompletionArtifact | None,
) -> CompletionArtifact:
    if completion is None:
        completion = clark_completion(program)
    if not completion_model_check(completion, interp):
        raise ValueError("interpretation is not a model of the completion")
    return completion


def justification_check_loops(
    program: GroundProgram,
    interp: Interpretation,
    loops: frozenset[int] | None = None,
    completion: CompletionArtifact | None = None,
) -> frozenset[int] | None:
    """Like justification_check_all, but only loop atoms may be dropped:
    true non-loop atoms stay fixed, and at least one true loop atom must go
    false. Requires ``interp`` to be a model of the completion.

    Returns the witness assignment (as the set of true atoms) or None.
    """
    _require_completion_model(program, interp, completion)
    if loops is None:
        loops = loop_atoms(build_dependency_graph(program))
    clauses = _reduct_clauses(gl_reduct(program, interp))
    for x in range(program.num_atoms):
        if x not in interp:
            clauses.append((-(x + 1),))
        elif x not in loops:
            clauses.append((x + 1,))
    clauses.append(tuple(-(x + 1) for x in sorted(interp & loops)))
    model = solve_clauses(clauses, program.num_atoms)
    if model is None:
        return None
    return frozenset(x for x in range(program.num_atoms) if model[x + 1])


def copy_check(
    program: GroundProgram,
    interp: Interpretation,
    loops: frozenset[int] | None = None,
    completion: CompletionArtifact | None = None,
) -> bool:
    """The unit-propagation justification test.

    Builds the copy clauses, unit-propagates the interpretation, conjoins
    the demand that some true loop atom lose its copy, and solves. Requires
    ``interp`` to be a model of the completion. Returns True when
    satisfiable, i.e. exactly when ``interp`` is not an answer set.
    """
    _require_completion_model(program, interp, completion)
    if loops is None:
        loops = loop_atoms(build_dependency_graph(program))
    n = program.num_atoms
    ordered = sorted(loops)
    copies = {x: n + 1 + i for i, x in enumerate(ordered)}
    cp = copy_operation(program, loops, copies)
    formula = CnfFormula(n + len(ordered), cp.clauses)
    assignment = {x + 1: (x in interp) for x in range(n)}
    propagated = unit_propagate(formula, assignment)
    if propagated is CONFLICT:
        return False
    clauses = list(propagated.clauses)
    clauses.append(tuple(-copies[x] for x in ordered if x in interp))
    return solve_clauses(clauses, formula.num_vars) is not None
