"""Copy encoding: the machinery that separates answer sets from the other
completion models.

For every loop atom x the encoding introduces a copy variable x_c and two
clause families:

* type 1: x_c -> x for every loop atom x;
* type 2: for every rule whose head meets the loop atoms, the rule as an
  implication with every loop atom in the head or positive body replaced by
  its copy (negative body atoms are never replaced).

The surplus formula conjoins the completion with two independent copies
(prime and star), orders them pointwise (x' -> x*), and demands strictness
somewhere (some x with x' false and x* true). Counting its models projected
onto the atom variables counts exactly the completion models that are not
answer sets, so subtracting yields the answer-set count.
"""

from dataclasses import dataclass

from .cnf import CnfFormula, dimacs
from .completion import CompletionArtifact, clark_completion
from .depgraph import build_dependency_graph, loop_atoms
from .program import GroundProgram


@dataclass
class CopyProgram:
    """Clauses of one copy instance, over atom vars plus the given copies."""

    tag: str
    copy_map: dict[int, int]
    type1: list[tuple[int, ...]]
    type2: list[tuple[int, ...]]

    @property
    def clauses(self) -> list[tuple[int, ...]]:
        return self.type1 + self.type2


def copy_operation(
    program: GroundProgram,
    loops: frozenset[int],
    copy_map: dict[int, int],
    tag: str = "'",
) -> CopyProgram:
    """Build the copy clauses for the given loop atoms.

    ``copy_map`` assigns each loop atom its copy variable; atom id i itself
    is variable i + 1. For a tight program (no loop atoms) the result is
    empty. Trivially true implications (a rule whose substituted head meets
    its substituted positive body) are dropped.
    """
    for x in loops:
        if x not in copy_map:
            raise ValueError(f"loop atom {x} has no copy variable")

    def f(x: int) -> int:
        return copy_map[x] if x in loops else x + 1

    type1 = [(-copy_map[x], x + 1) for x in sorted(loops)]
    type2 = []
    for rule in program.rules:
        if not rule.head & loops:
            continue
        lits = {f(x) for x in rule.head}
        lits |= {-f(b) for b in rule.pos_body}
        lits |= {c + 1 for c in rule.neg_body}
        if any(-lit in lits for lit in lits):
            continue
        type2.append(tuple(sorted(lits, key=abs)))
    return CopyProgram(tag, dict(copy_map), type1, type2)


@dataclass
class SurplusArtifact:
    """The projected-counting side of the subtraction.

    projection_out holds every non-atom variable (both copies and all
    auxiliaries); counting models of ``cnf`` projected onto the remaining
    atom variables counts completion models that are not answer sets.
    """

    cnf: CnfFormula
    projection_out: frozenset[int]
    atom_vars: dict[int, int]
    cv_prime: dict[int, int]
    cv_star: dict[int, int]
    aux_vars: frozenset[int]

    def show_vars(self) -> list[int]:
        return sorted(set(self.atom_vars.values()))

    def to_dimacs(self, program: GroundProgram) -> str:
        names = {self.atom_vars[a.id]: a.name for a in program.atoms}
        return dimacs(self.cnf, atom_names=names, show=self.show_vars())

    def variable_map(self, program: GroundProgram) -> dict:
        name = program.name_of
        return {
            "atoms": {name(a): v for a, v in sorted(self.atom_vars.items())},
            "cv_prime": {name(a): v for a, v in sorted(self.cv_prime.items())},
            "cv_star": {name(a): v for a, v in sorted(self.cv_star.items())},
            "aux": sorted(self.aux_vars),
        }


def overcount_formula(program: GroundProgram) -> CompletionArtifact:
    """The formula whose model count includes every answer set (the
    completion); counting it is the minuend of the subtraction."""
    return clark_completion(program)


def surplus_formula(
    program: GroundProgram, completion: CompletionArtifact | None = None
) -> SurplusArtifact:
    """Build the subtrahend formula.

    For a tight program the strictness disjunction is empty, so the formula
    contains an empty clause and is unsatisfiable (surplus zero).
    """
    if completion is None:
        completion = clark_completion(program)
    loops = loop_atoms(build_dependency_graph(program))
    ordered = sorted(loops)
    base = completion.cnf.num_vars
    prime = {x: base + 1 + i for i, x in enumerate(ordered)}
    star = {x: base + 1 + len(ordered) + i for i, x in enumerate(ordered)}

    registry = dict(completion.cnf.var_registry)
    for x in ordered:
        registry[program.name_of(x) + "'"] = prime[x]
        registry[program.name_of(x) + "*"] = star[x]

    clauses = list(completion.cnf.clauses)
    clauses += copy_operation(program, loops, prime, "'").clauses
    clauses += copy_operation(program, loops, star, "*").clauses
    for x in ordered:
        clauses.append((-prime[x], star[x]))

    next_var = base + 2 * len(ordered) + 1
    witness_vars = []
    for x in ordered:
        e = next_var
        next_var += 1
        registry[f"@strict:{program.name_of(x)}"] = e
        clauses.append((-e, -prime[x]))
        clauses.append((-e, star[x]))
        clauses.append((e, prime[x], -star[x]))
        witness_vars.append(e)
    clauses.append(tuple(witness_vars))

    num_vars = next_var - 1
    n = program.num_atoms
    cnf = CnfFormula(num_vars, clauses, registry)
    return SurplusArtifact(
        cnf=cnf,
        projection_out=frozenset(range(n + 1, num_vars + 1)),
        atom_vars=dict(completion.atom_vars),
        cv_prime=prime,
        cv_star=star,
        aux_vars=completion.aux_vars | frozenset(witness_vars),
    )
