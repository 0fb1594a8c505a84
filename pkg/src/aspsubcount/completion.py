"""Clark completion of a ground disjunctive program, lowered to CNF.

The encoding has three clause groups:

* G1: a unit clause ``-a`` for every atom heading no rule.
* G2: one clause per rule (the rule as a classical implication).
* G3: for every atom a, support clauses forcing a true atom to be derivable
  from some rule that heads it, exclusively with respect to the other head
  atoms of that rule.

Multi-literal support conjuncts get one auxiliary variable each, defined by
a full biconditional, so every model over the atom variables extends to
exactly one model of the CNF. Model counts over the CNF therefore equal
model counts of the completion over the atoms.
"""

from dataclasses import dataclass

from .cnf import CnfFormula, dimacs
from .program import GroundProgram, Interpretation


@dataclass
class CompletionArtifact:
    """CNF of the completion plus the variable bookkeeping.

    atom_vars maps atom id to CNF variable (id + 1); aux_vars are the
    Tseitin definitions; group_tags maps clause index to "G1"/"G2"/"G3";
    aux_defs maps an auxiliary variable to the atom-literal conjunction it
    abbreviates.
    """

    cnf: CnfFormula
    atom_vars: dict[int, int]
    aux_vars: frozenset[int]
    group_tags: dict[int, str]
    aux_defs: dict[int, tuple[int, ...]]

    def to_dimacs(self, program: GroundProgram) -> str:
        names = {self.atom_vars[a.id]: a.name for a in program.atoms}
        return dimacs(self.cnf, atom_names=names)


def _support_conjunct(rule, atom: int) -> tuple[int, ...] | None:
    """Atom-variable literals of the support conjunct of ``rule`` for
    ``atom``: the body plus the negated other head atoms. None when the
    conjunct is contradictory."""
    lits = {b + 1 for b in rule.pos_body}
    lits |= {-(c + 1) for c in rule.neg_body}
    lits |= {-(x + 1) for x in rule.head if x != atom}
    if any(-lit in lits for lit in lits):
        return None
    return tuple(sorted(lits, key=abs))


def clark_completion(program: GroundProgram) -> CompletionArtifact:
    """Build the completion CNF. Variable order: atoms first (atom id i is
    variable i + 1), auxiliaries after, in emission order."""
    n = program.num_atoms
    registry = {a.name: a.id + 1 for a in program.atoms}
    clauses: list[tuple[int, ...]] = []
    tags: dict[int, str] = {}
    aux_defs: dict[int, tuple[int, ...]] = {}
    next_var = n + 1

    def emit(clause, tag):
        tags[len(clauses)] = tag
        clauses.append(tuple(clause))

    heads: dict[int, list] = {a: [] for a in range(n)}
    for rule in program.rules:
        for a in rule.head:
            heads[a].append(rule)

    for a in range(n):
        if not heads[a]:
            emit((-(a + 1),), "G1")

    for rule in program.rules:
        lits = {x + 1 for x in rule.head}
        lits |= {-(b + 1) for b in rule.pos_body}
        lits |= {c + 1 for c in rule.neg_body}
        if any(-lit in lits for lit in lits):
            continue  # head meets positive body: the implication is trivially true
        emit(sorted(lits, key=abs), "G2")

    for a in range(n):
        if not heads[a]:
            continue
        conjuncts = []
        trivial = False
        for rule in heads[a]:
            lits = _support_conjunct(rule, a)
            if lits is None:
                continue
            if not lits or lits == (a + 1,):
                trivial = True  # some rule supports a unconditionally
                break
            if lits not in conjuncts:
                conjuncts.append(lits)
        if trivial:
            continue
        if not conjuncts:
            emit((-(a + 1),), "G3")
            continue
        if len(conjuncts) == 1:
            for lit in conjuncts[0]:
                if lit == a + 1:
                    continue  # a -> a, vacuous
                if lit == -(a + 1):
                    emit((-(a + 1),), "G3")
                else:
                    emit((-(a + 1), lit), "G3")
            continue
        singles = [c[0] for c in conjuncts if len(c) == 1]
        if (a + 1) in singles or any(-lit in singles for lit in singles):
            continue  # support disjunction is tautologous over the atom vars
        disjunction = [-(a + 1)]
        for lits in conjuncts:
            if len(lits) == 1:
                if lits[0] not in disjunction:
                    disjunction.append(lits[0])
                continue
            d = next_var
            next_var += 1
            registry[f"@d:{program.name_of(a)}:{len(aux_defs)}"] = d
            aux_defs[d] = lits
            for lit in lits:
                emit((-d, lit), "G3")
            emit((d,) + tuple(-lit for lit in lits), "G3")
            disjunction.append(d)
        emit(disjunction, "G3")

    cnf = CnfFormula(next_var - 1, clauses, registry)
    return CompletionArtifact(
        cnf=cnf,
        atom_vars={a: a + 1 for a in range(n)},
        aux_vars=frozenset(range(n + 1, next_var)),
        group_tags=tags,
        aux_defs=aux_defs,
    )


def completion_model_check(
    artifact: CompletionArtifact, interp: Interpretation
) -> bool:
    """Does the atom assignment ``interp`` extend to a model of the CNF?

    Auxiliary variables are forced by their definitions, so the extension is
    determined; evaluate every clause under it.
    """
    num_atoms = len(artifact.atom_vars)
    values = [False] * (artifact.cnf.num_vars + 1)
    for a in interp:
        if not 0 <= a < num_atoms:
            raise ValueError(f"atom id {a} out of range")
        values[a + 1] = True

    def lit_true(lit: int) -> bool:
        return values[lit] if lit > 0 else not values[-lit]

    for d in sorted(artifact.aux_defs):
        values[d] = all(lit_true(lit) for lit in artifact.aux_defs[d])
    return all(any(lit_true(lit) for lit in clause) for clause in artifact.cnf.clauses)
