"""CNF formulas over integer variables 1..num_vars, plus DIMACS text."""

from dataclasses import dataclass, field


@dataclass
class CnfFormula:
    """An immutable-by-convention clause set.

    Clauses are tuples of nonzero literals; a positive literal v means
    variable v is true. The registry maps semantic names (atom names, copy
    names, auxiliary tags) to variable indices and is injective.
    """

    num_vars: int
    clauses: list[tuple[int, ...]]
    var_registry: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.num_vars < 0:
            raise ValueError("num_vars must be non-negative")
        self.clauses = [tuple(c) for c in self.clauses]
        for clause in self.clauses:
            lits = set(clause)
            if 0 in lits:
                raise ValueError("0 is not a literal")
            for lit in clause:
                if abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} exceeds num_vars={self.num_vars}")
                if -lit in lits:
                    raise ValueError(f"tautological clause {clause}")
        seen = set()
        for name, var in self.var_registry.items():
            if not 1 <= var <= self.num_vars:
                raise ValueError(f"registry entry {name!r} -> {var} out of range")
            if var in seen:
                raise ValueError("var_registry is not injective")
            seen.add(var)

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)


def dimacs(
    cnf: CnfFormula,
    atom_names: dict[int, str] | None = None,
    show: list[int] | None = None,
) -> str:
    """Serialize to DIMACS CNF.

    ``atom_names`` (var -> name) become ``c atom <name> <var>`` comment
    lines; ``show`` lists the variables a projected counter must keep and is
    emitted as ``c p show v1 ... 0`` right after the header.
    """
    lines = []
    if atom_names:
        for var in sorted(atom_names):
            lines.append(f"c atom {atom_names[var]} {var}")
    lines.append(f"p cnf {cnf.num_vars} {cnf.num_clauses}")
    if show is not None:
        lines.append("c p show " + " ".join(str(v) for v in sorted(show)) + " 0")
    for clause in cnf.clauses:
        lines.append(" ".join(str(lit) for lit in clause) + " 0")
    return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> tuple[CnfFormula, list[int] | None]:
    """Parse DIMACS CNF text; returns the formula and the show-line variable
    list if one was present."""
    num_vars = None
    clauses: list[tuple[int, ...]] = []
    show: list[int] | None = None
    pending: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c"):
            parts = line.split()
            if parts[:3] == ["c", "p", "show"]:
                vals = [int(v) for v in parts[3:]]
                if vals and vals[-1] == 0:
                    vals = vals[:-1]
                show = vals
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[0] != "p" or parts[1] != "cnf":
                raise ValueError(f"bad DIMACS header: {line!r}")
            num_vars = int(parts[2])
            continue
        if num_vars is None:
            raise ValueError("clause before DIMACS header")
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(tuple(pending))
                pending = []
            else:
                pending.append(lit)
    if pending:
        raise ValueError("unterminated clause")
    if num_vars is None:
        raise ValueError("missing DIMACS header")
    return CnfFormula(num_vars, clauses), show
