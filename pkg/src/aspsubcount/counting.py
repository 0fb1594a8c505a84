"""Answer-set counting strategies and counter backends.

The subtractive pipeline counts models of the completion, counts the
surplus (completion models that are not answer sets) by projected counting,
and subtracts. Enumeration walks completion models one by one and keeps the
justified ones. The hybrid strategy enumerates up to a threshold and falls
back to subtraction when the threshold is hit.
"""

import json
import os
import subprocess
import tempfile
import time
from dataclasses import dataclass, field

from .cnf import dimacs
from .completion import clark_completion, CompletionArtifact
from .copyenc import surplus_formula, SurplusArtifact
from .depgraph import build_dependency_graph, loop_atoms
from .oracle import copy_check
from .program import GroundProgram
from .sat import count_models, projected_count, solve_clauses


class BackendError(RuntimeError):
    """Base class for external-counter failures."""


class BackendTimeout(BackendError):
    pass


class BackendFailure(BackendError):
    """The external counter exited with a nonzero status."""


class BackendOutputError(BackendError):
    """The external counter's output held no recognizable count."""


class IntegrityError(RuntimeError):
    """The surplus exceeded the overcount; the subtraction would go
    negative, so an encoding or backend is wrong."""


@dataclass
class BackendConfig:
    """How to obtain model counts.

    kind "builtin" uses the in-process counter; "external" runs
    ``executable`` on a DIMACS file. ``args_template`` entries are passed
    through, with "{cnf}" replaced by the file path (appended when no entry
    mentions it).
    """

    kind: str = "builtin"
    executable: str | None = None
    args_template: list[str] = field(default_factory=list)
    output_format: str = "auto"
    timeout: float | None = None

    def __post_init__(self):
        if self.kind not in ("builtin", "external"):
            raise ValueError(f"unknown backend kind {self.kind!r}")
        if self.kind == "external" and not self.executable:
            raise ValueError("external backend needs an executable")

    def label(self) -> str:
        if self.kind == "builtin":
            return "builtin"
        return f"exec:{self.executable}"


@dataclass
class CountReport:
    """Result of one counting run. In subtractive mode
    ``answer_sets == overcount - surplus``; enumeration reports the plain
    count with surplus zero."""

    overcount: int
    surplus: int
    answer_sets: int
    mode: str
    backend: str
    encode_time: float
    count_time: float
    loop_atom_count: int

    def to_json_dict(self) -> dict:
        return {
            "schema": 1,
            "overcount": self.overcount,
            "surplus": self.surplus,
            "answer_sets": self.answer_sets,
            "mode": self.mode,
            "backend": self.backend,
            "encode_time": self.encode_time,
            "count_time": self.count_time,
            "loop_atom_count": self.loop_atom_count,
        }


def parse_counter_output(text: str) -> int:
    """Extract a model count from counter output.

    Recognized, in order of preference: an ``s mc <N>`` line, a
    ``c s exact arb int <N>`` line, and finally a line that is nothing but
    an integer (the last such line wins).
    """
    bare = None
    arb = None
    for raw in text.splitlines():
        parts = raw.split()
        if len(parts) == 3 and parts[0] == "s" and parts[1] == "mc":
            try:
                return int(parts[2])
            except ValueError:
                continue
        if parts[:5] == ["c", "s", "exact", "arb", "int"] and len(parts) == 6:
            try:
                arb = int(parts[5])
            except ValueError:
                pass
        if len(parts) == 1:
            try:
                bare = int(parts[0])
            except ValueError:
                pass
    if arb is not None:
        return arb
    if bare is not None:
        return bare
    raise BackendOutputError("no model count found in counter output")


def external_projected_count(dimacs_path: str, config: BackendConfig) -> int:
    """Run the configured external counter on a DIMACS file and parse the
    reported count. Projection is communicated through the file's
    ``c p show`` line; counters without projection support simply count all
    models, which is only sound for formulas whose extra variables are
    defined functionally."""
    if config.kind != "external":
        raise ValueError("external_projected_count needs an external backend")
    argv = [config.executable]
    replaced = False
    for arg in config.args_template:
        if "{cnf}" in arg:
            argv.append(arg.replace("{cnf}", dimacs_path))
            replaced = True
        else:
            argv.append(arg)
    if not replaced:
        argv.append(dimacs_path)
    try:
        proc = subprocess.run(
            argv,
            capture_output=True,
            text=True,
            timeout=config.timeout,
        )
    except subprocess.TimeoutExpired as exc:
        raise BackendTimeout(f"counter timed out after {config.timeout}s") from exc
    except OSError as exc:
        raise BackendFailure(f"could not run {argv[0]}: {exc}") from exc
    if proc.returncode != 0:
        raise BackendFailure(
            f"counter exited with status {proc.returncode}: {proc.stderr.strip()[:200]}"
        )
    return parse_counter_output(proc.stdout)


def _emit(path: str, text: str):
    with open(path, "w") as handle:
        handle.write(text)


def _count_formulas(
    program: GroundProgram,
    completion: CompletionArtifact,
    surplus_art: SurplusArtifact | None,
    config: BackendConfig,
    emit_dir: str | None,
    project_overcount: bool,
) -> tuple[int, int]:
    """Count the completion formula and (when built) the surplus formula.
    Writes DIMACS files when emitting or when the backend is external."""

    def run(dir_path):
        if dir_path is not None:
            phi1_path = os.path.join(dir_path, "phi1.cnf")
            phi2_path = os.path.join(dir_path, "phi2.cnf")
            show = sorted(completion.atom_vars.values()) if project_overcount else None
            names = {completion.atom_vars[a.id]: a.name for a in program.atoms}
            _emit(phi1_path, dimacs(completion.cnf, atom_names=names, show=show))
            if surplus_art is not None:
                _emit(phi2_path, surplus_art.to_dimacs(program))
                _emit(
                    phi2_path.removesuffix(".cnf") + ".map.json",
                    _json_text(surplus_art.variable_map(program)),
                )
        if config.kind == "external":
            over = external_projected_count(phi1_path, config)
            surplus = (
                external_projected_count(phi2_path, config)
                if surplus_art is not None
                else 0
            )
            return over, surplus
        if project_overcount:
            over = projected_count(completion.cnf, completion.aux_vars)
        else:
            over = count_models(completion.cnf)
        surplus = (
            projected_count(surplus_art.cnf, surplus_art.projection_out)
            if surplus_art is not None
            else 0
        )
        return over, surplus

    if emit_dir is not None:
        os.makedirs(emit_dir, exist_ok=True)
        return run(emit_dir)
    if config.kind == "external":
        with tempfile.TemporaryDirectory(prefix="aspsubcount-") as tmp:
            return run(tmp)
    return run(None)


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def subtractive_count(
    program: GroundProgram,
    config: BackendConfig | None = None,
    emit_dir: str | None = None,
    count_surplus_anyway: bool = False,
    project_overcount: bool = False,
) -> CountReport:
    """Count answer sets as completion models minus surplus.

    For tight programs the surplus is zero by construction and is not
    counted unless ``count_surplus_anyway`` is set. Raises IntegrityError
    if the counted surplus exceeds the overcount.
    """
    config = config or BackendConfig()
    t0 = time.perf_counter()
    completion = clark_completion(program)
    loops = loop_atoms(build_dependency_graph(program))
    tight = not loops
    need_surplus = (not tight) or count_surplus_anyway
    surplus_art = surplus_formula(program, completion) if need_surplus else None
    encode_time = time.perf_counter() - t0

    t1 = time.perf_counter()
    overcount, surplus = _count_formulas(
        program, completion, surplus_art, config, emit_dir, project_overcount
    )
    count_time = time.perf_counter() - t1

    if surplus > overcount:
        raise IntegrityError(
            f"surplus {surplus} exceeds overcount {overcount}; "
            "encoding or backend is inconsistent"
        )
    return CountReport(
        overcount=overcount,
        surplus=surplus,
        answer_sets=overcount - surplus,
        mode="subtractive",
        backend=config.label(),
        encode_time=encode_time,
        count_time=count_time,
        loop_atom_count=len(loops),
    )


def enumerate_count(
    program: GroundProgram, limit: int | None = None
) -> tuple[int, bool]:
    """Enumerate answer sets via completion models plus the copy check.

    Stops once ``limit`` answer sets are found. Returns (count, exhausted);
    exhausted is True only when the model space ran dry below the limit.
    ``limit`` None means enumerate everything.
    """
    if limit is not None and limit < 1:
        raise ValueError("limit must be at least 1")
    completion = clark_completion(program)
    loops = loop_atoms(build_dependency_graph(program))
    n = program.num_atoms
    clauses = list(completion.cnf.clauses)
    num_vars = completion.cnf.num_vars
    count = 0
    while True:
        model = solve_clauses(clauses, num_vars)
        if model is None:
            return count, True
        interp = frozenset(x for x in range(n) if model[x + 1])
        if not copy_check(program, interp, loops, completion):
            count += 1
            if limit is not None and count >= limit:
                return count, False
        if n == 0:
            return count, True
        clauses.append(
            tuple(-(x + 1) if x in interp else x + 1 for x in range(n))
        )


def hybrid_count(
    program: GroundProgram,
    threshold: int = 10_000,
    config: BackendConfig | None = None,
    emit_dir: str | None = None,
) -> CountReport:
    """Enumerate up to ``threshold`` answer sets; if the threshold is hit,
    rerun subtractively. The mode field records the path that produced the
    number: "enumeration" when enumeration finished, "hybrid" when it
    switched."""
    if threshold < 1:
        raise ValueError("threshold must be at least 1")
    t0 = time.perf_counter()
    count, exhausted = enumerate_count(program, threshold)
    enum_time = time.perf_counter() - t0
    if exhausted:
        loops = loop_atoms(build_dependency_graph(program))
        return CountReport(
            overcount=count,
            surplus=0,
            answer_sets=count,
            mode="enumeration",
            backend="builtin",
            encode_time=0.0,
            count_time=enum_time,
            loop_atom_count=len(loops),
        )
    report = subtractive_count(program, config, emit_dir=emit_dir)
    report.mode = "hybrid"
    report.count_time += enum_time
    return report
