"""Command-line interface.

Subcommands: analyze, encode, count, oracle, check. Programs are read from
a file path or from standard input when the path is ``-``. Exit codes:
0 success, 1 usage/input/backend failure, 2 external-counter timeout,
3 integrity failure (surplus exceeded overcount).
"""

import argparse
import json
import os
import sys

from .completion import clark_completion, completion_model_check
from .copyenc import surplus_formula
from .counting import (
    BackendConfig,
    BackendTimeout,
    BackendError,
    IntegrityError,
    enumerate_count,
    hybrid_count,
    subtractive_count,
)
from .depgraph import build_dependency_graph, loop_atoms
from .oracle import (
    BRUTE_FORCE_ATOM_LIMIT,
    answer_sets_bruteforce,
    copy_check,
    is_answer_set,
    justification_check_all,
    justification_check_loops,
)
from .program import ParseError, lint, parse_program, satisfies_program

ENV_BACKEND = "ASPSUBCOUNT_BACKEND"


class _Parser(argparse.ArgumentParser):
    """argparse variant that exits 1 on usage errors (2 is reserved for
    counter timeouts)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _build_parser() -> _Parser:
    parser = _Parser(prog="aspsubcount", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_common(p):
        p.add_argument("path", help="program file, or - for stdin")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p_analyze = sub.add_parser("analyze", help="program statistics and tightness")
    add_common(p_analyze)

    p_encode = sub.add_parser("encode", help="write DIMACS for both formulas")
    add_common(p_encode)
    p_encode.add_argument(
        "--emit-cnf", metavar="DIR", required=True, help="output directory"
    )

    p_count = sub.add_parser("count", help="count answer sets")
    add_common(p_count)
    p_count.add_argument(
        "--mode",
        choices=["subtractive", "enumerate", "hybrid"],
        default="subtractive",
    )
    p_count.add_argument(
        "--threshold",
        type=int,
        default=None,
        help="hybrid switch point (default 10000); cap for --mode enumerate",
    )
    p_count.add_argument(
        "--backend",
        default=None,
        help=f"builtin or exec:PATH (default: ${ENV_BACKEND} or builtin)",
    )
    p_count.add_argument(
        "--timeout", type=float, default=None, help="external counter timeout, seconds"
    )
    p_count.add_argument("--emit-cnf", metavar="DIR", default=None)
    p_count.add_argument(
        "--project-overcount",
        action="store_true",
        help="count the completion projected onto atom variables",
    )

    p_oracle = sub.add_parser(
        "oracle", help="brute-force answer sets (small programs only)"
    )
    add_common(p_oracle)

    p_check = sub.add_parser("check", help="judge one interpretation")
    add_common(p_check)
    p_check.add_argument(
        "--model",
        required=True,
        help="comma-separated atom names ('' for the empty interpretation)",
    )
    return parser


def _read_program(path: str):
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path) as handle:
            text = handle.read()
    return parse_program(text)


def _backend_config(args) -> BackendConfig:
    spec = args.backend or os.environ.get(ENV_BACKEND) or "builtin"
    if spec == "builtin":
        return BackendConfig(kind="builtin", timeout=args.timeout)
    if spec.startswith("exec:"):
        exe = spec[len("exec:") :]
        if not exe:
            raise SystemExit(_usage_error("empty executable in --backend"))
        return BackendConfig(kind="external", executable=exe, timeout=args.timeout)
    raise SystemExit(_usage_error(f"unknown backend {spec!r}"))


def _usage_error(message: str) -> int:
    sys.stderr.write(f"aspsubcount: error: {message}\n")
    return 1


def _emit_json(obj):
    json.dump(obj, sys.stdout)
    sys.stdout.write("\n")


def _cmd_analyze(args) -> int:
    program = _read_program(args.path)
    loops = loop_atoms(build_dependency_graph(program))
    loop_names = sorted(program.name_of(x) for x in loops)
    warnings = lint(program)
    if args.json:
        _emit_json(
            {
                "schema": 1,
                "atoms": program.num_atoms,
                "rules": len(program.rules),
                "loop_atoms": loop_names,
                "tight": not loops,
                "disjunctive": program.is_disjunctive,
                "warnings": warnings,
            }
        )
        return 0
    print(f"atoms: {program.num_atoms}")
    print(f"rules: {len(program.rules)}")
    if loop_names:
        print(f"loop atoms: {len(loop_names)} ({', '.join(loop_names)})")
    else:
        print("loop atoms: 0")
    print(f"tight: {'yes' if not loops else 'no'}")
    print(f"disjunctive: {'yes' if program.is_disjunctive else 'no'}")
    for warning in warnings:
        sys.stderr.write(f"warning: {warning}\n")
    return 0


def _cmd_encode(args) -> int:
    program = _read_program(args.path)
    completion = clark_completion(program)
    surplus = surplus_formula(program, completion)
    os.makedirs(args.emit_cnf, exist_ok=True)
    phi1_path = os.path.join(args.emit_cnf, "phi1.cnf")
    phi2_path = os.path.join(args.emit_cnf, "phi2.cnf")
    map_path = os.path.join(args.emit_cnf, "phi2.map.json")
    with open(phi1_path, "w") as handle:
        handle.write(completion.to_dimacs(program))
    with open(phi2_path, "w") as handle:
        handle.write(surplus.to_dimacs(program))
    with open(map_path, "w") as handle:
        json.dump(surplus.variable_map(program), handle, indent=2, sort_keys=True)
        handle.write("\n")
    if args.json:
        _emit_json(
            {
                "schema": 1,
                "phi1": phi1_path,
                "phi2": phi2_path,
                "map": map_path,
                "atoms": program.num_atoms,
                "phi1_vars": completion.cnf.num_vars,
                "phi2_vars": surplus.cnf.num_vars,
            }
        )
        return 0
    print(f"wrote {phi1_path}")
    print(f"wrote {phi2_path}")
    print(f"wrote {map_path}")
    return 0


def _cmd_count(args) -> int:
    program = _read_program(args.path)
    config = _backend_config(args)
    if args.mode == "enumerate":
        count, exhausted = enumerate_count(program, args.threshold)
        loops = loop_atoms(build_dependency_graph(program))
        payload = {
            "schema": 1,
            "overcount": count,
            "surplus": 0,
            "answer_sets": count,
            "mode": "enumeration",
            "backend": "builtin",
            "encode_time": 0.0,
            "count_time": 0.0,
            "loop_atom_count": len(loops),
            "exhausted": exhausted,
        }
        if not exhausted:
            sys.stderr.write(
                f"note: stopped at limit {args.threshold}; count is a lower bound\n"
            )
        if args.json:
            _emit_json(payload)
        else:
            print(f"mode: enumeration ({'exhausted' if exhausted else 'capped'})")
            print(f"answer sets: {count}")
        return 0
    if args.mode == "hybrid":
        report = hybrid_count(
            program,
            threshold=args.threshold if args.threshold is not None else 10_000,
            config=config,
            emit_dir=args.emit_cnf,
        )
    else:
        report = subtractive_count(
            program,
            config,
            emit_dir=args.emit_cnf,
            project_overcount=args.project_overcount,
        )
    if args.json:
        _emit_json(report.to_json_dict())
        return 0
    print(f"mode: {report.mode}")
    print(f"backend: {report.backend}")
    print(f"loop atoms: {report.loop_atom_count}")
    print(f"overcount: {report.overcount}")
    print(f"surplus: {report.surplus}")
    print(f"answer sets: {report.answer_sets}")
    return 0


def _cmd_oracle(args) -> int:
    program = _read_program(args.path)
    if program.num_atoms > BRUTE_FORCE_ATOM_LIMIT:
        return _usage_error(
            f"oracle is capped at {BRUTE_FORCE_ATOM_LIMIT} atoms "
            f"(program has {program.num_atoms})"
        )
    sets = answer_sets_bruteforce(program)
    if args.json:
        _emit_json(
            {
                "schema": 1,
                "answer_sets": len(sets),
                "sets": [program.atom_names(s) for s in sets],
            }
        )
        return 0
    for interp in sets:
        print("{" + ", ".join(program.atom_names(interp)) + "}")
    print(f"answer sets: {len(sets)}")
    return 0


def _cmd_check(args) -> int:
    program = _read_program(args.path)
    names = [n.strip() for n in args.model.split(",") if n.strip()]
    try:
        interp = program.interpretation(names)
    except KeyError as exc:
        return _usage_error(f"unknown atom {exc.args[0]!r} in --model")
    completion = clark_completion(program)
    loops = loop_atoms(build_dependency_graph(program))
    models_program = satisfies_program(interp, program)
    models_completion = completion_model_check(completion, interp)

    just_all = None
    if models_program:
        just_all = justification_check_all(program, interp)
    just_loops = None
    copy_sat = None
    if models_completion:
        just_loops = justification_check_loops(program, interp, loops, completion)
        copy_sat = copy_check(program, interp, loops, completion)
    answer = is_answer_set(program, interp)

    def witness_text(witness):
        return "{" + ", ".join(program.atom_names(witness)) + "}"

    if args.json:
        _emit_json(
            {
                "schema": 1,
                "model_of_program": models_program,
                "model_of_completion": models_completion,
                "justification_all": None
                if not models_program
                else {
                    "sat": just_all is not None,
                    "witness": program.atom_names(just_all)
                    if just_all is not None
                    else None,
                },
                "justification_loops": None
                if not models_completion
                else {
                    "sat": just_loops is not None,
                    "witness": program.atom_names(just_loops)
                    if just_loops is not None
                    else None,
                },
                "copy_check": None if not models_completion else copy_sat,
                "answer_set": answer,
            }
        )
        return 0
    print(f"model of program: {'yes' if models_program else 'no'}")
    print(f"model of completion: {'yes' if models_completion else 'no'}")
    if models_program:
        if just_all is not None:
            print(f"justification (all atoms): SAT (witness: {witness_text(just_all)})")
        else:
            print("justification (all atoms): UNSAT")
    else:
        print("justification (all atoms): skipped (not a model)")
    if models_completion:
        if just_loops is not None:
            print(
                "justification (loop atoms): SAT "
                f"(witness: {witness_text(just_loops)})"
            )
        else:
            print("justification (loop atoms): UNSAT")
        print(f"copy check: {'SAT' if copy_sat else 'UNSAT'}")
    else:
        print("justification (loop atoms): skipped (not a completion model)")
        print("copy check: skipped (not a completion model)")
    print(f"answer set: {'yes' if answer else 'no'}")
    return 0


_COMMANDS = {
    "analyze": _cmd_analyze,
    "encode": _cmd_encode,
    "count": _cmd_count,
    "oracle": _cmd_oracle,
    "check": _cmd_check,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 0
    try:
        return _COMMANDS[args.command](args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    except FileNotFoundError as exc:
        return _usage_error(f"cannot read {exc.filename!r}")
    except ParseError as exc:
        sys.stderr.write(f"aspsubcount: parse error: {exc}\n")
        return 1
    except BackendTimeout as exc:
        sys.stderr.write(f"aspsubcount: {exc}\n")
        return 2
    except IntegrityError as exc:
        sys.stderr.write(f"aspsubcount: integrity error: {exc}\n")
        return 3
    except BackendError as exc:
        sys.stderr.write(f"aspsubcount: backend error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main(None))
