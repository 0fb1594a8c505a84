"""Exact answer-set counting for ground disjunctive logic programs.

The pipeline: parse a program, build the Clark completion, count its
models, count the completion models that are not answer sets with a
projected model count over a copy encoding, and subtract. A brute-force
reduct oracle and an enumeration mode provide independent ground truth.
"""

from .cnf import CnfFormula, dimacs, parse_dimacs
from .completion import CompletionArtifact, clark_completion, completion_model_check
from .copyenc import (
    CopyProgram,
    SurplusArtifact,
    copy_operation,
    overcount_formula,
    surplus_formula,
)
from .counting import (
    BackendConfig,
    BackendError,
    BackendFailure,
    BackendOutputError,
    BackendTimeout,
    CountReport,
    IntegrityError,
    enumerate_count,
    external_projected_count,
    hybrid_count,
    parse_counter_output,
    subtractive_count,
)
from .depgraph import DependencyGraph, build_dependency_graph, is_tight, loop_atoms
from .oracle import (
    BRUTE_FORCE_ATOM_LIMIT,
    ReductProgram,
    ReductRule,
    answer_sets_bruteforce,
    copy_check,
    count_answer_sets_bruteforce,
    gl_reduct,
    is_answer_set,
    justification_check_all,
    justification_check_loops,
)
from .program import (
    Atom,
    GroundProgram,
    Interpretation,
    ParseError,
    Rule,
    format_program,
    format_rule,
    lint,
    parse_program,
    satisfies,
    satisfies_program,
)
from .sat import (
    CONFLICT,
    PartialAssignment,
    count_models,
    projected_count,
    solve,
    solve_clauses,
    unit_propagate,
)

__version__ = "0.1.0"
