"""Row subset selection for sensor placement.

Pick p rows of an n x r candidate matrix so that the selected block is as
well conditioned as possible, under either a determinant or a smallest
eigenvalue objective. Provides a plain greedy selector, a group variant
that carries the L best subsets, sketched group variants that score only a
random portion of the rows each step, a brute-force oracle for small
instances, and a benchmark harness with a command line front end.
"""

from .objectives import (
    GramState,
    ObjectiveKind,
    as_matrix,
    build_state,
    canonical,
    check_subset,
    eval_direct,
    eval_extended,
    eval_extensions,
    extend_state,
)
from .selectors import (
    ScoredSubset,
    SelectorReport,
    common_greedy,
    elite_randomized_group_greedy,
    group_greedy,
    l_best_search,
    randomized_group_greedy,
    select_elites,
)
from .sketch import (
    SketchConfig,
    compose_sketch,
    sample_without_replacement,
    spawn_seed,
    stream_rng,
)
from .oracle import MAX_ENUMERATED_SUBSETS, exhaustive_best, naive_eval
from .experiment import (
    ALGORITHMS,
    ExperimentConfig,
    ExperimentResult,
    MethodSpec,
    TrialFailure,
    TrialResult,
    aggregate,
    default_methods,
    dump_matrix_csv,
    generate_candidates,
    load_matrix_csv,
    run_experiment,
    write_results_csv,
    write_summary_json,
)

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "ExperimentConfig",
    "ExperimentResult",
    "GramState",
    "MAX_ENUMERATED_SUBSETS",
    "MethodSpec",
    "ObjectiveKind",
    "ScoredSubset",
    "SelectorReport",
    "SketchConfig",
    "TrialFailure",
    "TrialResult",
    "aggregate",
    "as_matrix",
    "build_state",
    "canonical",
    "check_subset",
    "common_greedy",
    "compose_sketch",
    "default_methods",
    "dump_matrix_csv",
    "elite_randomized_group_greedy",
    "eval_direct",
    "eval_extended",
    "eval_extensions",
    "exhaustive_best",
    "extend_state",
    "generate_candidates",
    "group_greedy",
    "l_best_search",
    "load_matrix_csv",
    "naive_eval",
    "randomized_group_greedy",
    "run_experiment",
    "sample_without_replacement",
    "select_elites",
    "spawn_seed",
    "stream_rng",
    "write_results_csv",
    "write_summary_json",
]
