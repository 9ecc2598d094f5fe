"""River, Split Cycle, Ranked Pairs, Beat Path and Stable Voting over margin graphs."""
from .ballots import (
    Profile,
    ProfileError,
    ProfileTransform,
    apply_permutation,
    format_profile,
    inject_clone,
    lift_one_position,
    mcgarvey_profile,
    parse_profile,
    random_profile,
    read_profile,
    restrict,
)
from .margins import (
    NO_PATH,
    Edge,
    MarginError,
    MarginGraph,
    StrengthMatrix,
    condorcet_loser,
    condorcet_winner,
    covers,
    immune_set,
    is_dominant,
    is_immune,
    margin_graph,
    pareto_dominates,
    parse_margin_graph,
    path_strength,
    quasi_pareto_dominates,
    read_margin_graph,
    smith_set,
    strongest_paths,
    weak_defeat_edges,
)
from .tiebreak import (
    EdgeOrder,
    ExplicitOrder,
    FirstVoter,
    Lexicographic,
    QuasiPareto,
    SeededRandom,
    TiebreakError,
    TiebreakerKind,
    check_consistent,
    check_pareto_consistent,
    check_quasi_pareto_consistent,
    make_edge_order,
    parse_tiebreaker,
)
from .methods import (
    Diagram,
    MethodError,
    WinnerResult,
    beat_path,
    ranked_pairs,
    rebutting_path,
    river,
    run_method,
    split_cycle,
    stable_voting,
)
from .render import render_dot
from .axioms import AxiomReport, ConfigurationError, FuzzConfig, fuzz
from .kernels import BACKEND

__version__ = "0.1.0"
