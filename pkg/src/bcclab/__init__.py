"""Exact verification lab for broadcast-clique lower-bound combinatorics.

The package splits into the partition algebra (`partitions`,
`joinmatrix`), the instance simulator (`sim`, `algorithms`), the
crossing and indistinguishability machinery (`crossing`, `families`,
`indist`, `matching`), the two-party reduction bridge (`reduction`) and
the bound calculators (`bounds`). Everything checkable is checked by
exact computation; nothing here relies on floating point except final
log-scale renderings.
"""

__version__ = "0.1.0"

from .partitions import (
    SetPartition,
    bell,
    enumerate_pair_partitions,
    enumerate_partitions,
    format_partition,
    is_refinement,
    join,
    pair_partition_count,
    parse_partition,
)
from .sim import (
    KT0,
    KT1,
    Algorithm,
    BccInstance,
    Symbol,
    Verdict,
    evaluate_error,
    make_instance,
    simulate,
    system_verdict,
)
from .algorithms import make_algorithm, reference_algorithms
from .crossing import (
    are_independent,
    cross,
    find_fooling_pairs,
    oriented_edge,
    states_identical,
)
from .joinmatrix import build_join_matrix, exact_rank, rank_report
from .families import enumerate_family, family_counts, family_ratio_float
from .indist import build_indist_graph, degree_stats
from .matching import k_matching
from .reduction import (
    GENERAL,
    TWO_REGULAR,
    build_reduction,
    components_partition,
    two_party_simulate,
    verify_join_correspondence,
)
from .bounds import entropy_comm_bound, pigeonhole_error_bound, round_bound_from_comm
