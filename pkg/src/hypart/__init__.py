"""Partitions of uniform hypergraphs into complete r-partite blocks."""

from .budget import Budget
from .decomp import (
    ExactResult,
    GreedyTrace,
    exact_min_partition,
    greedy_turan_decomposition,
    max_independent_set,
    star_decomposition,
    upper_bound_pipeline,
)
from .errors import (
    BudgetExceeded,
    ConfigError,
    CoverGap,
    HypartError,
    MalformedBlock,
    MalformedEdge,
    NotIndependent,
    OutOfRange,
    ParseError,
    VerificationError,
)
from .experiment import ExperimentRecord, PrefixBoundReport, check_prefix_bound, run_experiment
from .hypercore import (
    Block,
    Hypergraph,
    Partition,
    Prefix,
    PrefixSet,
    VerificationReport,
    canonicalize_edge,
    coverage_count,
    extension_set,
    is_complete_block,
    prefix_product,
    verify_partition,
)
from .io import read_hypergraph, read_partition, write_hypergraph, write_partition
from .randmodel import SampleConfig, complete_hypergraph, sample_hypergraph
from .turan import (
    TuranResult,
    count_clique_copies,
    density_sequence,
    extremal_construction,
    turan_number_exact,
)

__version__ = "0.1.0"
