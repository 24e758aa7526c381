"""Wisdom-of-crowds cluster ensemble.

Base partitions are generated under a decentralization coefficient,
admitted into the crowd only when independent and diverse enough with
respect to the current members, and combined through a co-association
matrix and an average-linkage cut.
"""

from .base_clustering import (
    DEFAULT_ROSTER,
    AlgorithmDescriptor,
    Family,
    Partition,
    fuzzy_cmeans,
    gmm_em,
    hierarchical,
    kmeans,
    make_partition,
    parse_descriptor,
    parse_roster,
    run_base,
    subtractive,
)
from .consensus import (
    CoAssociation,
    Dendrogram,
    average_linkage,
    co_association,
    consensus_cut,
    wocce_consensus,
)
from .crowd import Crowd, ThresholdConfig, Verdict, admit, build_crowd, sample_cluster_count
from .data_io import Dataset, generate_half_ring, load_csv, load_dataset, write_csv, zscore_normalize
from .diversity import ClusterView, a3, aapmm, apmm, diversity
from .errors import (
    ConfigError,
    DegenerateFitError,
    DomainError,
    InconsistencyError,
    NoWiseCrowdError,
    ParseError,
    SizeError,
    WOCCEError,
)
from .harness import ExperimentConfig, ExperimentReport, roster_scores, run_experiment, run_sweep
from .independence import bpi, independence, likeness
from .metrics import accuracy, nmi

__version__ = "0.1.0"
