"""Statistical root-cause analysis for event traces.

Given a test group of traces where a problem occurred and a control group
where it did not, tracerca mines the sequential patterns of the test group,
ranks them by how distinctive they are to the failures (precision, recall,
F1), collapses redundant patterns, and can link separate regressions whose
pattern statistics are close in a shared vector space.
"""

from .binning import BinningSpec, BinStrategy, compute_bins
from .linking import (
    GlobalPatternIndex,
    RegressionVector,
    build_index,
    cosine_distance,
    encode_regression,
    link_regressions,
    link_report,
)
from .mining import (
    MinedPattern,
    MiningParams,
    Pattern,
    ProjectedDatabase,
    brute_force_patterns,
    extract_patterns,
    project_database,
    support_map,
    support_of,
)
from .ranking import AnalysisResult, PatternStats, analyze, f1, precision, recall
from .redundancy import PatternCluster, dedupe, jaccard
from .traces import (
    EventToken,
    GroupRole,
    IngestError,
    Trace,
    TraceGroup,
    Vocabulary,
    ingest_records,
    ingest_traces,
)

__version__ = "0.1.0"

__all__ = [
    "AnalysisResult",
    "BinningSpec",
    "BinStrategy",
    "EventToken",
    "GlobalPatternIndex",
    "GroupRole",
    "IngestError",
    "MinedPattern",
    "MiningParams",
    "Pattern",
    "PatternCluster",
    "PatternStats",
    "ProjectedDatabase",
    "RegressionVector",
    "Trace",
    "TraceGroup",
    "Vocabulary",
    "analyze",
    "brute_force_patterns",
    "build_index",
    "compute_bins",
    "cosine_distance",
    "dedupe",
    "encode_regression",
    "extract_patterns",
    "f1",
    "ingest_records",
    "ingest_traces",
    "jaccard",
    "link_regressions",
    "link_report",
    "precision",
    "project_database",
    "recall",
    "support_map",
    "support_of",
]
