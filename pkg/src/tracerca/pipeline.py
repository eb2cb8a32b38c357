"""End-to-end analysis runs: discretize, ingest, mine, rank, dedupe.

One code path serves the CLI, the HTTP service, and the benchmark harness,
so every surface produces the same canonical report for the same inputs.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

from .binning import RULE_DEFAULT, STRATEGY_DEFAULT, BinningSpec, compute_bins
from .mining import MAX_LEN_DEFAULT, MiningParams
from .ranking import AnalysisResult, ControlMode, PatternStats, analyze
from .redundancy import PatternCluster, dedupe
from .report import REPORT_SCHEMA, clustered_row_dict
from .traces import GroupRole, TraceGroup, Vocabulary, collect_numeric_values, ingest_records

MIN_SUPPORT_DEFAULT = 0.05
SIMILARITY_DEFAULT = 0.9


def normalize_min_support(value: float | int) -> int | float:
    """CLI/API convention: values below 1 are fractions, 1 and up absolute."""
    if isinstance(value, bool) or value <= 0:
        raise ValueError(f"min_support must be positive, got {value!r}")
    if value < 1:
        return float(value)
    return int(value)


@dataclass(frozen=True, slots=True)
class AnalysisConfig:
    """Parameters of one analysis run (the service stores this per job).

    ``control_min_support`` only matters in ``algorithm_faithful`` mode,
    where it overrides the threshold used to mine the control group.
    """

    min_support: int | float = MIN_SUPPORT_DEFAULT
    max_len: int = MAX_LEN_DEFAULT
    similarity_threshold: float = SIMILARITY_DEFAULT
    control_mode: ControlMode = "exact"
    control_min_support: int | float | None = None
    binning_strategy: str = STRATEGY_DEFAULT
    bin_rule: int | str = RULE_DEFAULT
    workers: int = 1

    def __post_init__(self) -> None:
        MiningParams(self.min_support, self.max_len)
        if self.control_min_support is not None:
            MiningParams(self.control_min_support, self.max_len)
        if not (0.0 <= self.similarity_threshold <= 1.0):
            raise ValueError("similarity threshold must be in [0, 1]")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

    def mining_params(self) -> MiningParams:
        return MiningParams(self.min_support, self.max_len)

    def control_mining_params(self) -> MiningParams | None:
        if self.control_min_support is None:
            return None
        return MiningParams(self.control_min_support, self.max_len)

    def to_json(self) -> dict:
        # workers is an execution detail, not an analysis parameter: reports
        # must be byte-identical across worker counts
        return {
            "min_support": self.min_support,
            "max_len": self.max_len,
            "similarity_threshold": self.similarity_threshold,
            "control_mode": self.control_mode,
            "control_min_support": self.control_min_support,
            "binning": {"strategy": self.binning_strategy, "rule": self.bin_rule},
        }

    @classmethod
    def from_json(cls, data: dict) -> "AnalysisConfig":
        binning = data.get("binning", {})
        control_override = data.get("control_min_support")
        return cls(
            min_support=normalize_min_support(data.get("min_support", MIN_SUPPORT_DEFAULT)),
            max_len=int(data.get("max_len", MAX_LEN_DEFAULT)),
            similarity_threshold=float(data.get("similarity_threshold", SIMILARITY_DEFAULT)),
            control_mode=data.get("control_mode", "exact"),
            control_min_support=(
                normalize_min_support(control_override)
                if control_override is not None
                else None
            ),
            binning_strategy=binning.get("strategy", STRATEGY_DEFAULT),
            bin_rule=binning.get("rule", RULE_DEFAULT),
            workers=int(data.get("workers", 1)),
        )


@dataclass(slots=True)
class AnalysisRun:
    config: AnalysisConfig
    test_group: TraceGroup
    control_group: TraceGroup
    binning_specs: dict[str, BinningSpec]
    result: AnalysisResult
    deduped: list[PatternStats]
    clusters: list[PatternCluster]
    timings: dict[str, float] = field(default_factory=dict)


class EmptyTestGroupError(ValueError):
    """The test group contained no usable traces after ingestion."""


def run_analysis(
    test_records: Sequence[dict],
    control_records: Sequence[dict],
    config: AnalysisConfig,
) -> AnalysisRun:
    """Run the full workflow over parsed trace records.

    Numeric features are discretized over the union of both groups' values
    so bin labels coincide across groups; both groups share one vocabulary.
    """
    timings: dict[str, float] = {}

    start = time.perf_counter()
    numeric_values: dict[str, list[float]] = {}
    for feature, values in collect_numeric_values(test_records).items():
        numeric_values.setdefault(feature, []).extend(values)
    for feature, values in collect_numeric_values(control_records).items():
        numeric_values.setdefault(feature, []).extend(values)
    specs = {
        feature: compute_bins(
            values, config.binning_strategy, config.bin_rule, feature=feature
        )
        for feature, values in sorted(numeric_values.items())
    }
    timings["discretize"] = time.perf_counter() - start

    start = time.perf_counter()
    vocab = Vocabulary()
    test_group = ingest_records(
        enumerate(test_records, start=1), GroupRole.TEST, vocab, specs
    )
    control_group = ingest_records(
        enumerate(control_records, start=1), GroupRole.CONTROL, vocab, specs
    )
    timings["ingest"] = time.perf_counter() - start

    if len(test_group) == 0:
        raise EmptyTestGroupError("test group has no usable traces")

    start = time.perf_counter()
    result = analyze(
        test_group,
        control_group,
        config.mining_params(),
        config.control_mode,
        workers=config.workers,
        control_params=config.control_mining_params(),
    )
    timings["mine_and_rank"] = time.perf_counter() - start

    start = time.perf_counter()
    deduped, clusters = dedupe(result.rows, config.similarity_threshold)
    timings["dedupe"] = time.perf_counter() - start

    return AnalysisRun(
        config=config,
        test_group=test_group,
        control_group=control_group,
        binning_specs=specs,
        result=result,
        deduped=deduped,
        clusters=clusters,
        timings=timings,
    )


def analysis_report(run: AnalysisRun, analysis_id: str) -> dict:
    """Canonical report body: config echo, resolved parameters, deduped rows."""
    return {
        "schema": REPORT_SCHEMA,
        "analysis_id": analysis_id,
        "config": run.config.to_json(),
        "metadata": {
            **run.result.metadata,
            "rejected_records": {
                "test": run.test_group.rejected_count,
                "control": run.control_group.rejected_count,
            },
            "total_patterns": len(run.result.rows),
            "patterns_after_dedupe": len(run.deduped),
            "binning": [spec.to_json() for _, spec in sorted(run.binning_specs.items())],
        },
        "rows": [clustered_row_dict(c) for c in run.clusters],
    }
