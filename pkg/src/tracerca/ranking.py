"""Ranking mined patterns by how distinctive they are to the test group.

Both groups are mined, each test pattern gets its control-group support, and
patterns are scored: precision is the share of supporting traces that are in
the test group, recall the share of the test group the pattern covers, and
the F1 score (their harmonic mean) is the ranking key.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

from .mining import MiningParams, Pattern, extract_patterns, support_map
from .traces import TraceGroup

ControlMode = Literal["exact", "algorithm_faithful"]


def precision(ts_count: int, cs_count: int) -> float:
    """Probability that a trace containing the pattern is a test trace."""
    if ts_count < 1:
        raise ValueError("precision is undefined for patterns absent from the test group")
    if cs_count < 0:
        raise ValueError("control support cannot be negative")
    return ts_count / (ts_count + cs_count)


def recall(ts_count: int, test_size: int) -> float:
    """Share of the test group covered by the pattern."""
    if test_size == 0:
        raise ValueError("recall is undefined for an empty test group")
    if not (1 <= ts_count <= test_size):
        raise ValueError(f"test support {ts_count} outside 1..{test_size}")
    return ts_count / test_size


def f1(p: float, r: float) -> float:
    """Harmonic mean of precision and recall."""
    if not (0.0 < p <= 1.0 and 0.0 < r <= 1.0):
        raise ValueError("precision and recall must be in (0, 1]")
    return 2.0 * p * r / (p + r)


@dataclass(frozen=True, slots=True)
class PatternStats:
    """One ranked row: a pattern with its supports and scores."""

    pattern: Pattern
    labels: tuple[str, ...]
    test_ids: frozenset[str]
    control_ids: frozenset[str]
    precision: float
    recall: float
    f1: float

    @property
    def test_support(self) -> int:
        return len(self.test_ids)

    @property
    def control_support(self) -> int:
        return len(self.control_ids)


@dataclass(slots=True)
class AnalysisResult:
    """Ranked pattern statistics plus the parameters that produced them."""

    rows: list[PatternStats]
    control_mode: ControlMode
    resolved_min_support: dict
    test_size: int
    control_size: int
    warnings: list[str] = field(default_factory=list)

    @property
    def metadata(self) -> dict:
        return {
            "control_mode": self.control_mode,
            "resolved_min_support": self.resolved_min_support,
            "test_size": self.test_size,
            "control_size": self.control_size,
            "warnings": list(self.warnings),
        }


def _rank_key(row: PatternStats) -> tuple:
    # Descending F1, then descending precision, then the longer pattern,
    # then canonical pattern order.
    return (-row.f1, -row.precision, -len(row.pattern), row.pattern)


def analyze(
    test: TraceGroup,
    control: TraceGroup,
    params: MiningParams,
    control_mode: ControlMode = "exact",
    workers: int = 1,
    control_params: MiningParams | None = None,
) -> AnalysisResult:
    """Mine the test group and rank its patterns against the control group.

    The pattern universe is what mining finds in the test group. In ``exact``
    mode each pattern's control support is counted directly over the control
    traces. In ``algorithm_faithful`` mode the control group is mined with
    the same parameters and the two results are joined; a pattern missing
    the control-group threshold then counts as zero control support, which
    can only understate control support relative to exact mode.
    ``control_params`` overrides the control group's mining threshold in
    faithful mode; by default one threshold drives both groups.
    """
    if len(test) == 0:
        raise ValueError("test group is empty")
    if test.vocab is not control.vocab:
        raise ValueError("test and control groups must share one vocabulary")
    if control_mode not in ("exact", "algorithm_faithful"):
        raise ValueError(f"unknown control mode {control_mode!r}")

    warnings: list[str] = []
    test_patterns = extract_patterns(test, params, workers=workers)
    resolved: dict = {"test": params.resolve(len(test)), "control": None}

    control_ids_by_pattern: dict[Pattern, frozenset[str]]
    if len(control) == 0:
        warnings.append(
            "control group is empty: every precision is 1.0 and patterns "
            "cannot be told apart from normal behavior"
        )
        control_ids_by_pattern = {}
    elif control_mode == "exact":
        control_ids_by_pattern = support_map(
            (m.pattern for m in test_patterns), control
        )
    else:
        c_params = control_params or params
        resolved["control"] = c_params.resolve(len(control))
        control_ids_by_pattern = {
            m.pattern: m.trace_ids
            for m in extract_patterns(control, c_params, workers=workers)
        }

    test_size = len(test)
    rows = []
    for mined in test_patterns:
        cs = control_ids_by_pattern.get(mined.pattern, frozenset())
        p = precision(mined.support, len(cs))
        r = recall(mined.support, test_size)
        rows.append(
            PatternStats(
                pattern=mined.pattern,
                labels=test.vocab.labels_of(mined.pattern),
                test_ids=mined.trace_ids,
                control_ids=cs,
                precision=p,
                recall=r,
                f1=f1(p, r),
            )
        )
    rows.sort(key=_rank_key)
    return AnalysisResult(
        rows=rows,
        control_mode=control_mode,
        resolved_min_support=resolved,
        test_size=test_size,
        control_size=len(control),
        warnings=warnings,
    )
