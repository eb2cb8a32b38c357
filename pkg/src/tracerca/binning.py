"""Discretization of continuous telemetry into labeled bins.

A numeric feature observed over [lo, hi] is partitioned by an increasing
sequence of interior endpoints x_1 < ... < x_n into bins
[lo, x_1], (x_1, x_2], ..., (x_n, hi]; every value in range falls in exactly
one bin. Bin labels then join the discrete event vocabulary.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

STRATEGY_DEFAULT = "equal_proportion"
RULE_DEFAULT = "sturges"

_KMEANS_MAX_ITER = 100
_KMEANS_TOL = 1e-6


class BinStrategy(str, Enum):
    EQUAL_PROPORTION = "equal_proportion"
    EQUAL_WIDTH = "equal_width"
    KBINS = "kbins"


def _fmt(x: float) -> str:
    """Render bin edges compactly: integral floats without a trailing .0."""
    if math.isfinite(x) and x == int(x) and abs(x) < 1e16:
        return str(int(x))
    return repr(float(x))


@dataclass(frozen=True, slots=True)
class BinningSpec:
    """Endpoints partitioning a numeric feature's observed range into bins.

    ``requested_bins`` is the bin count the rule asked for; duplicate or
    out-of-range cut points may leave fewer realized bins
    (``len(endpoints) + 1``). ``fallback_applied`` is set when the
    Freedman-Diaconis rule hit a zero IQR and Sturges was used instead.
    ``centers`` carries the final 1-D cluster centers for the kbins strategy.
    """

    feature: str
    lo: float
    hi: float
    endpoints: tuple[float, ...]
    strategy: BinStrategy
    bin_rule: str
    requested_bins: int
    fallback_applied: bool = False
    centers: tuple[float, ...] | None = None
    _labels: tuple[str, ...] = field(init=False, repr=False, compare=False, default=())

    def __post_init__(self) -> None:
        prev = self.lo
        for x in self.endpoints:
            if not (prev < x < self.hi):
                raise ValueError(
                    f"endpoints must be strictly increasing inside "
                    f"({self.lo}, {self.hi}); got {self.endpoints}"
                )
            prev = x
        object.__setattr__(self, "_labels", tuple(self._render(i) for i in range(self.n_bins)))

    @property
    def n_bins(self) -> int:
        return len(self.endpoints) + 1

    def _render(self, index: int) -> str:
        edges = (self.lo, *self.endpoints, self.hi)
        left, right = edges[index], edges[index + 1]
        if index == 0:
            return f"{self.feature}∈[{_fmt(left)},{_fmt(right)}]"
        return f"{self.feature}∈({_fmt(left)},{_fmt(right)}]"

    def bin_index(self, value: float) -> int:
        """Bin holding ``value``: the (x_i, x_{i+1}] with x_i < value <= x_{i+1}.

        Values at or below lo clamp to the first bin, at or above hi to the
        last; out-of-training-range values at apply time must not crash.
        """
        if not math.isfinite(value):
            raise ValueError(f"cannot bin non-finite value {value!r}")
        return bisect_left(self.endpoints, value)

    def label_for(self, value: float) -> str:
        return self._labels[self.bin_index(value)]

    @property
    def labels(self) -> tuple[str, ...]:
        return self._labels

    def to_json(self) -> dict:
        out: dict = {
            "feature": self.feature,
            "lo": self.lo,
            "hi": self.hi,
            "endpoints": list(self.endpoints),
            "strategy": self.strategy.value,
            "bin_rule": self.bin_rule,
            "requested_bins": self.requested_bins,
            "realized_bins": self.n_bins,
            "fallback_applied": self.fallback_applied,
        }
        if self.centers is not None:
            out["centers"] = list(self.centers)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "BinningSpec":
        centers = data.get("centers")
        return cls(
            feature=data["feature"],
            lo=float(data["lo"]),
            hi=float(data["hi"]),
            endpoints=tuple(float(x) for x in data["endpoints"]),
            strategy=BinStrategy(data["strategy"]),
            bin_rule=data["bin_rule"],
            requested_bins=int(data["requested_bins"]),
            fallback_applied=bool(data.get("fallback_applied", False)),
            centers=tuple(float(c) for c in centers) if centers is not None else None,
        )


def _sturges_bins(n_values: int) -> int:
    return math.ceil(math.log2(n_values)) + 1 if n_values > 1 else 1


def _freedman_diaconis_bins(values: np.ndarray) -> int | None:
    """FD bin count, or None when the IQR is zero and the rule degenerates."""
    iqr = float(np.quantile(values, 0.75) - np.quantile(values, 0.25))
    if iqr <= 0.0:
        return None
    n = len(values)
    span = float(values[-1] - values[0])
    width = 2.0 * iqr * n ** (-1.0 / 3.0)
    return min(max(math.ceil(span / width), 1), n)


def _resolve_bin_count(
    values: np.ndarray, bin_rule: int | str
) -> tuple[int, str, bool]:
    """Return (requested bin count, rule name, fd-fallback flag)."""
    if isinstance(bin_rule, int):
        if bin_rule < 1:
            raise ValueError("explicit bin count must be >= 1")
        return bin_rule, "explicit", False
    rule = str(bin_rule).lower()
    if rule == "sturges":
        return _sturges_bins(len(values)), "sturges", False
    if rule in ("freedman_diaconis", "fd"):
        n_bins = _freedman_diaconis_bins(values)
        if n_bins is None:
            return _sturges_bins(len(values)), "freedman_diaconis", True
        return n_bins, "freedman_diaconis", False
    raise ValueError(f"unknown bin rule {bin_rule!r}")


def _equal_proportion_cuts(values: np.ndarray, n_bins: int) -> list[float]:
    """Rank-based quantile cuts: the sorted value at rank ceil(k*N/n_bins)."""
    n = len(values)
    return [float(values[math.ceil(k * n / n_bins) - 1]) for k in range(1, n_bins)]


def _equal_width_cuts(lo: float, hi: float, n_bins: int) -> list[float]:
    width = (hi - lo) / n_bins
    return [lo + k * width for k in range(1, n_bins)]


def _kbins_cuts(values: np.ndarray, n_bins: int) -> tuple[list[float], tuple[float, ...]]:
    """1-D k-means cuts: midpoints between adjacent converged centers.

    Centers are seeded at the (k+0.5)/n quantiles, deterministic by
    construction; iteration stops when assignments stabilize, center movement
    drops below tolerance, or the iteration cap is reached.
    """
    seeds = np.unique(
        np.quantile(values, [(k + 0.5) / n_bins for k in range(n_bins)])
    )
    centers = seeds.astype(float)
    prev_assign: np.ndarray | None = None
    for _ in range(_KMEANS_MAX_ITER):
        if len(centers) == 1:
            break
        boundaries = (centers[:-1] + centers[1:]) / 2.0
        assign = np.searchsorted(boundaries, values, side="left")
        new_centers = np.array(
            [
                values[assign == k].mean() if np.any(assign == k) else centers[k]
                for k in range(len(centers))
            ]
        )
        moved = float(np.max(np.abs(new_centers - centers)))
        unchanged = prev_assign is not None and np.array_equal(assign, prev_assign)
        centers = new_centers
        prev_assign = assign
        if unchanged or moved < _KMEANS_TOL:
            break
    cuts = [float(x) for x in (centers[:-1] + centers[1:]) / 2.0]
    return cuts, tuple(float(c) for c in centers)


def compute_bins(
    values: list[float] | np.ndarray,
    strategy: BinStrategy | str = STRATEGY_DEFAULT,
    bin_rule: int | str = RULE_DEFAULT,
    feature: str = "value",
) -> BinningSpec:
    """Fit a BinningSpec to observed values of one numeric feature.

    The range is [min(values), max(values)]. All-equal input yields a single
    degenerate bin rather than an error. Cut points falling on the range
    boundary or duplicating each other are merged, which can leave fewer
    realized bins than requested.
    """
    arr = np.sort(np.asarray(list(values), dtype=float))
    if arr.size == 0:
        raise ValueError(f"cannot compute bins for '{feature}': no values")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"cannot compute bins for '{feature}': non-finite values")
    strategy = BinStrategy(strategy)
    lo, hi = float(arr[0]), float(arr[-1])

    n_bins, rule_name, fell_back = _resolve_bin_count(arr, bin_rule)
    centers: tuple[float, ...] | None = None
    if lo == hi:
        cuts: list[float] = []
    elif strategy is BinStrategy.EQUAL_PROPORTION:
        cuts = _equal_proportion_cuts(arr, n_bins)
    elif strategy is BinStrategy.EQUAL_WIDTH:
        cuts = _equal_width_cuts(lo, hi, n_bins)
    else:
        cuts, centers = _kbins_cuts(arr, n_bins)

    endpoints: list[float] = []
    for x in cuts:
        if lo < x < hi and (not endpoints or x > endpoints[-1]):
            endpoints.append(x)

    return BinningSpec(
        feature=feature,
        lo=lo,
        hi=hi,
        endpoints=tuple(endpoints),
        strategy=strategy,
        bin_rule=rule_name,
        requested_bins=n_bins,
        fallback_applied=fell_back,
        centers=centers,
    )
