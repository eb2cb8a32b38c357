"""Linking regressions that share a root cause via pattern-statistics vectors.

Every analyzed regression is embedded in one vector space: a global index
assigns each distinct pattern (by its label sequence) a triplet of
coordinates holding that pattern's precision, recall, and F1 score in the
regression, zero when the pattern is absent. Regressions whose vectors sit
within a small cosine distance are linked as likely sharing a root cause.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .ranking import PatternStats

LINK_THRESHOLD_DEFAULT = 0.1

LabelPattern = tuple[str, ...]


@dataclass(frozen=True, slots=True)
class GlobalPatternIndex:
    """Canonically ordered union of patterns across analyzed regressions."""

    patterns: tuple[LabelPattern, ...]

    def __post_init__(self) -> None:
        if len(set(self.patterns)) != len(self.patterns):
            raise ValueError("global pattern index contains duplicates")

    def __len__(self) -> int:
        return len(self.patterns)

    @property
    def dimension(self) -> int:
        return 3 * len(self.patterns)

    def position_of(self, pattern: LabelPattern) -> int:
        try:
            return self.patterns.index(pattern)
        except ValueError:
            raise KeyError(
                f"pattern {pattern!r} is not in the index (stale index?)"
            ) from None


@dataclass(frozen=True, slots=True)
class RegressionVector:
    """Sparse embedding of one regression; coords are 1-based positions."""

    regression_id: str
    coords: dict[int, float]
    dimension: int

    @property
    def is_zero(self) -> bool:
        return not self.coords

    def norm(self) -> float:
        return math.sqrt(sum(v * v for v in self.coords.values()))


def build_index(
    analyses: Sequence[tuple[str, Sequence[PatternStats]]],
) -> GlobalPatternIndex:
    """Union of all patterns across analyses, ordered by length then labels."""
    if not analyses:
        raise ValueError("cannot build a pattern index from zero analyses")
    patterns = {row.labels for _, rows in analyses for row in rows}
    return GlobalPatternIndex(tuple(sorted(patterns, key=lambda p: (len(p), p))))


def encode_regression(
    regression_id: str,
    rows: Sequence[PatternStats],
    index: GlobalPatternIndex,
) -> RegressionVector:
    """Place each pattern's (precision, recall, F1) triplet at its fixed slot.

    Pattern i (1-based) occupies coordinates 3i-2, 3i-1, 3i; patterns in the
    index but absent from this regression leave their triplet at zero.
    """
    coords: dict[int, float] = {}
    for row in rows:
        i = index.position_of(row.labels) + 1
        coords[3 * i - 2] = row.precision
        coords[3 * i - 1] = row.recall
        coords[3 * i] = row.f1
    return RegressionVector(regression_id, coords, index.dimension)


def cosine_distance(a: RegressionVector, b: RegressionVector) -> float:
    """1 - cos(a, b), clamped against float drift; both vectors must be nonzero."""
    if a.dimension != b.dimension:
        raise ValueError("vectors come from different pattern indexes")
    if a.is_zero or b.is_zero:
        raise ValueError("cosine distance is undefined for a zero vector")
    small, large = (a.coords, b.coords) if len(a.coords) <= len(b.coords) else (b.coords, a.coords)
    dot = sum(v * large.get(k, 0.0) for k, v in small.items())
    dist = 1.0 - dot / (a.norm() * b.norm())
    return min(max(dist, 0.0), 2.0)


def link_regressions(
    vectors: Sequence[RegressionVector], distance_threshold: float
) -> list[list[str]]:
    """Connected components of the graph with edges at distance <= threshold.

    Singletons are kept. Clusters are sorted by their smallest member id,
    members sorted within each cluster, so output is deterministic.
    """
    for v in vectors:
        if v.is_zero:
            raise ValueError(
                f"regression {v.regression_id!r} has a zero vector; "
                "exclude it before linking"
            )
    n = len(vectors)
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if cosine_distance(vectors[i], vectors[j]) <= distance_threshold:
                parent[find(i)] = find(j)

    components: dict[int, list[str]] = {}
    for i, vec in enumerate(vectors):
        components.setdefault(find(i), []).append(vec.regression_id)
    clusters = [sorted(member_ids) for member_ids in components.values()]
    clusters.sort(key=lambda c: c[0])
    return clusters


def link_report(
    analyses: Sequence[tuple[str, Sequence[PatternStats]]],
    distance_threshold: float = LINK_THRESHOLD_DEFAULT,
) -> dict:
    """Full linking pipeline: index, encode, link, and report.

    Regressions with no patterns encode to zero vectors; they are excluded
    from linking and listed separately instead of failing the batch.
    """
    index = build_index(analyses)
    vectors = [encode_regression(rid, rows, index) for rid, rows in analyses]
    nonzero = [v for v in vectors if not v.is_zero]
    excluded = sorted(v.regression_id for v in vectors if v.is_zero)
    clusters = link_regressions(nonzero, distance_threshold) if nonzero else []
    by_id = {v.regression_id: v for v in nonzero}

    def diameter(member_ids: list[str]) -> float:
        if len(member_ids) < 2:
            return 0.0
        return max(
            cosine_distance(by_id[x], by_id[y])
            for i, x in enumerate(member_ids)
            for y in member_ids[i + 1 :]
        )

    return {
        "threshold": distance_threshold,
        "clusters": [
            {"members": members, "diameter": diameter(members)}
            for members in clusters
        ],
        "excluded_zero_vectors": excluded,
    }
