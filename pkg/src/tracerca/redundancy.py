"""Collapsing patterns that explain the same traces into one representative.

Two patterns are redundant when the test traces supporting them overlap
heavily, measured by Jaccard similarity of their supporting-id sets. Ranked
patterns are folded into clusters by a greedy single pass in rank order, and
each cluster keeps its best row (highest F1, ties to the longer pattern).
"""

from __future__ import annotations

from dataclasses import dataclass

from .ranking import PatternStats


def jaccard(a: frozenset[str] | set[str], b: frozenset[str] | set[str]) -> float:
    """|a ∩ b| / |a ∪ b|; undefined when both sets are empty."""
    if not a and not b:
        raise ValueError("Jaccard similarity is undefined for two empty sets")
    return len(a & b) / len(a | b)


@dataclass(slots=True)
class PatternCluster:
    """Patterns supported by near-identical test-trace sets."""

    representative: PatternStats
    members: list[PatternStats]
    threshold: float


def dedupe(
    ranked: list[PatternStats], threshold: float
) -> tuple[list[PatternStats], list[PatternCluster]]:
    """Greedy leader clustering of a ranked result; keeps one row per cluster.

    Walking in rank order, each pattern joins the first cluster whose
    representative's test ids are at least ``threshold``-similar to its own,
    or founds a new cluster. Founding in rank order makes the leader the
    cluster's best row already; representatives are still re-checked against
    the highest-F1 / longer-pattern rule. Statistics are never modified, only
    rows dropped, so the surviving rows can be re-derived at any threshold
    from a stored ranked result.

    Supporting-id sets are compared as bitmasks: thousands of patterns over
    tens of thousands of traces make set-based intersection the dominant
    cost of a whole analysis run.
    """
    if not (0.0 <= threshold <= 1.0):
        raise ValueError(f"similarity threshold must be in [0, 1], got {threshold}")
    bit_of: dict[str, int] = {}
    masks: list[int] = []
    for row in ranked:
        mask = 0
        for trace_id in row.test_ids:
            bit = bit_of.setdefault(trace_id, len(bit_of))
            mask |= 1 << bit
        masks.append(mask)

    clusters: list[PatternCluster] = []
    leader_masks: list[int] = []
    for row, mask in zip(ranked, masks):
        size = len(row.test_ids)
        for cluster, leader_mask in zip(clusters, leader_masks):
            inter = (mask & leader_mask).bit_count()
            union = size + len(cluster.representative.test_ids) - inter
            if union and inter / union >= threshold:
                cluster.members.append(row)
                break
        else:
            clusters.append(PatternCluster(row, [row], threshold))
            leader_masks.append(mask)
    for cluster in clusters:
        cluster.representative = max(
            cluster.members, key=lambda m: (m.f1, len(m.pattern))
        )
    order = {id(row): rank for rank, row in enumerate(ranked)}
    clusters.sort(key=lambda c: order[id(c.representative)])
    return [c.representative for c in clusters], clusters
