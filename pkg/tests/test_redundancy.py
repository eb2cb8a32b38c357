import random

import pytest

from tracerca.mining import MiningParams
from tracerca.ranking import PatternStats, analyze
from tracerca.redundancy import dedupe, jaccard


def make_stats(pattern, test_ids, control_ids=(), test_size=10):
    ts, cs = frozenset(test_ids), frozenset(control_ids)
    p = len(ts) / (len(ts) + len(cs))
    r = len(ts) / test_size
    return PatternStats(
        pattern=pattern,
        labels=tuple(f"e{i}" for i in pattern),
        test_ids=ts,
        control_ids=cs,
        precision=p,
        recall=r,
        f1=2 * p * r / (p + r),
    )


def greedy_oracle(ranked, threshold):
    """Second, independent coding of the leader-clustering rule."""
    reps = []
    assignment = {}
    for idx, row in enumerate(ranked):
        placed = False
        for rep_idx in reps:
            leader = ranked[rep_idx]
            inter = len(row.test_ids & leader.test_ids)
            union = len(row.test_ids | leader.test_ids)
            if union and inter / union >= threshold:
                assignment.setdefault(rep_idx, []).append(idx)
                placed = True
                break
        if not placed:
            reps.append(idx)
            assignment[idx] = [idx]
    survivors = []
    for rep_idx in reps:
        best = rep_idx
        for member in assignment[rep_idx]:
            row = ranked[member]
            if (row.f1, len(row.pattern)) > (ranked[best].f1, len(ranked[best].pattern)):
                best = member
        survivors.append(ranked[best])
    return survivors


class TestJaccard:
    def test_identical_sets(self):
        assert jaccard({"t1", "t2", "t3"}, {"t1", "t2", "t3"}) == 1.0

    def test_partial_overlap(self):
        assert jaccard({"t1", "t2"}, {"t1", "t2", "t3"}) == pytest.approx(2 / 3)

    def test_disjoint_sets(self):
        assert jaccard({"t4", "t5"}, {"t1", "t2", "t3"}) == 0.0

    def test_both_empty_is_undefined(self):
        with pytest.raises(ValueError):
            jaccard(set(), set())

    def test_one_empty_is_zero(self):
        assert jaccard(set(), {"t1"}) == 0.0


class TestGoldenRedundancy:
    def test_similarity_table(self, worked_groups):
        test, control = worked_groups
        rows = analyze(test, control, MiningParams(min_support=2)).rows[:5]
        by_label = {r.labels: r for r in rows}
        top, alt = by_label[("e2", "e3")], by_label[("e5", "e7")]
        # two-decimal displays truncate 2/3 to 0.66; the exact value is asserted
        expected = {
            ("e2", "e3"): (1.0, 0.0),
            ("e2",): (1.0, 0.0),
            ("e3",): (1.0, 0.0),
            ("e1", "e2", "e3"): (2 / 3, 0.0),
            ("e5", "e7"): (0.0, 1.0),
        }
        for labels, (sim_top, sim_alt) in expected.items():
            row = by_label[labels]
            assert jaccard(row.test_ids, top.test_ids) == pytest.approx(sim_top, abs=0.005)
            assert jaccard(row.test_ids, alt.test_ids) == pytest.approx(sim_alt, abs=0.005)

    def test_dedupe_at_0_6_keeps_two_representatives(self, worked_groups):
        test, control = worked_groups
        ranked = analyze(test, control, MiningParams(min_support=2)).rows
        kept, clusters = dedupe(ranked, 0.6)
        assert [r.labels for r in kept] == [("e2", "e3"), ("e5", "e7")]
        assert [(r.test_support, r.control_support) for r in kept] == [(3, 0), (2, 0)]
        assert [r.f1 for r in kept] == [pytest.approx(0.75), pytest.approx(4 / 7)]
        assert sum(len(c.members) for c in clusters) == len(ranked)

    def test_dedupe_at_1_0_merges_only_identical_support_sets(self, worked_groups):
        test, control = worked_groups
        ranked = analyze(test, control, MiningParams(min_support=2)).rows
        kept, clusters = dedupe(ranked, 1.0)
        assert [r.labels for r in kept] == [
            ("e2", "e3"), ("e1", "e2", "e3"), ("e5", "e7"),
        ]
        for cluster in clusters:
            for member in cluster.members:
                assert member.test_ids == cluster.representative.test_ids


class TestDedupeProperties:
    def _random_ranked(self, rng, n=30, with_control=False):
        universe = [f"t{i}" for i in range(10)]
        control_universe = [f"c{i}" for i in range(10)]
        rows = []
        for i in range(n):
            ids = rng.sample(universe, rng.randint(1, 6))
            cs = rng.sample(control_universe, rng.randint(0, 4)) if with_control else ()
            pattern = tuple(rng.randrange(6) for _ in range(rng.randint(1, 4)))
            rows.append(make_stats(pattern, ids, cs, test_size=10))
        rows.sort(key=lambda r: (-r.f1, -r.precision, -len(r.pattern), r.pattern))
        return rows

    def test_matches_independent_oracle(self):
        rng = random.Random(606)
        for _ in range(25):
            ranked = self._random_ranked(rng, with_control=True)
            kept, _ = dedupe(ranked, 0.5)
            assert kept == greedy_oracle(ranked, 0.5)

    def test_every_pattern_in_exactly_one_cluster(self):
        rng = random.Random(607)
        ranked = self._random_ranked(rng, with_control=True)
        _, clusters = dedupe(ranked, 0.7)
        seen = [id(m) for c in clusters for m in c.members]
        assert sorted(seen) == sorted(id(r) for r in ranked)

    def test_members_similar_to_representative(self):
        rng = random.Random(608)
        for threshold in (0.3, 0.6, 0.9):
            ranked = self._random_ranked(rng)
            _, clusters = dedupe(ranked, threshold)
            for cluster in clusters:
                for member in cluster.members:
                    if member is not cluster.representative:
                        assert (
                            jaccard(member.test_ids, cluster.representative.test_ids)
                            >= threshold
                        )

    def test_representative_is_best_member(self):
        rng = random.Random(612)
        _, clusters = dedupe(self._random_ranked(rng, with_control=True), 0.5)
        for cluster in clusters:
            best = max(m.f1 for m in cluster.members)
            assert cluster.representative.f1 == best
            longest_at_best = max(
                len(m.pattern) for m in cluster.members if m.f1 == best
            )
            assert len(cluster.representative.pattern) == longest_at_best

    def test_representatives_pairwise_dissimilar(self):
        rng = random.Random(609)
        for threshold in (0.4, 0.8):
            kept, _ = dedupe(self._random_ranked(rng), threshold)
            for i, a in enumerate(kept):
                for b in kept[i + 1 :]:
                    assert jaccard(a.test_ids, b.test_ids) < threshold

    def test_zero_threshold_membership(self):
        rng = random.Random(610)
        ranked = self._random_ranked(rng)
        _, clusters = dedupe(ranked, 0.0)
        for cluster in clusters:
            for member in cluster.members:
                assert jaccard(member.test_ids, cluster.members[0].test_ids) >= 0.0

    def test_filtering_never_alters_stats(self, worked_groups):
        test, control = worked_groups
        ranked = analyze(test, control, MiningParams(min_support=2)).rows
        kept, _ = dedupe(ranked, 0.6)
        for row in kept:
            assert row in ranked

    def test_rank_order_preserved(self):
        rng = random.Random(611)
        ranked = self._random_ranked(rng)
        kept, _ = dedupe(ranked, 0.5)
        positions = [ranked.index(k) for k in kept]
        assert positions == sorted(positions)

    @pytest.mark.parametrize("bad", [-0.1, 1.0 + 1e-9, 2.0])
    def test_out_of_range_threshold_rejected(self, bad):
        with pytest.raises(ValueError):
            dedupe([], bad)

    def test_empty_input(self):
        assert dedupe([], 0.9) == ([], [])
