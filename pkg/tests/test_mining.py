import random

import pytest

from tracerca.mining import (
    MinedPattern,
    MiningParams,
    brute_force_patterns,
    canonical_sort,
    contains,
    extract_patterns,
    project_by_pattern,
    project_database,
    support_map,
    support_of,
)
from tracerca.traces import GroupRole, TraceGroup, Vocabulary

from conftest import make_group, random_group


def contains_oracle(sequence, pattern):
    """Independent subsequence test (iterator-consumption idiom)."""
    it = iter(sequence)
    return all(event in it for event in pattern)


def ids_of(group, label_pattern):
    vocab = group.vocab
    return tuple(vocab.id_of(lb) for lb in label_pattern)


def as_label_map(group, mined):
    return {
        group.vocab.labels_of(m.pattern): set(m.trace_ids) for m in mined
    }


class TestSupportOf:
    def test_example_pattern_in_test_group(self, worked_groups):
        test, _ = worked_groups
        count, ids = support_of(ids_of(test, ("e1", "e3")), test)
        assert (count, set(ids)) == (2, {"t1", "t2"})

    def test_example_pattern_in_control_group(self, worked_groups):
        _, control = worked_groups
        count, ids = support_of(ids_of(control, ("e1", "e3", "e4")), control)
        assert (count, set(ids)) == (1, {"t7"})

    def test_unseen_event_has_zero_support(self, worked_groups):
        test, _ = worked_groups
        e9 = test.vocab.intern("e9").id
        assert support_of((e9,), test) == (0, frozenset())

    def test_counted_once_despite_multiple_embeddings(self):
        vocab = Vocabulary(["a", "b"])
        group = make_group(vocab, GroupRole.TEST, {"x": ("a", "a", "b", "a", "b")})
        assert support_of((0, 1), group) == (1, frozenset({"x"}))

    def test_empty_pattern_rejected(self, worked_groups):
        with pytest.raises(ValueError):
            support_of((), worked_groups[0])


class TestProjection:
    def test_sequential_projection_of_single_trace(self):
        vocab = Vocabulary(["e1", "e2", "e3", "e4"])
        group = make_group(vocab, GroupRole.TEST, {"t1": ("e1", "e2", "e3", "e4")})
        db = project_database(group, vocab.id_of("e2"))
        db = project_database(db, vocab.id_of("e3"))
        assert db.prefix == (1, 2)
        assert db.entries == (("t1", (3,)),)

    def test_projection_on_absent_event_is_empty(self, worked_groups):
        test, _ = worked_groups
        e9 = test.vocab.intern("e9").id
        assert len(project_database(test, e9)) == 0

    def test_projection_never_grows(self, worked_groups):
        test, _ = worked_groups
        rng = random.Random(5)
        for _ in range(50):
            event = rng.randrange(len(test.vocab))
            assert len(project_database(test, event)) <= len(test)

    def test_suffix_is_maximal(self):
        # first occurrence of the projecting event leaves the longest suffix
        vocab = Vocabulary(["a", "b"])
        group = make_group(vocab, GroupRole.TEST, {"x": ("b", "a", "b", "a")})
        db = project_database(group, vocab.id_of("a"))
        assert db.entries == (("x", (1, 0)),)


class TestLemma1Properties:
    def test_composed_projection_and_support_transfer(self):
        rng = random.Random(101)
        vocab = Vocabulary(f"e{i}" for i in range(6))
        for round_no in range(120):
            group = random_group(rng, vocab, GroupRole.TEST, f"g{round_no}-")
            alpha = tuple(rng.randrange(6) for _ in range(rng.randint(1, 3)))
            delta = tuple(rng.randrange(6) for _ in range(rng.randint(1, 2)))

            via_beta = project_by_pattern(group, alpha + delta)
            via_alpha = project_by_pattern(group, alpha)
            stepwise = via_alpha
            for event in delta:
                stepwise = project_database(stepwise, event)
            assert via_beta.entries == stepwise.entries

            support_beta, _ = support_of(alpha + delta, group)
            in_projected = sum(
                1 for _, suffix in via_alpha.entries if contains(suffix, delta)
            )
            assert support_beta == in_projected

            assert len(via_alpha) <= len(group)

    def test_projected_size_equals_prefix_support(self):
        rng = random.Random(77)
        vocab = Vocabulary(f"e{i}" for i in range(5))
        for round_no in range(60):
            group = random_group(rng, vocab, GroupRole.TEST, f"p{round_no}-")
            pattern = tuple(rng.randrange(5) for _ in range(rng.randint(1, 3)))
            count, ids = support_of(pattern, group)
            db = project_by_pattern(group, pattern)
            assert len(db) == count
            assert {tid for tid, _ in db.entries} == set(ids)


class TestExtractPatterns:
    def test_example_group_memberships(self, worked_groups):
        test, _ = worked_groups
        mined = as_label_map(
            test, extract_patterns(test, MiningParams(min_support=2))
        )
        assert mined[("e2", "e3")] == {"t1", "t2", "t3"}
        assert mined[("e1", "e2", "e3")] == {"t1", "t2"}
        assert mined[("e5", "e7")] == {"t4", "t5"}

    def test_example_group_matches_brute_force(self, worked_groups):
        test, _ = worked_groups
        params = MiningParams(min_support=2)
        assert extract_patterns(test, params) == brute_force_patterns(test, params)

    def test_single_event_patterns_at_min_support_one(self, worked_groups):
        test, _ = worked_groups
        mined = extract_patterns(test, MiningParams(min_support=1, max_len=1))
        present = {e for t in test.traces for e in t.event_ids}
        assert {m.pattern for m in mined} == {(e,) for e in present}
        for m in mined:
            assert support_of(m.pattern, test) == (m.support, m.trace_ids)

    def test_repeated_event_patterns(self):
        vocab = Vocabulary(["a"])
        group = make_group(vocab, GroupRole.TEST, {"t": ("a", "a", "a")})
        mined = extract_patterns(group, MiningParams(min_support=1, max_len=3))
        assert [(m.pattern, set(m.trace_ids)) for m in mined] == [
            ((0,), {"t"}),
            ((0, 0), {"t"}),
            ((0, 0, 0), {"t"}),
        ]

    def test_empty_group_and_oversized_threshold(self, worked_groups):
        test, _ = worked_groups
        empty = TraceGroup(GroupRole.TEST, [], test.vocab)
        assert extract_patterns(empty, MiningParams(min_support=1)) == []
        assert extract_patterns(test, MiningParams(min_support=6)) == []

    def test_oracle_equivalence_on_random_groups(self):
        rng = random.Random(4242)
        for round_no in range(50):
            vocab = Vocabulary(f"e{i}" for i in range(rng.randint(2, 8)))
            group = random_group(rng, vocab, GroupRole.TEST, f"r{round_no}-")
            params = MiningParams(
                min_support=rng.choice([1, 2, 3]), max_len=rng.randint(1, 4)
            )
            assert extract_patterns(group, params) == brute_force_patterns(
                group, params
            )

    def test_apriori_monotonicity(self):
        rng = random.Random(31)
        vocab = Vocabulary(f"e{i}" for i in range(6))
        for round_no in range(20):
            group = random_group(rng, vocab, GroupRole.TEST, f"m{round_no}-")
            for m in extract_patterns(group, MiningParams(min_support=2, max_len=3)):
                for drop in range(len(m.pattern)):
                    sub = m.pattern[:drop] + m.pattern[drop + 1 :]
                    if sub:
                        assert support_of(sub, group)[0] >= m.support

    def test_supporting_ids_match_direct_recount(self, worked_groups):
        test, _ = worked_groups
        for m in extract_patterns(test, MiningParams(min_support=1, max_len=3)):
            assert support_of(m.pattern, test) == (m.support, m.trace_ids)

    def test_worker_counts_do_not_change_output(self, worked_groups):
        test, _ = worked_groups
        params = MiningParams(min_support=1, max_len=4)
        baseline = extract_patterns(test, params, workers=1)
        for workers in (2, 5):
            assert extract_patterns(test, params, workers=workers) == baseline

    def test_canonical_output_order(self, worked_groups):
        test, _ = worked_groups
        mined = extract_patterns(test, MiningParams(min_support=1, max_len=3))
        keys = [(len(m.pattern), m.pattern) for m in mined]
        assert keys == sorted(keys)
        assert len(set(keys)) == len(keys)


class TestBruteForce:
    def test_guard_refuses_oversized_enumeration(self):
        vocab = Vocabulary(f"e{i}" for i in range(40))
        group = make_group(vocab, GroupRole.TEST, {"t": ("e0",)})
        with pytest.raises(ValueError, match="guard"):
            brute_force_patterns(group, MiningParams(min_support=1, max_len=5))

    def test_empty_group(self):
        group = TraceGroup(GroupRole.TEST, [], Vocabulary(["a"]))
        assert brute_force_patterns(group, MiningParams(min_support=1)) == []


class TestSupportMap:
    def test_matches_per_pattern_support(self, worked_groups):
        test, control = worked_groups
        patterns = [m.pattern for m in extract_patterns(test, MiningParams(min_support=1, max_len=3))]
        mapped = support_map(patterns, control)
        assert set(mapped) == set(patterns)
        for pattern in patterns:
            assert mapped[pattern] == support_of(pattern, control)[1]

    def test_absent_patterns_get_empty_sets(self, worked_groups):
        test, _ = worked_groups
        e9 = test.vocab.intern("e9").id
        assert support_map([(e9, e9)], test) == {(e9, e9): frozenset()}


class TestMiningParams:
    def test_fractional_resolution(self):
        assert MiningParams(min_support=0.01).resolve(3000) == 30
        assert MiningParams(min_support=0.0275).resolve(10_000) == 275
        assert MiningParams(min_support=0.05).resolve(100) == 5
        assert MiningParams(min_support=0.001).resolve(10) == 1

    def test_absolute_passthrough(self):
        assert MiningParams(min_support=2).resolve(5) == 2

    @pytest.mark.parametrize("bad", [0, -1, 0.0, 1.5, "2", True])
    def test_invalid_min_support(self, bad):
        with pytest.raises(ValueError):
            MiningParams(min_support=bad)

    def test_invalid_max_len(self):
        with pytest.raises(ValueError):
            MiningParams(min_support=1, max_len=0)


def test_contains_agrees_with_oracle():
    rng = random.Random(9)
    for _ in range(500):
        seq = tuple(rng.randrange(4) for _ in range(rng.randint(0, 12)))
        pattern = tuple(rng.randrange(4) for _ in range(rng.randint(1, 4)))
        assert contains(seq, pattern) == contains_oracle(seq, pattern)


def test_canonical_sort_orders_by_length_then_ids():
    mined = [
        MinedPattern((2,), frozenset({"a"})),
        MinedPattern((0, 1), frozenset({"a"})),
        MinedPattern((1,), frozenset({"a"})),
        MinedPattern((0, 0), frozenset({"a"})),
    ]
    assert [m.pattern for m in canonical_sort(mined)] == [(1,), (2,), (0, 0), (0, 1)]
