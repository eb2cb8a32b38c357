"""Sequential pattern mining over trace groups via prefix projection.

A pattern is a possibly non-contiguous subsequence of events. Mining
enumerates the pattern space as a tree of prefixes, keeping at each node the
projected database: for every trace that contains the prefix, its maximal
suffix (everything after the earliest position where the prefix completes).
Child support is counted inside the projected database, and subtrees whose
projection empties out are pruned. Support counting of longer prefixes is
sound because a trace's first-occurrence match leaves the longest possible
suffix, so no later embedding can be missed.

Patterns are tuples of interned event ids; supports are reported as the set
of supporting trace ids, one per trace regardless of embedding multiplicity.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping, Sequence

from .traces import TraceGroup

Pattern = tuple[int, ...]

BRUTE_FORCE_GUARD = 10**6
MAX_LEN_DEFAULT = 5


@dataclass(frozen=True, slots=True)
class MiningParams:
    """Mining thresholds: an int min_support is an absolute trace count, a
    float is a fraction of the group size resolved per group."""

    min_support: int | float
    max_len: int = MAX_LEN_DEFAULT

    def __post_init__(self) -> None:
        if isinstance(self.min_support, bool) or not isinstance(
            self.min_support, (int, float)
        ):
            raise ValueError("min_support must be an int count or float fraction")
        if isinstance(self.min_support, int):
            if self.min_support < 1:
                raise ValueError("absolute min_support must be >= 1")
        elif not (0.0 < self.min_support <= 1.0):
            raise ValueError("fractional min_support must be in (0, 1]")
        if self.max_len < 1:
            raise ValueError("max_len must be >= 1")

    def resolve(self, group_size: int) -> int:
        """Absolute support threshold for a group of the given size."""
        if isinstance(self.min_support, int):
            return self.min_support
        return max(1, math.ceil(self.min_support * group_size))


@dataclass(frozen=True, slots=True)
class MinedPattern:
    pattern: Pattern
    trace_ids: frozenset[str]

    @property
    def support(self) -> int:
        return len(self.trace_ids)


@dataclass(frozen=True, slots=True)
class ProjectedDatabase:
    """Maximal suffixes of the source traces with respect to ``prefix``.

    Each entry pairs a source trace id with what remains of the trace after
    the earliest completion of the prefix; traces not containing the prefix
    have no entry.
    """

    prefix: Pattern
    entries: tuple[tuple[str, Pattern], ...]

    def __len__(self) -> int:
        return len(self.entries)


def contains(sequence: Sequence[int], pattern: Pattern) -> bool:
    """Subsequence test: pattern events occur in order, gaps allowed."""
    pos = 0
    try:
        for event in pattern:
            pos = sequence.index(event, pos) + 1
    except ValueError:
        return False
    return True


def _maximal_suffix(sequence: Pattern, pattern: Pattern) -> Pattern | None:
    """Suffix after the earliest completion of ``pattern``, or None."""
    pos = 0
    try:
        for event in pattern:
            pos = sequence.index(event, pos) + 1
    except ValueError:
        return None
    return sequence[pos:]


def support_of(pattern: Pattern, group: TraceGroup) -> tuple[int, frozenset[str]]:
    """Number of traces containing ``pattern``, with their ids."""
    if not pattern:
        raise ValueError("support is defined for non-empty patterns only")
    ids = frozenset(
        t.trace_id for t in group.traces if contains(t.event_ids, pattern)
    )
    return len(ids), ids


def project_database(
    source: TraceGroup | ProjectedDatabase, event: int
) -> ProjectedDatabase:
    """Project a group or an already-projected database on one more event.

    Entries whose suffix lacks the event are dropped; the rest keep only what
    follows the first occurrence, so each suffix stays maximal for the
    extended prefix.
    """
    if isinstance(source, TraceGroup):
        prefix: Pattern = ()
        entries: Iterable[tuple[str, Pattern]] = (
            (t.trace_id, t.event_ids) for t in source.traces
        )
    else:
        prefix = source.prefix
        entries = source.entries
    projected = []
    for trace_id, suffix in entries:
        try:
            nxt = suffix.index(event, 0) + 1
        except ValueError:
            continue
        projected.append((trace_id, suffix[nxt:]))
    return ProjectedDatabase(prefix + (event,), tuple(projected))


def project_by_pattern(group: TraceGroup, pattern: Pattern) -> ProjectedDatabase:
    """Fold single-event projection over a whole pattern."""
    db: TraceGroup | ProjectedDatabase = group
    for event in pattern:
        db = project_database(db, event)
    if isinstance(db, TraceGroup):
        return ProjectedDatabase((), tuple((t.trace_id, t.event_ids) for t in db.traces))
    return db


# Internal miner: entries are (trace index, suffix start position), so nothing
# is copied until a pattern's supporting ids are materialized.


def _count_next_events(
    seqs: Sequence[Pattern], entries: list[tuple[int, int]]
) -> Counter:
    counts: Counter = Counter()
    for si, pos in entries:
        counts.update(set(seqs[si][pos:]))
    return counts


def _project_entries(
    seqs: Sequence[Pattern], entries: list[tuple[int, int]], event: int
) -> list[tuple[int, int]]:
    out = []
    for si, pos in entries:
        try:
            nxt = seqs[si].index(event, pos) + 1
        except ValueError:
            continue
        out.append((si, nxt))
    return out


def _mine_subtree(
    seqs: Sequence[Pattern],
    ids: Sequence[str],
    entries: list[tuple[int, int]],
    prefix: Pattern,
    threshold: int,
    max_len: int,
    out: list[MinedPattern],
) -> None:
    counts = _count_next_events(seqs, entries)
    for event in sorted(counts):
        if counts[event] < threshold:
            continue
        child = _project_entries(seqs, entries, event)
        pattern = prefix + (event,)
        out.append(MinedPattern(pattern, frozenset(ids[si] for si, _ in child)))
        if len(pattern) < max_len:
            _mine_subtree(seqs, ids, child, pattern, threshold, max_len, out)


def canonical_sort(mined: Iterable[MinedPattern]) -> list[MinedPattern]:
    """Canonical pattern order: ascending length, then event ids."""
    return sorted(mined, key=lambda m: (len(m.pattern), m.pattern))


def extract_patterns(
    group: TraceGroup, params: MiningParams, workers: int = 1
) -> list[MinedPattern]:
    """All patterns of length 1..max_len meeting min_support in the group.

    Returns exactly the patterns whose support reaches the resolved
    threshold, each with its full supporting-id set, in canonical order.
    First-level subtrees are independent, so they may be mined by a worker
    pool; the merged result is identical for any worker count.
    """
    threshold = params.resolve(len(group))
    if not group.traces or threshold > len(group):
        return []
    seqs = [t.event_ids for t in group.traces]
    ids = group.trace_ids
    root = [(si, 0) for si in range(len(seqs))]
    counts = _count_next_events(seqs, root)
    frequent = [e for e in sorted(counts) if counts[e] >= threshold]

    def mine_first(event: int) -> list[MinedPattern]:
        out: list[MinedPattern] = []
        child = _project_entries(seqs, root, event)
        out.append(MinedPattern((event,), frozenset(ids[si] for si, _ in child)))
        if params.max_len > 1:
            _mine_subtree(seqs, ids, child, (event,), threshold, params.max_len, out)
        return out

    if workers > 1 and len(frequent) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(mine_first, frequent))
    else:
        chunks = [mine_first(e) for e in frequent]
    merged: list[MinedPattern] = []
    for chunk in chunks:
        merged.extend(chunk)
    return canonical_sort(merged)


def brute_force_patterns(
    group: TraceGroup, params: MiningParams
) -> list[MinedPattern]:
    """Oracle miner: enumerate every event sequence up to max_len and count.

    Refuses to run when |vocabulary| ** max_len exceeds the enumeration
    guard; it exists to cross-check extract_patterns on small instances, not
    to be fast.
    """
    vocab_size = len(group.vocab)
    if vocab_size ** params.max_len > BRUTE_FORCE_GUARD:
        raise ValueError(
            f"enumeration of {vocab_size}^{params.max_len} candidate patterns "
            f"exceeds the brute-force guard ({BRUTE_FORCE_GUARD})"
        )
    threshold = params.resolve(len(group))
    if not group.traces or threshold > len(group):
        return []
    out = []
    for length in range(1, params.max_len + 1):
        for candidate in product(range(vocab_size), repeat=length):
            count, trace_ids = support_of(candidate, group)
            if count >= threshold:
                out.append(MinedPattern(candidate, trace_ids))
    return canonical_sort(out)


def support_map(
    patterns: Iterable[Pattern], group: TraceGroup
) -> dict[Pattern, frozenset[str]]:
    """Supporting-id sets for many patterns in one projection walk.

    Patterns sharing a prefix share the projection work, which is what makes
    direct control-group counting cheap for a whole mined result.
    """
    seqs = [t.event_ids for t in group.traces]
    ids = group.trace_ids
    results: dict[Pattern, frozenset[str]] = {}

    groups: dict[int, list[Pattern]] = defaultdict(list)
    for p in patterns:
        if not p:
            raise ValueError("support is defined for non-empty patterns only")
        groups[p[0]].append(p[1:])

    def walk(
        entries: list[tuple[int, int]],
        suffix_groups: Mapping[int, list[Pattern]],
        prefix: Pattern,
    ) -> None:
        for event in sorted(suffix_groups):
            child = _project_entries(seqs, entries, event)
            pattern = prefix + (event,)
            deeper: dict[int, list[Pattern]] = defaultdict(list)
            for rest in suffix_groups[event]:
                if rest:
                    deeper[rest[0]].append(rest[1:])
                else:
                    results[pattern] = frozenset(ids[si] for si, _ in child)
            if deeper:
                walk(child, deeper, pattern)

    walk([(si, 0) for si in range(len(seqs))], groups, ())
    return results
