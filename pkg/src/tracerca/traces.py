"""Event traces, vocabularies, and group ingestion.

Traces are ordered sequences of discrete events. Events are interned into a
shared vocabulary so the mining layer can work on dense integer ids; numeric
telemetry is mapped onto bin labels before interning. A trace group tags its
traces as either the test group (sessions where the problem occurred) or the
control group (sessions where it did not).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Mapping

from .binning import BinningSpec


class IngestError(ValueError):
    """Raised when a trace record stream cannot be ingested."""


class GroupRole(str, Enum):
    TEST = "test"
    CONTROL = "control"


@dataclass(frozen=True, slots=True)
class EventToken:
    """An interned event: a dense non-negative id bound to its label."""

    id: int
    label: str


class Vocabulary:
    """Bijective label <-> id interning table with dense ids 0..n-1.

    Ids are stable once assigned: interning never renumbers.
    """

    def __init__(self, labels: Iterable[str] = ()) -> None:
        self._entries: list[str] = []
        self._lookup: dict[str, int] = {}
        for label in labels:
            self.intern(label)

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, label: str) -> bool:
        return label in self._lookup

    def __iter__(self) -> Iterator[str]:
        return iter(self._entries)

    @property
    def entries(self) -> tuple[str, ...]:
        return tuple(self._entries)

    def intern(self, label: str) -> EventToken:
        """Return the token for ``label``, interning it if unseen. Idempotent."""
        if not label:
            raise ValueError("event label must be non-empty")
        idx = self._lookup.get(label)
        if idx is None:
            idx = len(self._entries)
            self._entries.append(label)
            self._lookup[label] = idx
        return EventToken(idx, label)

    def id_of(self, label: str) -> int:
        return self._lookup[label]

    def label_of(self, event_id: int) -> str:
        return self._entries[event_id]

    def labels_of(self, event_ids: Iterable[int]) -> tuple[str, ...]:
        entries = self._entries
        return tuple(entries[i] for i in event_ids)


@dataclass(frozen=True, slots=True)
class Trace:
    """One chronologically ordered event sequence from a single session."""

    trace_id: str
    event_ids: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.event_ids)

    def tokens(self, vocab: Vocabulary) -> tuple[EventToken, ...]:
        return tuple(EventToken(i, vocab.label_of(i)) for i in self.event_ids)


@dataclass(slots=True)
class TraceGroup:
    """A test or control set of traces sharing one vocabulary.

    ``rejected_count`` tallies source records dropped for having zero events;
    rejection is counted, not fatal.
    """

    role: GroupRole
    traces: list[Trace]
    vocab: Vocabulary
    rejected_count: int = 0
    _id_array: tuple[str, ...] = field(init=False, repr=False, default=())

    def __post_init__(self) -> None:
        self._id_array = tuple(t.trace_id for t in self.traces)

    def __len__(self) -> int:
        return len(self.traces)

    @property
    def trace_ids(self) -> tuple[str, ...]:
        return self._id_array

    def labels_of(self, trace: Trace) -> tuple[str, ...]:
        return self.vocab.labels_of(trace.event_ids)

    def to_records(self) -> list[dict]:
        """Serialize back to the trace-record form (labels, no numeric events)."""
        return [
            {"id": t.trace_id, "events": list(self.labels_of(t))}
            for t in self.traces
        ]


def _event_label(
    event: object,
    numeric_specs: Mapping[str, BinningSpec] | None,
    where: str,
) -> str:
    """Resolve one raw event entry to its discrete label."""
    if isinstance(event, str):
        if not event:
            raise IngestError(f"{where}: empty event label")
        return event
    if isinstance(event, dict):
        name = event.get("name")
        value = event.get("value")
        if not isinstance(name, str) or not name:
            raise IngestError(f"{where}: numeric event missing 'name'")
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise IngestError(f"{where}: numeric event '{name}' has non-numeric value")
        spec = (numeric_specs or {}).get(name)
        if spec is None:
            raise IngestError(
                f"{where}: no binning spec for numeric feature '{name}'"
            )
        try:
            return spec.label_for(float(value))
        except ValueError as exc:
            raise IngestError(f"{where}: {exc}") from exc
    raise IngestError(f"{where}: event must be a string or {{name, value}} object")


def ingest_records(
    records: Iterable[tuple[int, dict]],
    role: GroupRole,
    vocab: Vocabulary,
    numeric_specs: Mapping[str, BinningSpec] | None = None,
) -> TraceGroup:
    """Build a TraceGroup from parsed ``(line_number, record)`` pairs.

    Metadata key-value pairs become synthetic ``key=value`` events prepended
    to the trace in record order, ahead of the recorded events. Records whose
    event list ends up empty are rejected and counted. Numeric events are
    replaced by their bin label.
    """
    traces: list[Trace] = []
    seen: set[str] = set()
    rejected = 0
    for lineno, record in records:
        where = f"line {lineno}"
        if not isinstance(record, dict):
            raise IngestError(f"{where}: record must be a JSON object")
        trace_id = record.get("id")
        if not isinstance(trace_id, str) or not trace_id:
            raise IngestError(f"{where}: record missing string 'id'")
        if trace_id in seen:
            raise IngestError(f"{where}: duplicate trace id '{trace_id}'")
        raw_events = record.get("events")
        if not isinstance(raw_events, list):
            raise IngestError(f"{where}: record missing 'events' list")
        meta = record.get("meta")
        if meta is not None and not isinstance(meta, dict):
            raise IngestError(f"{where}: 'meta' must be an object")

        labels: list[str] = []
        if meta:
            for key, value in meta.items():
                labels.append(f"{key}={value}")
        for event in raw_events:
            labels.append(_event_label(event, numeric_specs, where))

        if not labels:
            rejected += 1
            continue
        seen.add(trace_id)
        traces.append(Trace(trace_id, tuple(vocab.intern(lb).id for lb in labels)))
    return TraceGroup(role=role, traces=traces, vocab=vocab, rejected_count=rejected)


def ingest_traces(
    lines: Iterable[str],
    role: GroupRole,
    vocab: Vocabulary,
    numeric_specs: Mapping[str, BinningSpec] | None = None,
) -> TraceGroup:
    """Ingest a JSON-Lines stream of trace records into a TraceGroup.

    One record per line: ``{"id": ..., "events": [...], "meta": {...}?}``.
    Blank lines are skipped. Malformed lines raise IngestError naming the
    line number.
    """

    def parsed() -> Iterator[tuple[int, dict]]:
        for lineno, line in enumerate(lines, start=1):
            text = line.strip()
            if not text:
                continue
            try:
                record = json.loads(text)
            except json.JSONDecodeError as exc:
                raise IngestError(f"line {lineno}: invalid JSON ({exc.msg})") from exc
            yield lineno, record

    return ingest_records(parsed(), role, vocab, numeric_specs)


def collect_numeric_values(records: Iterable[dict]) -> dict[str, list[float]]:
    """Gather per-feature numeric values from parsed records (pre-binning pass)."""
    values: dict[str, list[float]] = {}
    for record in records:
        events = record.get("events")
        if not isinstance(events, list):
            continue
        for event in events:
            if isinstance(event, dict):
                name = event.get("name")
                value = event.get("value")
                if isinstance(name, str) and isinstance(value, (int, float)) \
                        and not isinstance(value, bool):
                    values.setdefault(name, []).append(float(value))
    return values
