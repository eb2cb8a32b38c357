"""Canonical report serialization shared by the CLI, service, and tests.

Reports are deterministic: construction order is fixed, trace ids are
sorted, and nothing time- or host-dependent enters the canonical body, so
identical inputs and config produce byte-identical files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .ranking import PatternStats
from .redundancy import PatternCluster

REPORT_SCHEMA = "rca-report/1"


def row_dict(row: PatternStats) -> dict:
    return {
        "pattern": list(row.labels),
        "test_support": row.test_support,
        "control_support": row.control_support,
        "precision": row.precision,
        "recall": row.recall,
        "f1": row.f1,
        "test_trace_ids": sorted(row.test_ids),
    }


def clustered_row_dict(cluster: PatternCluster) -> dict:
    out = row_dict(cluster.representative)
    out["cluster_size"] = len(cluster.members)
    out["cluster_members"] = [list(m.labels) for m in cluster.members]
    return out


@dataclass(frozen=True, slots=True)
class ReportRow:
    """Pattern row re-read from a stored report or result.

    Carries enough to re-filter redundancy and to link regressions; the
    label sequence stands in for the pattern itself.
    """

    labels: tuple[str, ...]
    precision: float
    recall: float
    f1: float
    test_ids: frozenset[str] = frozenset()
    control_support: int = 0

    @property
    def pattern(self) -> tuple[str, ...]:
        return self.labels

    @property
    def test_support(self) -> int:
        return len(self.test_ids)

    @classmethod
    def from_dict(cls, data: dict) -> "ReportRow":
        return cls(
            labels=tuple(data["pattern"]),
            precision=float(data["precision"]),
            recall=float(data["recall"]),
            f1=float(data["f1"]),
            test_ids=frozenset(data.get("test_trace_ids", ())),
            control_support=int(data.get("control_support", 0)),
        )


def canonical_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def parse_report(text: str, source: str) -> dict:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{source}: not valid JSON ({exc.msg})") from exc
    schema = payload.get("schema") if isinstance(payload, dict) else None
    if schema != REPORT_SCHEMA:
        raise ValueError(
            f"{source}: incompatible report schema {schema!r} "
            f"(expected {REPORT_SCHEMA!r})"
        )
    return payload


def report_rows(payload: dict) -> list[ReportRow]:
    return [ReportRow.from_dict(r) for r in payload.get("rows", [])]


def serialize_ranked_rows(rows: Sequence[PatternStats]) -> list[dict]:
    """Full pre-dedupe ranked result, as stored per job by the service."""
    return [row_dict(r) for r in rows]
