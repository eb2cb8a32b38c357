"""Pydantic request/response models for the analysis service."""

from __future__ import annotations

from typing import Literal, Union

from pydantic import BaseModel, Field, field_validator


class NumericEvent(BaseModel):
    name: str = Field(min_length=1)
    value: float


TraceEvent = Union[str, NumericEvent]


class TraceRecord(BaseModel):
    id: str = Field(min_length=1)
    events: list[TraceEvent]
    meta: dict[str, str] | None = None

    def to_record(self) -> dict:
        events: list = [
            e if isinstance(e, str) else {"name": e.name, "value": e.value}
            for e in self.events
        ]
        out: dict = {"id": self.id, "events": events}
        if self.meta:
            out["meta"] = dict(self.meta)
        return out


class BinningChoice(BaseModel):
    strategy: Literal["equal_proportion", "equal_width", "kbins"] = "equal_proportion"
    rule: int | Literal["sturges", "fd", "freedman_diaconis"] = "sturges"

    @field_validator("rule")
    @classmethod
    def positive_count(cls, v):
        if isinstance(v, int) and v < 1:
            raise ValueError("bin count must be >= 1")
        return v


class AnalysisParams(BaseModel):
    min_support: float = Field(default=0.05, gt=0)
    max_len: int = Field(default=5, ge=1)
    similarity_threshold: float = Field(default=0.9, ge=0.0, le=1.0)
    control_mode: Literal["exact", "algorithm_faithful"] = "exact"
    control_min_support: float | None = Field(default=None, gt=0)
    binning: BinningChoice = BinningChoice()


class SubmitAnalysisRequest(BaseModel):
    test: list[TraceRecord]
    control: list[TraceRecord]
    params: AnalysisParams = AnalysisParams()
    idempotency_key: str | None = None


class SubmitAnalysisResponse(BaseModel):
    job_id: str


class JobStatusResponse(BaseModel):
    job_id: str
    state: Literal["queued", "running", "done", "failed"]
    config: dict
    error: str | None = None
    timings: dict[str, float] = {}
    warnings: list[str] = []


class PatternRow(BaseModel):
    pattern: list[str]
    test_support: int
    control_support: int
    precision: float
    recall: float
    f1: float
    test_trace_ids: list[str]
    cluster_size: int
    cluster_members: list[list[str]]


class PatternsResponse(BaseModel):
    job_id: str
    similarity_threshold: float
    top_k: int | None = None
    total_patterns: int
    metadata: dict
    rows: list[PatternRow]


class LinkRequest(BaseModel):
    job_ids: list[str] = Field(min_length=1)
    threshold: float = Field(default=0.1, ge=0.0, le=2.0)


class LinkCluster(BaseModel):
    members: list[str]
    diameter: float


class LinkResponse(BaseModel):
    threshold: float
    clusters: list[LinkCluster]
    excluded_zero_vectors: list[str]
