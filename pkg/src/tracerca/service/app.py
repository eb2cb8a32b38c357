"""HTTP analysis service: submit trace groups, poll, fetch ranked patterns.

Endpoints (all JSON, schema version in the ``X-RCA-Schema`` header):

    POST /v1/analyses                     -> 202 {"job_id": ...}
    GET  /v1/analyses/{id}                -> job status without bulk result
    GET  /v1/analyses/{id}/patterns       -> deduped rows, re-filterable
    POST /v1/links                        -> cluster report over done jobs

Re-filtering applies the redundancy pass to the job's stored ranked result
at the requested similarity threshold; it never re-mines.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, HTTPException, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from ..linking import link_report
from ..pipeline import AnalysisConfig, normalize_min_support
from ..redundancy import dedupe
from ..report import ReportRow, clustered_row_dict
from .jobs import JobQueueFull, JobStore
from .models import (
    JobStatusResponse,
    LinkRequest,
    LinkResponse,
    PatternsResponse,
    SubmitAnalysisRequest,
    SubmitAnalysisResponse,
)

SCHEMA_VERSION = "1"


def create_app(
    data_dir: Path | str = "rca-jobs",
    job_workers: int = 2,
    queue_limit: int = 64,
    max_body_bytes: int = 64 * 1024 * 1024,
) -> FastAPI:
    app = FastAPI(title="tracerca", version="0.1.0")
    store = JobStore(Path(data_dir), job_workers=job_workers, queue_limit=queue_limit)
    app.state.job_store = store

    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.middleware("http")
    async def guard_and_stamp(request: Request, call_next):
        length = request.headers.get("content-length")
        if length and int(length) > max_body_bytes:
            return JSONResponse(
                status_code=413,
                content={"detail": f"payload exceeds {max_body_bytes} bytes"},
                headers={"X-RCA-Schema": SCHEMA_VERSION},
            )
        response = await call_next(request)
        response.headers["X-RCA-Schema"] = SCHEMA_VERSION
        return response

    @app.exception_handler(RequestValidationError)
    async def validation_as_400(request: Request, exc: RequestValidationError):
        detail = [
            {"field": ".".join(str(p) for p in err["loc"]), "message": err["msg"]}
            for err in exc.errors()
        ]
        return JSONResponse(status_code=400, content={"detail": detail})

    def require_job(job_id: str):
        record = store.get(job_id)
        if record is None:
            raise HTTPException(status_code=404, detail=f"unknown job {job_id!r}")
        return record

    @app.post("/v1/analyses", response_model=SubmitAnalysisResponse, status_code=202)
    def submit_analysis(request: SubmitAnalysisRequest) -> SubmitAnalysisResponse:
        params = request.params
        try:
            config = AnalysisConfig(
                min_support=normalize_min_support(params.min_support),
                max_len=params.max_len,
                similarity_threshold=params.similarity_threshold,
                control_mode=params.control_mode,
                control_min_support=(
                    normalize_min_support(params.control_min_support)
                    if params.control_min_support is not None
                    else None
                ),
                binning_strategy=params.binning.strategy,
                bin_rule=params.binning.rule,
            )
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        try:
            job_id = store.submit(
                [r.to_record() for r in request.test],
                [r.to_record() for r in request.control],
                config,
                idempotency_key=request.idempotency_key,
            )
        except JobQueueFull as exc:
            raise HTTPException(status_code=429, detail=str(exc))
        return SubmitAnalysisResponse(job_id=job_id)

    @app.get("/v1/analyses/{job_id}", response_model=JobStatusResponse)
    def get_job(job_id: str) -> JobStatusResponse:
        record = require_job(job_id)
        return JobStatusResponse(
            job_id=record.job_id,
            state=record.state,
            config=record.config,
            error=record.error,
            timings=record.timings,
            warnings=record.warnings,
        )

    @app.get("/v1/analyses/{job_id}/patterns", response_model=PatternsResponse)
    def get_patterns(
        job_id: str,
        similarity: float = Query(default=0.9, ge=0.0, le=1.0),
        top_k: int | None = Query(default=None, ge=1),
    ) -> PatternsResponse:
        record = require_job(job_id)
        if record.state != "done":
            raise HTTPException(
                status_code=409,
                detail=f"job {job_id!r} is {record.state}, patterns need a done job",
            )
        result = store.load_result(job_id)
        ranked = [ReportRow.from_dict(r) for r in result["ranked_rows"]]
        _, clusters = dedupe(ranked, similarity)
        if top_k is not None:
            clusters = clusters[:top_k]
        rows = [clustered_row_dict(cluster) for cluster in clusters]
        return PatternsResponse(
            job_id=job_id,
            similarity_threshold=similarity,
            top_k=top_k,
            total_patterns=len(ranked),
            metadata=result["metadata"],
            rows=rows,
        )

    @app.post("/v1/links", response_model=LinkResponse)
    def link_jobs(request: LinkRequest) -> LinkResponse:
        analyses = []
        for job_id in dict.fromkeys(request.job_ids):
            record = require_job(job_id)
            if record.state != "done":
                raise HTTPException(
                    status_code=409, detail=f"job {job_id!r} is {record.state}"
                )
            result = store.load_result(job_id)
            analyses.append(
                (job_id, [ReportRow.from_dict(r) for r in result["ranked_rows"]])
            )
        return LinkResponse(**link_report(analyses, request.threshold))

    return app
