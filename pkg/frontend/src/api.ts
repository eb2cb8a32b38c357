/**
 * Typed client for the analysis service.
 *
 * The fetch implementation is injectable so tests can run against a fixture
 * service; the console itself never computes statistics, it only transports
 * what the service returns.
 */

import type {
  JobStatus,
  LinkResponse,
  PatternsResponse,
  SubmitAnalysisRequest,
  SubmitAnalysisResponse,
} from "./types.js";

export const EXPECTED_SCHEMA = "1";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export class SchemaMismatchError extends Error {
  constructor(readonly got: string | null) {
    super(`service speaks schema ${got ?? "(none)"}, console expects ${EXPECTED_SCHEMA}`);
    this.name = "SchemaMismatchError";
  }
}

async function errorMessage(response: Response): Promise<string> {
  try {
    const body = await response.json();
    if (typeof body?.detail === "string") return body.detail;
    if (Array.isArray(body?.detail)) {
      return body.detail
        .map((d: { field?: string; message?: string }) =>
          d.field ? `${d.field}: ${d.message}` : String(d.message),
        )
        .join("; ");
    }
  } catch {
    // fall through to the generic message
  }
  return `request failed with status ${response.status}`;
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: typeof fetch = fetch,
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, {
      method,
      headers: { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const schema = response.headers.get("X-RCA-Schema");
    if (schema !== null && schema !== EXPECTED_SCHEMA) {
      throw new SchemaMismatchError(schema);
    }
    if (!response.ok) {
      throw new ApiError(response.status, await errorMessage(response));
    }
    return (await response.json()) as T;
  }

  submitAnalysis(request: SubmitAnalysisRequest): Promise<SubmitAnalysisResponse> {
    return this.request("POST", "/v1/analyses", request);
  }

  getJob(jobId: string): Promise<JobStatus> {
    return this.request("GET", `/v1/analyses/${encodeURIComponent(jobId)}`);
  }

  getPatterns(
    jobId: string,
    similarity?: number,
    topK?: number,
  ): Promise<PatternsResponse> {
    const params = new URLSearchParams();
    if (similarity !== undefined) params.set("similarity", String(similarity));
    if (topK !== undefined) params.set("top_k", String(topK));
    const query = params.size ? `?${params}` : "";
    return this.request("GET", `/v1/analyses/${encodeURIComponent(jobId)}/patterns${query}`);
  }

  linkJobs(jobIds: string[], threshold: number): Promise<LinkResponse> {
    return this.request("POST", "/v1/links", { job_ids: jobIds, threshold });
  }
}
