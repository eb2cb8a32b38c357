/**
 * Console session: the investigative loop an engineer drives.
 *
 * Submit both groups with parameters, watch the job finish, inspect the
 * ranked table, re-filter redundancy live (a pure re-fetch of the stored
 * result, never a new analysis job), and explore links between done jobs.
 */

import { ApiClient, ApiError } from "./api.js";
import { pollJob, type PollOptions } from "./poll.js";
import { renderTable, type RenderedRow } from "./table.js";
import type { JobStatus, LinkResponse, PatternsResponse, TraceRecord } from "./types.js";
import { validateParams, validateSimilarity, type FieldError, type FormParams } from "./validate.js";

export interface SessionState {
  jobId: string | null;
  jobState: JobStatus["state"] | null;
  params: FormParams;
  fieldErrors: FieldError[];
  error: string | null;
  table: RenderedRow[];
  response: PatternsResponse | null;
  links: LinkResponse | null;
  expandedClusters: Set<number>;
}

export class ConsoleSession {
  readonly state: SessionState;

  constructor(
    private readonly api: ApiClient,
    params: FormParams,
    private readonly pollOptions: PollOptions = {},
  ) {
    this.state = {
      jobId: null,
      jobState: null,
      params: { ...params },
      fieldErrors: [],
      error: null,
      table: [],
      response: null,
      links: null,
      expandedClusters: new Set(),
    };
  }

  /** Submit the form, track the job to completion, load the ranked table. */
  async submitAndTrack(test: TraceRecord[], control: TraceRecord[]): Promise<boolean> {
    const errors = validateParams(this.state.params);
    this.state.fieldErrors = errors;
    if (errors.length > 0) {
      return false; // invalid form: no request leaves the console
    }
    this.state.error = null;
    try {
      const { job_id } = await this.api.submitAnalysis({
        test,
        control,
        params: {
          min_support: this.state.params.minSupport,
          max_len: this.state.params.maxLen,
          similarity_threshold: this.state.params.similarityThreshold,
          control_mode: this.state.params.controlMode,
        },
      });
      this.state.jobId = job_id;
      const status = await pollJob(this.api, job_id, {
        ...this.pollOptions,
        onUpdate: (s) => {
          this.state.jobState = s.state;
          this.pollOptions.onUpdate?.(s);
        },
      });
      if (status.state === "failed") {
        this.state.error = status.error ?? "analysis failed";
        return false;
      }
      await this.loadPatterns(this.state.params.similarityThreshold);
      return true;
    } catch (err) {
      this.state.error = describe(err);
      return false; // form state is preserved for retry
    }
  }

  /** Re-filter the loaded job at a new similarity threshold. Never re-mines,
   * never submits a new job. */
  async adjustSimilarity(threshold: number): Promise<boolean> {
    const errors = validateSimilarity(threshold);
    this.state.fieldErrors = errors;
    if (errors.length > 0) return false;
    if (this.state.jobId === null || this.state.jobState !== "done") {
      this.state.error = "no completed analysis loaded";
      return false;
    }
    this.state.params.similarityThreshold = threshold;
    try {
      await this.loadPatterns(threshold);
      return true;
    } catch (err) {
      this.state.error = describe(err);
      return false;
    }
  }

  /** Link two or more completed jobs by their pattern statistics. */
  async exploreLinks(jobIds: string[], threshold: number): Promise<boolean> {
    if (jobIds.length < 2) {
      this.state.error = "select at least two completed analyses to link";
      return false;
    }
    try {
      this.state.links = await this.api.linkJobs(jobIds, threshold);
      return true;
    } catch (err) {
      this.state.error = describe(err);
      return false;
    }
  }

  /** Open the pattern table of a linked analysis (cluster member click). */
  async openLinkedJob(jobId: string): Promise<boolean> {
    try {
      const status = await this.api.getJob(jobId);
      if (status.state !== "done") {
        this.state.error = `job ${jobId} is ${status.state}`;
        return false;
      }
      this.state.jobId = jobId;
      this.state.jobState = status.state;
      await this.loadPatterns(this.state.params.similarityThreshold);
      return true;
    } catch (err) {
      this.state.error = describe(err);
      return false;
    }
  }

  toggleCluster(rowIndex: number): void {
    if (this.state.expandedClusters.has(rowIndex)) {
      this.state.expandedClusters.delete(rowIndex);
    } else {
      this.state.expandedClusters.add(rowIndex);
    }
  }

  private async loadPatterns(threshold: number): Promise<void> {
    if (this.state.jobId === null) throw new Error("no job loaded");
    const response = await this.api.getPatterns(this.state.jobId, threshold);
    this.state.response = response;
    this.state.table = renderTable(response.rows);
    this.state.expandedClusters = new Set();
    this.state.error = null;
  }
}

function describe(err: unknown): string {
  if (err instanceof ApiError) return `service error ${err.status}: ${err.message}`;
  if (err instanceof Error) return err.message;
  return String(err);
}
