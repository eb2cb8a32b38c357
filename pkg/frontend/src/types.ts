/**
 * DTOs of the analysis service API (schema version 1).
 */

export type JobState = "queued" | "running" | "done" | "failed";

export interface NumericEvent {
  name: string;
  value: number;
}

export type TraceEvent = string | NumericEvent;

export interface TraceRecord {
  id: string;
  events: TraceEvent[];
  meta?: Record<string, string>;
}

export interface BinningChoice {
  strategy: "equal_proportion" | "equal_width" | "kbins";
  rule: number | "sturges" | "fd" | "freedman_diaconis";
}

export interface AnalysisParams {
  min_support: number;
  max_len: number;
  similarity_threshold: number;
  control_mode: "exact" | "algorithm_faithful";
  binning?: BinningChoice;
}

export interface SubmitAnalysisRequest {
  test: TraceRecord[];
  control: TraceRecord[];
  params?: Partial<AnalysisParams>;
  idempotency_key?: string;
}

export interface SubmitAnalysisResponse {
  job_id: string;
}

export interface JobStatus {
  job_id: string;
  state: JobState;
  config: Record<string, unknown>;
  error: string | null;
  timings: Record<string, number>;
  warnings: string[];
}

export interface PatternRow {
  pattern: string[];
  test_support: number;
  control_support: number;
  precision: number;
  recall: number;
  f1: number;
  test_trace_ids: string[];
  cluster_size: number;
  cluster_members: string[][];
}

export interface PatternsResponse {
  job_id: string;
  similarity_threshold: number;
  top_k: number | null;
  total_patterns: number;
  metadata: Record<string, unknown>;
  rows: PatternRow[];
}

export interface LinkCluster {
  members: string[];
  diameter: number;
}

export interface LinkResponse {
  threshold: number;
  clusters: LinkCluster[];
  excluded_zero_vectors: string[];
}
