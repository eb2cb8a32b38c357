/**
 * Poll a job until it reaches a terminal state (done / failed).
 */

import type { ApiClient } from "./api.js";
import type { JobStatus } from "./types.js";

export interface PollOptions {
  intervalMs?: number;
  maxAttempts?: number;
  sleep?: (ms: number) => Promise<void>;
  onUpdate?: (status: JobStatus) => void;
}

const defaultSleep = (ms: number) => new Promise<void>((r) => setTimeout(r, ms));

export async function pollJob(
  api: ApiClient,
  jobId: string,
  options: PollOptions = {},
): Promise<JobStatus> {
  const { intervalMs = 500, maxAttempts = 600, sleep = defaultSleep, onUpdate } = options;
  for (let attempt = 0; attempt < maxAttempts; attempt++) {
    const status = await api.getJob(jobId);
    onUpdate?.(status);
    if (status.state === "done" || status.state === "failed") {
      return status;
    }
    await sleep(intervalMs);
  }
  throw new Error(`job ${jobId} did not settle after ${maxAttempts} polls`);
}
