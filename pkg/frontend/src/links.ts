/**
 * Pure render model for the regression-links view.
 */

import type { LinkResponse } from "./types.js";

export interface RenderedCluster {
  members: string[];
  diameter: string;
  linked: boolean;
}

export interface RenderedLinks {
  threshold: string;
  clusters: RenderedCluster[];
  excluded: string[];
}

export function renderLinks(response: LinkResponse): RenderedLinks {
  return {
    threshold: String(response.threshold),
    clusters: response.clusters.map((c) => ({
      members: [...c.members],
      diameter: String(c.diameter),
      linked: c.members.length > 1,
    })),
    excluded: [...response.excluded_zero_vectors],
  };
}
