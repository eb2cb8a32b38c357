/**
 * Pure render model for the ranked pattern table.
 *
 * Every displayed value is the verbatim string form of a value from the
 * service response: no rounding, no recomputation. Sorting is client-side
 * presentation only and never alters the cell strings.
 */

import type { PatternRow } from "./types.js";

export const COLUMNS = [
  "pattern",
  "test_support",
  "control_support",
  "precision",
  "recall",
  "f1",
] as const;

export type Column = (typeof COLUMNS)[number];

export interface RenderedRow {
  /** Cell strings in COLUMNS order. */
  cells: string[];
  clusterSize: string;
  clusterMembers: string[];
  traceIds: string[];
}

export function renderPattern(pattern: string[]): string {
  return `(${pattern.join(", ")})`;
}

export function renderRow(row: PatternRow): RenderedRow {
  return {
    cells: [
      renderPattern(row.pattern),
      String(row.test_support),
      String(row.control_support),
      String(row.precision),
      String(row.recall),
      String(row.f1),
    ],
    clusterSize: String(row.cluster_size),
    clusterMembers: row.cluster_members.map(renderPattern),
    traceIds: [...row.test_trace_ids],
  };
}

export function renderTable(rows: PatternRow[]): RenderedRow[] {
  return rows.map(renderRow);
}

export function sortRows(
  rows: PatternRow[],
  column: Column,
  direction: "asc" | "desc",
): PatternRow[] {
  const sign = direction === "asc" ? 1 : -1;
  return [...rows].sort((a, b) => {
    const left = column === "pattern" ? renderPattern(a.pattern) : a[column];
    const right = column === "pattern" ? renderPattern(b.pattern) : b[column];
    if (left < right) return -sign;
    if (left > right) return sign;
    return 0;
  });
}
