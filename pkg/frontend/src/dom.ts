/**
 * Thin DOM layer: renders session state into the page and wires controls.
 * All substance lives in the pure models and the session controller.
 */

import { renderLinks } from "./links.js";
import { ConsoleSession } from "./session.js";
import { COLUMNS } from "./table.js";
import type { TraceRecord } from "./types.js";

export function parseJsonl(text: string): TraceRecord[] {
  const records: TraceRecord[] = [];
  text.split("\n").forEach((line, i) => {
    const trimmed = line.trim();
    if (!trimmed) return;
    try {
      records.push(JSON.parse(trimmed) as TraceRecord);
    } catch {
      throw new Error(`line ${i + 1}: invalid JSON`);
    }
  });
  return records;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  text?: string,
  className?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (text !== undefined) node.textContent = text;
  if (className) node.className = className;
  return node;
}

export function renderStatus(session: ConsoleSession, target: HTMLElement): void {
  target.textContent = "";
  const { jobId, jobState, error, fieldErrors } = session.state;
  if (fieldErrors.length > 0) {
    for (const fe of fieldErrors) {
      target.appendChild(el("div", `${fe.field}: ${fe.message}`, "error"));
    }
    return;
  }
  if (error) {
    target.appendChild(el("div", error, "error"));
    return;
  }
  if (jobId) {
    target.appendChild(el("div", `job ${jobId}: ${jobState ?? "submitted"}`, "status"));
  }
}

export function renderTableInto(session: ConsoleSession, table: HTMLTableElement): void {
  table.textContent = "";
  const head = table.createTHead().insertRow();
  for (const column of [...COLUMNS, "cluster"]) {
    head.appendChild(el("th", column));
  }
  const body = table.createTBody();
  session.state.table.forEach((row, index) => {
    const tr = body.insertRow();
    for (const cell of row.cells) {
      tr.insertCell().textContent = cell;
    }
    const clusterCell = tr.insertCell();
    const toggle = el("button", `${row.clusterSize} patterns`);
    toggle.addEventListener("click", () => {
      session.toggleCluster(index);
      renderTableInto(session, table);
    });
    clusterCell.appendChild(toggle);
    if (session.state.expandedClusters.has(index)) {
      const members = document.createElement("tr");
      const cell = members.insertCell();
      cell.colSpan = COLUMNS.length + 1;
      cell.textContent = row.clusterMembers.join("  ");
      cell.className = "cluster-members";
      tr.insertAdjacentElement("afterend", members);
    }
  });
}

export function renderLinksInto(session: ConsoleSession, target: HTMLElement): void {
  target.textContent = "";
  if (!session.state.links) return;
  const model = renderLinks(session.state.links);
  target.appendChild(el("div", `cosine distance threshold ${model.threshold}`));
  for (const cluster of model.clusters) {
    const box = el("div", undefined, cluster.linked ? "cluster linked" : "cluster");
    box.appendChild(el("span", `diameter ${cluster.diameter}: `));
    for (const member of cluster.members) {
      const link = el("button", member, "member");
      link.addEventListener("click", () => void session.openLinkedJob(member));
      box.appendChild(link);
    }
    target.appendChild(box);
  }
  if (model.excluded.length > 0) {
    target.appendChild(
      el("div", `excluded (no patterns): ${model.excluded.join(", ")}`, "excluded"),
    );
  }
}
