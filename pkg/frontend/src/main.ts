/**
 * Browser entry point: binds the form, slider, and links view to a session.
 */

import { ApiClient } from "./api.js";
import { parseJsonl, renderLinksInto, renderStatus, renderTableInto } from "./dom.js";
import { ConsoleSession } from "./session.js";
import { DEFAULT_PARAMS } from "./validate.js";

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

export function bootstrap(baseUrl: string = ""): ConsoleSession {
  const api = new ApiClient(baseUrl || window.location.origin.replace(/:\d+$/, ":8008"));
  const session = new ConsoleSession(api, { ...DEFAULT_PARAMS });

  const status = byId<HTMLElement>("status");
  const table = byId<HTMLTableElement>("patterns");
  const linksView = byId<HTMLElement>("links");
  const slider = byId<HTMLInputElement>("similarity");
  const sliderValue = byId<HTMLElement>("similarity-value");

  const refresh = () => {
    renderStatus(session, status);
    renderTableInto(session, table);
    renderLinksInto(session, linksView);
  };

  byId<HTMLButtonElement>("submit").addEventListener("click", async () => {
    session.state.params.minSupport = Number(byId<HTMLInputElement>("min-support").value);
    session.state.params.maxLen = Number(byId<HTMLInputElement>("max-len").value);
    session.state.params.similarityThreshold = Number(slider.value);
    session.state.params.controlMode = byId<HTMLSelectElement>("control-mode")
      .value as "exact" | "algorithm_faithful";
    try {
      const test = parseJsonl(byId<HTMLTextAreaElement>("test-input").value);
      const control = parseJsonl(byId<HTMLTextAreaElement>("control-input").value);
      await session.submitAndTrack(test, control);
    } catch (err) {
      session.state.error = err instanceof Error ? err.message : String(err);
    }
    refresh();
  });

  slider.addEventListener("input", () => {
    sliderValue.textContent = slider.value;
  });
  slider.addEventListener("change", async () => {
    await session.adjustSimilarity(Number(slider.value));
    refresh();
  });

  byId<HTMLButtonElement>("link-jobs").addEventListener("click", async () => {
    const raw = byId<HTMLInputElement>("link-ids").value;
    const ids = raw.split(",").map((s) => s.trim()).filter(Boolean);
    await session.exploreLinks(ids, Number(byId<HTMLInputElement>("link-threshold").value));
    refresh();
  });

  return session;
}

if (typeof document !== "undefined" && document.getElementById("submit")) {
  bootstrap();
}
