import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../../src/api.js";
import { ChartPanel, TreePanel, renderError } from "../../src/panels.js";
import { DEFAULT_STATE, LatestOnly, clampWeights } from "../../src/state.js";
import { bumpChart } from "../../src/charts.js";
import type { TreePayload } from "../../src/types.js";

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

const emptyTree: TreePayload = {
  subject: "trump",
  nodes: [{ id: "subject", label: "trump", weight: 0, kind: "subject" }],
  edges: [],
};

describe("LatestOnly", () => {
  it("marks superseded tokens stale", () => {
    const seq = new LatestOnly();
    const a = seq.begin();
    const b = seq.begin();
    expect(seq.isCurrent(a)).toBe(false);
    expect(seq.isCurrent(b)).toBe(true);
  });
});

describe("clampWeights", () => {
  it("orders and floors the range", () => {
    expect(clampWeights(7.9, 2.2)).toEqual([7, 7]);
    expect(clampWeights(-3, 10)).toEqual([0, 10]);
  });
});

describe("renderError", () => {
  it("shows the machine-readable code inline", () => {
    const container = document.createElement("div");
    renderError(container, new ApiError(404, "UNKNOWN_WORD", "nope"));
    const el = container.querySelector(".panel-error")!;
    expect(el.getAttribute("data-code")).toBe("UNKNOWN_WORD");
    expect(el.textContent).toContain("UNKNOWN_WORD");
  });
});

describe("TreePanel", () => {
  it("renders the empty-state message when no verbs survive", async () => {
    const client = new ApiClient("", async () => jsonResponse(emptyTree));
    const container = document.createElement("div");
    const panel = new TreePanel(client, container);
    await panel.refresh({ ...DEFAULT_STATE, subject: "trump", month: "2019-01" });
    expect(container.querySelector(".panel-empty")?.textContent).toMatch(/weight range/);
  });

  it("never blank-screens on API failure", async () => {
    const client = new ApiClient("", async () =>
      jsonResponse({ code: "UNKNOWN_MONTH", message: "no slice" }, 404),
    );
    const container = document.createElement("div");
    const panel = new TreePanel(client, container);
    await panel.refresh({ ...DEFAULT_STATE, subject: "trump", month: "2020-06" });
    expect(container.querySelector(".panel-error")?.getAttribute("data-code")).toBe(
      "UNKNOWN_MONTH",
    );
    expect(container.childElementCount).toBeGreaterThan(0);
  });

  it("discards stale responses", async () => {
    let release: (() => void) | null = null;
    const slowTree: TreePayload = {
      subject: "trump",
      nodes: [
        { id: "subject", label: "trump", weight: 1, kind: "subject" },
        { id: "v:stale", label: "stale", weight: 1, kind: "verb" },
      ],
      edges: [{ source: "subject", target: "v:stale", weight: 1 }],
    };
    const fastTree: TreePayload = {
      subject: "trump",
      nodes: [
        { id: "subject", label: "trump", weight: 2, kind: "subject" },
        { id: "v:fresh", label: "fresh", weight: 2, kind: "verb" },
      ],
      edges: [{ source: "subject", target: "v:fresh", weight: 2 }],
    };
    let call = 0;
    const client = new ApiClient("", (url) => {
      call += 1;
      if (call === 1) {
        return new Promise((resolvePromise) => {
          release = () => resolvePromise(jsonResponse(slowTree));
        });
      }
      return Promise.resolve(jsonResponse(fastTree));
    });
    const container = document.createElement("div");
    const panel = new TreePanel(client, container);
    const view = { ...DEFAULT_STATE, subject: "trump", month: "2019-01" };
    const first = panel.refresh(view);
    const second = panel.refresh(view);
    await second;
    release!();
    await first;
    const verbs = [...container.querySelectorAll("g.node-verb text")].map(
      (t) => t.textContent,
    );
    expect(verbs).toEqual(["fresh"]);
  });
});

describe("ChartPanel", () => {
  it("renders per-panel error placeholders", async () => {
    const container = document.createElement("div");
    const panel = new ChartPanel(
      container,
      async () => {
        throw new ApiError(404, "UNKNOWN_WORD", "missing");
      },
      bumpChart,
    );
    await panel.refresh(DEFAULT_STATE);
    expect(container.querySelector(".panel-error")?.getAttribute("data-code")).toBe(
      "UNKNOWN_WORD",
    );
  });
});
