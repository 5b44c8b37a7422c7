/** Panel orchestration: fetch, render, and per-panel error placeholders.
 * A panel never blank-screens; failures leave an inline message carrying the
 * API's machine-readable code.
 */
import { ApiClient, ApiError } from "./api.js";
import { LatestOnly, ViewState } from "./state.js";
import { bumpChart, driftLines, sharePies, shiftScatter } from "./charts.js";
import { renderTree } from "./tree.js";

export function clearChildren(el: Element): void {
  while (el.firstChild) el.removeChild(el.firstChild);
}

export function renderError(container: Element, error: unknown): void {
  clearChildren(container);
  const div = document.createElement("div");
  div.className = "panel-error";
  if (error instanceof ApiError) {
    div.textContent = `${error.code}: ${error.message}`;
    div.setAttribute("data-code", error.code);
  } else {
    div.textContent = `request failed: ${String(error)}`;
    div.setAttribute("data-code", "REQUEST_FAILED");
  }
  container.appendChild(div);
}

export function renderEmpty(container: Element, message: string): void {
  clearChildren(container);
  const div = document.createElement("div");
  div.className = "panel-empty";
  div.textContent = message;
  container.appendChild(div);
}

export class TreePanel {
  private readonly tokens = new LatestOnly();

  constructor(
    private readonly client: ApiClient,
    readonly container: Element,
  ) {}

  async refresh(view: ViewState): Promise<void> {
    if (!view.subject || !view.month) return;
    const token = this.tokens.begin();
    try {
      const payload = await this.client.tree({
        subject: view.subject,
        month: view.month,
        min_w: view.minWeight,
        max_w: view.maxWeight,
        object_threshold: view.objectThreshold,
        verb_threshold: view.verbThreshold,
      });
      if (!this.tokens.isCurrent(token)) return;
      const verbs = payload.nodes.filter((n) => n.kind === "verb");
      if (verbs.length === 0) {
        renderEmpty(
          this.container,
          "no verbs in this weight range; widen the min/max filters",
        );
        return;
      }
      clearChildren(this.container);
      this.container.appendChild(renderTree(payload));
    } catch (error) {
      if (!this.tokens.isCurrent(token)) return;
      renderError(this.container, error);
    }
  }
}

type Renderer<T> = (payload: T) => SVGSVGElement;

export class ChartPanel<T> {
  private readonly tokens = new LatestOnly();

  constructor(
    readonly container: Element,
    private readonly load: (view: ViewState) => Promise<T>,
    private readonly render: Renderer<T>,
  ) {}

  async refresh(view: ViewState): Promise<void> {
    const token = this.tokens.begin();
    try {
      const payload = await this.load(view);
      if (!this.tokens.isCurrent(token)) return;
      clearChildren(this.container);
      this.container.appendChild(this.render(payload));
    } catch (error) {
      if (!this.tokens.isCurrent(token)) return;
      renderError(this.container, error);
    }
  }
}

export interface TrendPanels {
  ranks: ChartPanel<Awaited<ReturnType<ApiClient["verbRanking"]>>>;
  shares: ChartPanel<Awaited<ReturnType<ApiClient["objectShares"]>>>;
  drift: ChartPanel<Awaited<ReturnType<ApiClient["drift"]>>>;
  scatter: ChartPanel<Awaited<ReturnType<ApiClient["projection"]>>>;
}

export function makeTrendPanels(
  client: ApiClient,
  containers: { ranks: Element; shares: Element; drift: Element; scatter: Element },
): TrendPanels {
  return {
    ranks: new ChartPanel(containers.ranks, (v) => client.verbRanking(v.subject), bumpChart),
    shares: new ChartPanel(containers.shares, (v) => client.objectShares(v.subject, 4), sharePies),
    drift: new ChartPanel(containers.drift, (v) => client.drift(v.keyWord, 20, 6), driftLines),
    scatter: new ChartPanel(containers.scatter, (v) => client.projection(v.keyWord, 6), shiftScatter),
  };
}
