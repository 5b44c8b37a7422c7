/** Application boot: search bar, tree controls, and the four trend panels. */
import { ApiClient } from "./api.js";
import {
  DEFAULT_STATE,
  ViewState,
  clampObjectThreshold,
  clampVerbThreshold,
  clampWeights,
} from "./state.js";
import { TreePanel, makeTrendPanels, renderError } from "./panels.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  if (text !== undefined) node.textContent = text;
  return node;
}

export interface App {
  state: ViewState;
  search(subject: string): Promise<void>;
  setMonth(month: string): Promise<void>;
  setThresholds(objectThreshold: number, verbThreshold: number): Promise<void>;
  setWeights(min: number, max: number): Promise<void>;
  setKeyWord(word: string): Promise<void>;
  tree: TreePanel;
}

export function boot(root: Element, client: ApiClient): App {
  const state: ViewState = { ...DEFAULT_STATE };

  root.appendChild(el("h1", {}, "newstrend explorer"));
  const bar = el("div", { class: "toolbar" });
  const search = el("input", {
    id: "subject-search",
    list: "subject-suggestions",
    placeholder: "search a role, e.g. trump",
  });
  const suggestions = el("datalist", { id: "subject-suggestions" });
  const monthSelect = el("select", { id: "month-select" });
  bar.append(search, suggestions, monthSelect);
  root.appendChild(bar);

  const controls = el("div", { class: "controls" });
  const objectSlider = el("input", {
    id: "object-threshold", type: "range", min: "0", max: "1", step: "0.05",
    value: String(state.objectThreshold),
  });
  const verbSlider = el("input", {
    id: "verb-threshold", type: "range", min: "-1", max: "1", step: "0.05",
    value: String(state.verbThreshold),
  });
  const minWeight = el("input", { id: "min-weight", type: "number", value: String(state.minWeight) });
  const maxWeight = el("input", { id: "max-weight", type: "number", value: String(state.maxWeight) });
  controls.append(
    el("label", {}, "object merge"), objectSlider,
    el("label", {}, "verb merge"), verbSlider,
    el("label", {}, "weight range"), minWeight, maxWeight,
  );
  root.appendChild(controls);

  const treeContainer = el("section", { id: "tree-panel", class: "panel" });
  root.appendChild(treeContainer);

  const keyInput = el("input", { id: "key-word", placeholder: "key word for trend panels" });
  root.appendChild(el("div", { class: "toolbar" }));
  root.lastElementChild!.appendChild(keyInput);

  const grid = el("div", { class: "panel-grid" });
  const panelBoxes = {
    ranks: el("section", { id: "ranks-panel", class: "panel" }),
    shares: el("section", { id: "shares-panel", class: "panel" }),
    drift: el("section", { id: "drift-panel", class: "panel" }),
    scatter: el("section", { id: "scatter-panel", class: "panel" }),
  };
  grid.append(
    panelBoxes.ranks, panelBoxes.shares, panelBoxes.drift, panelBoxes.scatter,
  );
  root.appendChild(grid);

  const tree = new TreePanel(client, treeContainer);
  const trends = makeTrendPanels(client, panelBoxes);

  const refreshSubjectPanels = async () => {
    if (!state.subject) return;
    await Promise.all([
      tree.refresh(state),
      trends.ranks.refresh(state),
      trends.shares.refresh(state),
    ]);
  };
  const refreshKeyPanels = async () => {
    if (!state.keyWord) return;
    await Promise.all([trends.drift.refresh(state), trends.scatter.refresh(state)]);
  };

  const app: App = {
    state,
    tree,
    async search(subject: string) {
      state.subject = subject.trim().toLowerCase();
      if (!state.subject) return;
      try {
        const found = await client.subjects(state.subject);
        suggestions.replaceChildren(
          ...found.subjects.map((s) => el("option", { value: s })),
        );
        const ranking = await client.verbRanking(state.subject);
        state.months = Object.keys(ranking.months).sort();
        if (!state.months.includes(state.month)) {
          state.month = state.months[state.months.length - 1] ?? "";
        }
        monthSelect.replaceChildren(
          ...state.months.map((m) =>
            el("option", m === state.month ? { value: m, selected: "" } : { value: m }, m),
          ),
        );
      } catch (error) {
        renderError(treeContainer, error);
        return;
      }
      await refreshSubjectPanels();
    },
    async setMonth(month: string) {
      state.month = month;
      await tree.refresh(state);
    },
    async setThresholds(objectThreshold: number, verbThreshold: number) {
      state.objectThreshold = clampObjectThreshold(objectThreshold);
      state.verbThreshold = clampVerbThreshold(verbThreshold);
      await tree.refresh(state);
    },
    async setWeights(min: number, max: number) {
      [state.minWeight, state.maxWeight] = clampWeights(min, max);
      await tree.refresh(state);
    },
    async setKeyWord(word: string) {
      state.keyWord = word.trim().toLowerCase();
      await refreshKeyPanels();
    },
  };

  search.addEventListener("change", () => void app.search(search.value));
  monthSelect.addEventListener("change", () => void app.setMonth(monthSelect.value));
  const thresholdListener = () =>
    void app.setThresholds(Number(objectSlider.value), Number(verbSlider.value));
  objectSlider.addEventListener("input", thresholdListener);
  verbSlider.addEventListener("input", thresholdListener);
  const weightListener = () =>
    void app.setWeights(Number(minWeight.value), Number(maxWeight.value));
  minWeight.addEventListener("change", weightListener);
  maxWeight.addEventListener("change", weightListener);
  keyInput.addEventListener("change", () => void app.setKeyWord(keyInput.value));

  return app;
}

declare global {
  interface Window {
    newstrendApp?: App;
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  window.newstrendApp = boot(document.getElementById("app")!, new ApiClient());
}
