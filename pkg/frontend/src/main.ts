/** Shell: wires the controls, the query scheduler, and the three views. */

import { ApiClient, ServiceError } from "./api.js";
import type { Point } from "./geometry.js";
import { QueryScheduler } from "./scheduler.js";
import { renderView, scatterPositions, DEFAULT_OPTIONS } from "./render.js";
import {
  canQuery,
  clampBandwidth,
  initialState,
  selectByAttribute,
  selectByLasso,
  selectBySearch,
  shannonPreview,
  type ViewState,
} from "./state.js";
import type {
  GraphSummary,
  NodeInfo,
  QueryRequest,
  QueryResponse,
  ViewName,
} from "./types.js";

const api = new ApiClient("");

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

class Explorer {
  private state: ViewState;
  private nodes: NodeInfo[] = [];
  private summary: GraphSummary;
  private lastResponse: QueryResponse | null = null;
  private lassoActive = false;
  private lassoPath: Point[] = [];
  private scheduler: QueryScheduler<QueryRequest, QueryResponse>;

  constructor(summary: GraphSummary, nodes: NodeInfo[]) {
    this.summary = summary;
    this.nodes = nodes;
    this.state = initialState(summary.default_operator, Math.min(20, summary.w_max));
    this.scheduler = new QueryScheduler(
      (req) => api.query(req),
      (_req, resp) => this.applyResponse(resp),
      (_req, err) => this.showError(err),
      150,
    );
    this.buildControls();
    this.updatePreview();
  }

  private buildControls(): void {
    const opSelect = el<HTMLSelectElement>("operator");
    for (const op of this.summary.available_operators) {
      const opt = document.createElement("option");
      opt.value = op;
      opt.textContent = op;
      opt.selected = op === this.summary.default_operator;
      opSelect.appendChild(opt);
    }
    opSelect.addEventListener("change", () => {
      this.state.operator = opSelect.value;
      this.refocus();
    });

    const slider = el<HTMLInputElement>("bandwidth");
    slider.min = "1";
    slider.max = String(Math.min(this.summary.w_max, this.summary.N - 1));
    slider.value = String(this.state.bandwidth);
    el<HTMLSpanElement>("bandwidth-value").textContent = slider.value;
    slider.addEventListener("input", () => {
      this.state.bandwidth = clampBandwidth(
        Number(slider.value), this.summary.N, this.summary.w_max,
      );
      el<HTMLSpanElement>("bandwidth-value").textContent = String(this.state.bandwidth);
      this.updatePreview();
      this.refocus();
    });

    const keySelect = el<HTMLSelectElement>("attr-key");
    for (const key of this.summary.attribute_keys) {
      const opt = document.createElement("option");
      opt.value = key;
      opt.textContent = key;
      keySelect.appendChild(opt);
    }
    const fillValues = () => {
      const key = keySelect.value;
      const values = [...new Set(this.nodes.map((n) => n.attributes[key]).filter(Boolean))].sort();
      const valueSelect = el<HTMLSelectElement>("attr-value");
      valueSelect.innerHTML = "";
      for (const v of values) {
        const opt = document.createElement("option");
        opt.value = v;
        opt.textContent = v;
        valueSelect.appendChild(opt);
      }
    };
    keySelect.addEventListener("change", fillValues);
    if (this.summary.attribute_keys.length) fillValues();

    el<HTMLButtonElement>("attr-apply").addEventListener("click", () => {
      const result = selectByAttribute(
        this.state, this.nodes, keySelect.value, el<HTMLSelectElement>("attr-value").value,
      );
      this.applySelect(result.state, result.hint);
    });

    const search = el<HTMLInputElement>("search");
    search.addEventListener("keydown", (ev) => {
      if (ev.key === "Enter") {
        const result = selectBySearch(this.state, this.nodes, search.value);
        this.applySelect(result.state, result.hint);
      }
    });

    el<HTMLButtonElement>("lasso-toggle").addEventListener("click", () => {
      this.lassoActive = !this.lassoActive;
      el<HTMLButtonElement>("lasso-toggle").classList.toggle("active", this.lassoActive);
      this.setHint(this.lassoActive ? "draw a loop on the embedding" : "");
    });

    const axesToggle = el<HTMLInputElement>("axes-toggle");
    axesToggle.addEventListener("change", () => {
      if (axesToggle.checked) {
        this.state.axes = [1, 2];
        this.state.bandwidth = Math.max(this.state.bandwidth, 3);
        el<HTMLInputElement>("bandwidth").value = String(this.state.bandwidth);
        el<HTMLSpanElement>("bandwidth-value").textContent = String(this.state.bandwidth);
      } else {
        this.state.axes = [0, 1];
      }
      this.refocus();
    });

    for (const view of ["embedding", "geographic", "spectrum"] as ViewName[]) {
      el<HTMLButtonElement>(`tab-${view}`).addEventListener("click", () => {
        this.state.view = view;
        this.renderTabs();
        this.renderCurrentView();
      });
    }
    this.renderTabs();
    this.wireLasso();
  }

  private applySelect(next: ViewState, hint?: string): void {
    this.state = next;
    this.setHint(hint ?? "");
    this.updatePreview();
    if (!hint) this.refocus();
  }

  private updatePreview(): void {
    const s = this.state.selection.length;
    const k = shannonPreview(this.state, this.summary.N);
    el<HTMLSpanElement>("preview").textContent =
      s > 0 ? `selection: ${s} nodes (${this.state.selectionLabel}), K = ${k.toFixed(2)}` : "no selection";
  }

  private refocus(): void {
    if (!canQuery(this.state)) return;
    const colorAxis = this.state.axes[0] === 1 ? 0 : null;
    this.scheduler.request({
      selection: { mode: "ids", ids: this.state.selection },
      W: this.state.bandwidth,
      operator: this.state.operator,
      axes: this.state.axes,
      color_axis: colorAxis,
    });
    el<HTMLSpanElement>("status").textContent = "computing...";
  }

  private applyResponse(resp: QueryResponse): void {
    this.lastResponse = resp;
    this.setHint("");
    const t = resp.timing;
    el<HTMLSpanElement>("status").textContent =
      `W=${resp.W} ${resp.operator} | S=${resp.selection_size} | K=${resp.K.toFixed(2)} | ` +
      `transition k*=${resp.transition_index}${resp.transition_detected ? "" : " (weak)"} | ` +
      `${(t.total_seconds * 1000).toFixed(0)} ms${t.basis_cached ? "" : " (cold basis)"}`;
    this.renderCurrentView();
  }

  private showError(err: unknown): void {
    const message = err instanceof ServiceError ? err.message : String(err);
    this.setHint(message);
    el<HTMLSpanElement>("status").textContent = "error";
  }

  private setHint(text: string): void {
    el<HTMLDivElement>("hint").textContent = text;
  }

  private renderTabs(): void {
    for (const view of ["embedding", "geographic", "spectrum"] as ViewName[]) {
      el<HTMLButtonElement>(`tab-${view}`).classList.toggle("active", view === this.state.view);
    }
  }

  private renderCurrentView(): void {
    if (!this.lastResponse) return;
    el<HTMLDivElement>("view").innerHTML = renderView(this.state.view, this.lastResponse);
  }

  /** Freehand lasso on the embedding view, in screen coordinates. */
  private wireLasso(): void {
    const container = el<HTMLDivElement>("view");
    let drawing = false;

    const toLocal = (ev: PointerEvent): Point => {
      const svg = container.querySelector("svg");
      if (!svg) return [0, 0];
      const box = svg.getBoundingClientRect();
      const scaleX = DEFAULT_OPTIONS.width / box.width;
      const scaleY = DEFAULT_OPTIONS.height / box.height;
      return [(ev.clientX - box.left) * scaleX, (ev.clientY - box.top) * scaleY];
    };

    container.addEventListener("pointerdown", (ev) => {
      if (!this.lassoActive || this.state.view !== "embedding" || !this.lastResponse) return;
      drawing = true;
      this.lassoPath = [toLocal(ev)];
    });
    container.addEventListener("pointermove", (ev) => {
      if (drawing) this.lassoPath.push(toLocal(ev));
    });
    container.addEventListener("pointerup", () => {
      if (!drawing || !this.lastResponse) return;
      drawing = false;
      this.lassoActive = false;
      el<HTMLButtonElement>("lasso-toggle").classList.remove("active");
      const pos = scatterPositions(
        this.lastResponse, DEFAULT_OPTIONS.width, DEFAULT_OPTIONS.height,
      );
      const coords: Point[] = pos.x.map((x, i) => [x, pos.y[i]]);
      const result = selectByLasso(this.state, coords, this.lassoPath);
      this.lassoPath = [];
      this.applySelect(result.state, result.hint);
    });
  }
}

async function boot(): Promise<void> {
  try {
    const [summary, nodes] = await Promise.all([api.summary(), api.nodes()]);
    el<HTMLSpanElement>("graph-info").textContent =
      `N=${summary.N}, ${summary.edge_count} edges`;
    new Explorer(summary, nodes.nodes);
  } catch (err) {
    el<HTMLDivElement>("hint").textContent =
      `cannot reach the compute service: ${err instanceof Error ? err.message : err}`;
  }
}

boot();
