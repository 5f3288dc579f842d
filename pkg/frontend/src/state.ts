/** View state and the pure selection reducers behind the controls. */

import { pointInPolygon, type Point } from "./geometry.js";
import type { NodeInfo, SelectionSpec, ViewName } from "./types.js";

export interface ViewState {
  selection: number[];
  selectionLabel: string;
  bandwidth: number;
  operator: string;
  view: ViewName;
  axes: [number, number];
  pinnedNode: number | null;
}

export interface SelectResult {
  state: ViewState;
  hint?: string;
}

export function initialState(defaultOperator: string, bandwidth: number): ViewState {
  return {
    selection: [],
    selectionLabel: "",
    bandwidth,
    operator: defaultOperator,
    view: "embedding",
    axes: [0, 1],
    pinnedNode: null,
  };
}

export function clampBandwidth(w: number, nodeCount: number, wMax: number): number {
  const hi = Math.min(wMax, nodeCount - 1);
  return Math.max(1, Math.min(hi, Math.round(w)));
}

/** Expected number of well-concentrated vectors for the pending query. */
export function shannonPreview(state: ViewState, nodeCount: number): number {
  return (state.bandwidth * state.selection.length) / nodeCount;
}

export function selectByAttribute(
  state: ViewState, nodes: NodeInfo[], key: string, value: string,
): SelectResult {
  const ids = nodes.filter((n) => n.attributes[key] === value).map((n) => n.id);
  if (ids.length === 0) {
    return { state, hint: `no nodes with ${key}=${value}` };
  }
  return {
    state: { ...state, selection: ids, selectionLabel: `${key}=${value}`, pinnedNode: null },
  };
}

/** Exact label match first; falls back to unique prefix matches. */
export function selectBySearch(state: ViewState, nodes: NodeInfo[], query: string): SelectResult {
  const q = query.trim().toUpperCase();
  if (!q) {
    return { state, hint: "empty search" };
  }
  let hits = nodes.filter((n) => n.label.toUpperCase() === q);
  if (hits.length === 0) {
    hits = nodes.filter((n) => n.label.toUpperCase().startsWith(q));
  }
  if (hits.length === 0) {
    return { state, hint: `no node labelled ${query}` };
  }
  return {
    state: {
      ...state,
      selection: hits.map((n) => n.id),
      selectionLabel: hits.length === 1 ? hits[0].label : `${query}*`,
      pinnedNode: hits.length === 1 ? hits[0].id : null,
    },
  };
}

/**
 * Lasso over the current embedding: nodes whose frame coordinates fall inside
 * the polygon.  An empty catch leaves the state untouched.
 */
export function selectByLasso(
  state: ViewState, coords: Point[], polygon: Point[],
): SelectResult {
  if (polygon.length < 3) {
    return { state, hint: "lasso needs at least three points" };
  }
  const ids: number[] = [];
  coords.forEach((p, i) => {
    if (pointInPolygon(p, polygon)) {
      ids.push(i);
    }
  });
  if (ids.length === 0) {
    return { state, hint: "lasso caught no nodes" };
  }
  return { state: { ...state, selection: ids, selectionLabel: `lasso (${ids.length})`, pinnedNode: null } };
}

/** Wire form of the current selection for /slepian/query. */
export function selectionSpec(state: ViewState): SelectionSpec {
  return { mode: "ids", ids: state.selection };
}

export function canQuery(state: ViewState): boolean {
  return state.selection.length > 0 && state.bandwidth >= 1;
}
