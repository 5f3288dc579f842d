import { describe, expect, it } from "vitest";

import {
  canQuery,
  clampBandwidth,
  initialState,
  selectByAttribute,
  selectByLasso,
  selectBySearch,
  shannonPreview,
} from "../src/state.js";
import type { Point } from "../src/geometry.js";
import { nodes, summary } from "./fixtures.js";

const allNodes = nodes().nodes;
const info = summary();

function fresh() {
  return initialState(info.default_operator, 20);
}

describe("selection reducers", () => {
  it("selects every node of a continent", () => {
    const { state, hint } = selectByAttribute(fresh(), allNodes, "continent", "Europe");
    expect(hint).toBeUndefined();
    const expected = allNodes.filter((n) => n.attributes.continent === "Europe").length;
    expect(state.selection.length).toBe(expected);
    expect(state.selectionLabel).toBe("continent=Europe");
    expect(canQuery(state)).toBe(true);
  });

  it("reports a hint and keeps state for unknown attribute values", () => {
    const before = fresh();
    const { state, hint } = selectByAttribute(before, allNodes, "continent", "Atlantis");
    expect(hint).toContain("Atlantis");
    expect(state).toBe(before);
  });

  it("search finds a unique label and pins it", () => {
    const target = allNodes[7];
    const { state, hint } = selectBySearch(fresh(), allNodes, target.label.toLowerCase());
    expect(hint).toBeUndefined();
    expect(state.selection).toEqual([target.id]);
    expect(state.pinnedNode).toBe(target.id);
  });

  it("search falls back to prefix matches", () => {
    const { state } = selectBySearch(fresh(), allNodes, "EU0");
    expect(state.selection.length).toBeGreaterThan(1);
    for (const id of state.selection) {
      expect(allNodes[id].label.startsWith("EU0")).toBe(true);
    }
  });

  it("empty lasso is a no-op with a hint", () => {
    const before = fresh();
    const coords: Point[] = [[10, 10], [50, 50]];
    const polygon: Point[] = [[100, 100], [110, 100], [110, 110]];
    const { state, hint } = selectByLasso(before, coords, polygon);
    expect(state).toBe(before);
    expect(hint).toContain("no nodes");
  });

  it("lasso picks exactly the enclosed nodes", () => {
    const coords: Point[] = [[10, 10], [50, 50], [90, 10]];
    const polygon: Point[] = [[40, 40], [60, 40], [60, 60], [40, 60]];
    const { state } = selectByLasso(fresh(), coords, polygon);
    expect(state.selection).toEqual([1]);
  });
});

describe("bandwidth and preview", () => {
  it("clamps the slider into the server-advertised range", () => {
    expect(clampBandwidth(500, info.N, info.w_max)).toBe(Math.min(info.w_max, info.N - 1));
    expect(clampBandwidth(0, info.N, info.w_max)).toBe(1);
  });

  it("previews the Shannon number before querying", () => {
    const { state } = selectByAttribute(fresh(), allNodes, "continent", "Europe");
    const s = state.selection.length;
    expect(shannonPreview(state, info.N)).toBeCloseTo((20 * s) / info.N, 12);
  });
});
