/** Pure SVG renderers: identical input data renders identical markup.
 *
 * Three views mirror the published figures: the embedding scatter (nodes
 * sized by degree, IATA-style labels on the top-degree nodes), the
 * geographic overlay (hue = angle, size = magnitude), and the mu-sequence
 * bar chart with the Shannon-number marker.
 */

import { extent, linearScale } from "./geometry.js";
import type { QueryResponse } from "./types.js";

export interface RenderOptions {
  width: number;
  height: number;
  /** Show labels for this many top-degree nodes. */
  labelCount: number;
}

export const DEFAULT_OPTIONS: RenderOptions = { width: 640, height: 480, labelCount: 30 };

const MARGIN = 24;

function fmt(v: number): string {
  return v.toFixed(2);
}

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function fill(hue: number, selected: boolean): string {
  return `hsl(${fmt(hue)}, 70%, ${selected ? "45%" : "60%"})`;
}

export interface ScreenPositions {
  x: number[];
  y: number[];
}

/** Data-to-screen mapping shared by the scatter renderer and lasso hit tests. */
export function scatterPositions(
  resp: QueryResponse, width: number, height: number,
): ScreenPositions {
  const [x0, x1] = extent(resp.frame.x);
  const [y0, y1] = extent(resp.frame.y);
  const sx = linearScale(x0, x1, MARGIN, width - MARGIN);
  const sy = linearScale(y0, y1, height - MARGIN, MARGIN);
  return { x: resp.frame.x.map(sx), y: resp.frame.y.map(sy) };
}

function topDegreeIds(resp: QueryResponse, count: number): Set<number> {
  const order = resp.frame.id
    .map((id, i) => [resp.frame.degree[i], id] as [number, number])
    .sort((a, b) => b[0] - a[0] || a[1] - b[1]);
  return new Set(order.slice(0, count).map(([, id]) => id));
}

export function scatterSvg(resp: QueryResponse, opts: RenderOptions = DEFAULT_OPTIONS): string {
  const { width, height, labelCount } = opts;
  const pos = scatterPositions(resp, width, height);
  const [, dMax] = extent(resp.frame.degree);
  const labelled = topDegreeIds(resp, labelCount);

  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" class="view-embedding">`,
  ];
  const n = resp.frame.id.length;
  for (let i = 0; i < n; i++) {
    const selected = resp.frame.in_selection[i];
    const r = 1.5 + 4 * Math.sqrt(dMax > 0 ? resp.frame.degree[i] / dMax : 0) + (selected ? 1.5 : 0);
    const stroke = selected ? ` stroke="#222" stroke-width="1"` : "";
    parts.push(
      `<circle cx="${fmt(pos.x[i])}" cy="${fmt(pos.y[i])}" r="${fmt(r)}" ` +
        `fill="${fill(resp.frame.hue[i], selected)}"${stroke} data-id="${resp.frame.id[i]}">` +
        `<title>${esc(resp.frame.label[i])}</title></circle>`,
    );
  }
  for (let i = 0; i < n; i++) {
    if (labelled.has(resp.frame.id[i])) {
      parts.push(
        `<text x="${fmt(pos.x[i] + 4)}" y="${fmt(pos.y[i] - 4)}" font-size="9">` +
          `${esc(resp.frame.label[i])}</text>`,
      );
    }
  }
  parts.push("</svg>");
  return parts.join("");
}

export function geoSvg(resp: QueryResponse, opts: RenderOptions = DEFAULT_OPTIONS): string {
  const { width, height } = opts;
  if (!resp.frame.lon || !resp.frame.lat) {
    return `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" class="view-geographic">` +
      `<text x="${fmt(width / 2)}" y="${fmt(height / 2)}" text-anchor="middle">no coordinates</text></svg>`;
  }
  const [lon0, lon1] = extent(resp.frame.lon);
  const [lat0, lat1] = extent(resp.frame.lat);
  const sx = linearScale(lon0, lon1, MARGIN, width - MARGIN);
  const sy = linearScale(lat0, lat1, height - MARGIN, MARGIN);

  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" class="view-geographic">`,
  ];
  for (let i = 0; i < resp.frame.id.length; i++) {
    const selected = resp.frame.in_selection[i];
    const r = 1 + 7 * resp.frame.size[i] + (selected ? 1.5 : 0);
    const stroke = selected ? ` stroke="#222" stroke-width="1"` : "";
    parts.push(
      `<circle cx="${fmt(sx(resp.frame.lon[i]))}" cy="${fmt(sy(resp.frame.lat[i]))}" ` +
        `r="${fmt(r)}" fill="${fill(resp.frame.hue[i], selected)}"${stroke} ` +
        `data-id="${resp.frame.id[i]}"><title>${esc(resp.frame.label[i])}</title></circle>`,
    );
  }
  parts.push("</svg>");
  return parts.join("");
}

export function spectrumSvg(resp: QueryResponse, opts: RenderOptions = DEFAULT_OPTIONS): string {
  const { width, height } = opts;
  const mu = resp.mu_sequence;
  const w = mu.length;
  const plotW = width - 2 * MARGIN;
  const plotH = height - 2 * MARGIN;
  const barW = plotW / w;

  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" class="view-spectrum">`,
  ];
  for (let k = 0; k < w; k++) {
    const h = mu[k] * plotH;
    const highlight = k < resp.transition_index ? "#4477cc" : "#bbc4d0";
    parts.push(
      `<rect x="${fmt(MARGIN + k * barW)}" y="${fmt(MARGIN + plotH - h)}" ` +
        `width="${fmt(Math.max(barW - 1, 0.5))}" height="${fmt(h)}" fill="${highlight}">` +
        `<title>mu_${k + 1} = ${mu[k].toFixed(4)}</title></rect>`,
    );
  }
  // Shannon number marker: dashed line at K on the index axis (1-based bars).
  const kx = MARGIN + Math.min(Math.max(resp.K, 0), w) * barW;
  parts.push(
    `<line x1="${fmt(kx)}" y1="${fmt(MARGIN)}" x2="${fmt(kx)}" y2="${fmt(MARGIN + plotH)}" ` +
      `stroke="#333" stroke-dasharray="4 3"/>`,
  );
  parts.push(
    `<text x="${fmt(kx + 4)}" y="${fmt(MARGIN + 10)}" font-size="10">K=${resp.K.toFixed(2)}</text>`,
  );
  parts.push(
    `<text x="${fmt(MARGIN)}" y="${fmt(height - 6)}" font-size="10">` +
      `transition k*=${resp.transition_index}${resp.transition_detected ? "" : " (none detected)"}</text>`,
  );
  parts.push("</svg>");
  return parts.join("");
}

/** Render the view named by the state; used by the shell and the replay tests. */
export function renderView(
  view: "embedding" | "geographic" | "spectrum",
  resp: QueryResponse,
  opts: RenderOptions = DEFAULT_OPTIONS,
): string {
  if (view === "embedding") return scatterSvg(resp, opts);
  if (view === "geographic") return geoSvg(resp, opts);
  return spectrumSvg(resp, opts);
}
