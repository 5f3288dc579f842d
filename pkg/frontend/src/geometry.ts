/** Small planar geometry helpers used by the views and their tests. */

export type Point = [number, number];

/**
 * Relative residual of the best orthogonal alignment (rotations and
 * reflections) mapping point set `a` onto `b`.
 *
 * Closed form for the 2-D orthogonal Procrustes problem: with m = a^T b, the
 * optimal objective is the nuclear norm of m, and for a 2x2 matrix
 * ||m||_* = sqrt(||m||_F^2 + 2 |det m|).
 */
export function procrustesResidual(a: Point[], b: Point[]): number {
  if (a.length !== b.length || a.length === 0) {
    throw new Error("point sets must be nonempty and equally sized");
  }
  let m00 = 0, m01 = 0, m10 = 0, m11 = 0;
  let na = 0, nb = 0;
  for (let i = 0; i < a.length; i++) {
    const [ax, ay] = a[i];
    const [bx, by] = b[i];
    m00 += ax * bx;
    m01 += ax * by;
    m10 += ay * bx;
    m11 += ay * by;
    na += ax * ax + ay * ay;
    nb += bx * bx + by * by;
  }
  if (nb === 0) {
    return na === 0 ? 0 : Infinity;
  }
  const frob2 = m00 * m00 + m01 * m01 + m10 * m10 + m11 * m11;
  const det = m00 * m11 - m01 * m10;
  const nuclear = Math.sqrt(frob2 + 2 * Math.abs(det));
  const r2 = Math.max(na + nb - 2 * nuclear, 0);
  return Math.sqrt(r2) / Math.sqrt(nb);
}

/** Ray-casting point-in-polygon test; the polygon is implicitly closed. */
export function pointInPolygon(point: Point, polygon: Point[]): boolean {
  const [px, py] = point;
  let inside = false;
  for (let i = 0, j = polygon.length - 1; i < polygon.length; j = i++) {
    const [xi, yi] = polygon[i];
    const [xj, yj] = polygon[j];
    const crosses = yi > py !== yj > py &&
      px < ((xj - xi) * (py - yi)) / (yj - yi) + xi;
    if (crosses) {
      inside = !inside;
    }
  }
  return inside;
}

/** Linear scale mapping [d0, d1] onto [r0, r1]; constant ranges map to the middle. */
export function linearScale(
  d0: number, d1: number, r0: number, r1: number,
): (v: number) => number {
  const span = d1 - d0;
  if (span === 0) {
    const mid = (r0 + r1) / 2;
    return () => mid;
  }
  return (v: number) => r0 + ((v - d0) / span) * (r1 - r0);
}

export function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return [lo, hi];
}
