/**
 * Pure plotting geometry: view-mode selection, axis scaling, orthographic
 * 3-D rotation and parallel-coordinates polylines. Rendering only; all
 * numbers plotted are server values.
 */

export type ViewMode = "2d" | "3d" | "parallel";

export function viewModeFor(objectives: number): ViewMode {
  if (objectives <= 2) return "2d";
  if (objectives === 3) return "3d";
  return "parallel";
}

export interface Extent {
  min: number[];
  max: number[];
}

export function extentOf(sets: number[][][]): Extent {
  const dims = sets.find((s) => s.length > 0)?.[0].length ?? 0;
  const min = new Array(dims).fill(Number.POSITIVE_INFINITY);
  const max = new Array(dims).fill(Number.NEGATIVE_INFINITY);
  for (const points of sets) {
    for (const p of points) {
      for (let k = 0; k < dims; k += 1) {
        if (p[k] < min[k]) min[k] = p[k];
        if (p[k] > max[k]) max[k] = p[k];
      }
    }
  }
  for (let k = 0; k < dims; k += 1) {
    if (!(max[k] > min[k])) max[k] = min[k] + 1;
  }
  return { min, max };
}

export function normalize(point: number[], extent: Extent): number[] {
  return point.map((v, k) => (v - extent.min[k]) / (extent.max[k] - extent.min[k]));
}

/** Map a unit-square point to canvas pixels, y flipped, with padding. */
export function toPixels(
  unit: [number, number],
  width: number,
  height: number,
  padding = 24,
): [number, number] {
  const x = padding + unit[0] * (width - 2 * padding);
  const y = height - padding - unit[1] * (height - 2 * padding);
  return [x, y];
}

/**
 * Orthographic projection of a unit-cube point after yaw (around the
 * vertical axis) and pitch (around the screen's horizontal axis).
 */
export function project3d(point: number[], yaw: number, pitch: number): [number, number] {
  const [x, y, z] = [point[0] - 0.5, point[1] - 0.5, point[2] - 0.5];
  const cy = Math.cos(yaw);
  const sy = Math.sin(yaw);
  const cx = Math.cos(pitch);
  const sx = Math.sin(pitch);
  const rx = cy * x + sy * y;
  const ry = -sy * x + cy * y;
  const screenX = rx;
  const screenY = cx * z - sx * ry;
  return [screenX + 0.5, screenY + 0.5];
}

/** Polyline through one vertical axis per objective, all in unit space. */
export function parallelPolyline(unitPoint: number[]): [number, number][] {
  const m = unitPoint.length;
  return unitPoint.map((v, k) => [m === 1 ? 0.5 : k / (m - 1), v]);
}
