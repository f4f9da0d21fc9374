/** Canvas rendering for the result panel: scatters, parallel coordinates
 * and the indicator trajectory chart. */
import {
  Extent,
  extentOf,
  normalize,
  parallelPolyline,
  project3d,
  toPixels,
  viewModeFor,
} from "./geometry.js";

export interface ScatterOptions {
  population: number[][];
  front?: number[][];
  yaw: number;
  pitch: number;
}

const POPULATION_COLOR = "#1f77b4";
const FRONT_COLOR = "#bbbbbb";

export function drawObjectiveView(canvas: HTMLCanvasElement, options: ScatterOptions): void {
  const ctx = canvas.getContext("2d");
  if (ctx === null) return;
  const { width, height } = canvas;
  ctx.clearRect(0, 0, width, height);
  const sets = [options.population, options.front ?? []];
  if (options.population.length === 0) return;
  const mode = viewModeFor(options.population[0].length);
  const extent = extentOf(sets);
  if (mode === "parallel") {
    drawParallel(ctx, width, height, options, extent);
    return;
  }
  const place = (p: number[]): [number, number] => {
    const unit = normalize(p, extent);
    const flat: [number, number] =
      mode === "3d" ? project3d(unit, options.yaw, options.pitch) : [unit[0], unit[1]];
    return toPixels(flat, width, height);
  };
  if (options.front) {
    ctx.fillStyle = FRONT_COLOR;
    for (const p of options.front) {
      const [x, y] = place(p);
      ctx.fillRect(x - 1, y - 1, 2, 2);
    }
  }
  ctx.fillStyle = POPULATION_COLOR;
  for (const p of options.population) {
    const [x, y] = place(p);
    ctx.beginPath();
    ctx.arc(x, y, 3, 0, 2 * Math.PI);
    ctx.fill();
  }
}

function drawParallel(
  ctx: CanvasRenderingContext2D,
  width: number,
  height: number,
  options: ScatterOptions,
  extent: Extent,
): void {
  const axes = options.population[0].length;
  ctx.strokeStyle = "#dddddd";
  for (let k = 0; k < axes; k += 1) {
    const [x0, y0] = toPixels([axes === 1 ? 0.5 : k / (axes - 1), 0], width, height);
    const [x1, y1] = toPixels([axes === 1 ? 0.5 : k / (axes - 1), 1], width, height);
    ctx.beginPath();
    ctx.moveTo(x0, y0);
    ctx.lineTo(x1, y1);
    ctx.stroke();
  }
  const drawSet = (points: number[][], color: string, alpha: number) => {
    ctx.strokeStyle = color;
    ctx.globalAlpha = alpha;
    for (const p of points) {
      const line = parallelPolyline(normalize(p, extent));
      ctx.beginPath();
      line.forEach(([ux, uy], i) => {
        const [x, y] = toPixels([ux, uy], width, height);
        if (i === 0) ctx.moveTo(x, y);
        else ctx.lineTo(x, y);
      });
      ctx.stroke();
    }
    ctx.globalAlpha = 1;
  };
  if (options.front) drawSet(options.front, FRONT_COLOR, 0.25);
  drawSet(options.population, POPULATION_COLOR, 0.6);
}

export function drawTrajectory(
  canvas: HTMLCanvasElement,
  values: number[],
  marker?: number,
): void {
  const ctx = canvas.getContext("2d");
  if (ctx === null) return;
  const { width, height } = canvas;
  ctx.clearRect(0, 0, width, height);
  if (values.length === 0) return;
  const finite = values.filter((v) => Number.isFinite(v));
  const lo = Math.min(...finite);
  const hi = Math.max(...finite);
  const span = hi > lo ? hi - lo : 1;
  const place = (i: number, v: number): [number, number] =>
    toPixels(
      [values.length === 1 ? 0.5 : i / (values.length - 1), (v - lo) / span],
      width,
      height,
      16,
    );
  ctx.strokeStyle = POPULATION_COLOR;
  ctx.beginPath();
  values.forEach((v, i) => {
    const [x, y] = place(i, v);
    if (i === 0) ctx.moveTo(x, y);
    else ctx.lineTo(x, y);
  });
  ctx.stroke();
  if (marker !== undefined && marker >= 0 && marker < values.length) {
    const [x, y] = place(marker, values[marker]);
    ctx.fillStyle = "#d62728";
    ctx.beginPath();
    ctx.arc(x, y, 4, 0, 2 * Math.PI);
    ctx.fill();
  }
}
