/**
 * The single-run test view, laid out in four parts: function selectors,
 * the parameter panel generated from registry metadata, the result area
 * (objective scatter with optional true-front overlay, indicator
 * trajectory, generation slider) and the session history list.
 */
import { ApiClient, RegistryDoc, RegistryEntry, RunRequest } from "./api.js";
import { drawObjectiveView, drawTrajectory } from "./charts.js";
import { SnapshotStore } from "./snapshots.js";
import { TestViewState } from "./state.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) throw new Error(`missing element #${id}`);
  return node as T;
}

function option(value: string, label?: string): HTMLOptionElement {
  const opt = document.createElement("option");
  opt.value = value;
  opt.textContent = label ?? value;
  return opt;
}

export class TestView {
  private registry: RegistryDoc | null = null;
  private readonly snapshots: SnapshotStore;
  private runId: string | null = null;
  private generation = 0;
  private generationCount = 0;
  private front: number[][] | null = null;
  private trajectory: number[] = [];
  private yaw = 0.6;
  private pitch = 0.5;
  private dragging = false;

  constructor(
    private readonly client: ApiClient,
    private readonly onStateChange: (state: Partial<TestViewState>) => void,
  ) {
    this.snapshots = new SnapshotStore(client);
  }

  async mount(state: TestViewState): Promise<void> {
    this.registry = await this.client.getRegistry();
    this.fillSelectors();
    this.bindEvents();
    await this.refreshHistory();
    if (state.runId) {
      this.runId = state.runId;
      await this.attachToRun(state.runId, state.generation);
    }
  }

  private fillSelectors(): void {
    const reg = this.registry!;
    const algorithms = el<HTMLSelectElement>("algorithm-select");
    const problems = el<HTMLSelectElement>("problem-select");
    const operators = el<HTMLSelectElement>("operator-select");
    const indicators = el<HTMLSelectElement>("indicator-select");
    algorithms.replaceChildren(...reg.algorithms.map((a) => option(a.name)));
    problems.replaceChildren(...reg.problems.map((p) => option(p.name)));
    operators.replaceChildren(
      option("", "(algorithm default)"),
      ...reg.operators.map((o) => option(o.name)),
    );
    indicators.replaceChildren(...reg.indicators.map((i) => option(i.name)));
    (algorithms.value = "NSGAII"), (problems.value = "DTLZ2");
    this.renderParameterPanel();
  }

  /** The parameter list depends on the selected algorithm, problem and
   * operator; defaults come from the registry metadata. */
  private renderParameterPanel(): void {
    const reg = this.registry!;
    const panel = el<HTMLDivElement>("parameter-panel");
    const chosen: RegistryEntry[] = [];
    const algorithm = reg.algorithms.find((a) => a.name === this.selected("algorithm-select"));
    const problem = reg.problems.find((p) => p.name === this.selected("problem-select"));
    const operatorName =
      this.selected("operator-select") || algorithm?.default_operator || "EAreal";
    const operator = reg.operators.find((o) => o.name === operatorName);
    for (const entry of [algorithm, problem, operator]) {
      if (entry && entry.params.length > 0) chosen.push(entry);
    }
    panel.replaceChildren();
    for (const entry of chosen) {
      const head = document.createElement("h4");
      head.textContent = entry.name;
      panel.appendChild(head);
      for (const param of entry.params) {
        const row = document.createElement("label");
        row.className = "param-row";
        row.title = param.help;
        const span = document.createElement("span");
        span.textContent = param.name;
        const input = document.createElement("input");
        input.type = "number";
        input.step = "any";
        input.value = String(param.default);
        input.dataset.function = entry.name;
        input.dataset.param = param.name;
        row.append(span, input);
        panel.appendChild(row);
      }
    }
  }

  private selected(id: string): string {
    return el<HTMLSelectElement>(id).value;
  }

  private collectFunctionParams(): Record<string, number[]> {
    const panel = el<HTMLDivElement>("parameter-panel");
    const byFunction: Record<string, number[]> = {};
    panel.querySelectorAll<HTMLInputElement>("input[data-function]").forEach((input) => {
      const fn = input.dataset.function!;
      (byFunction[fn] ??= []).push(Number(input.value));
    });
    return byFunction;
  }

  private bindEvents(): void {
    el<HTMLSelectElement>("algorithm-select").addEventListener("change", () =>
      this.renderParameterPanel(),
    );
    el<HTMLSelectElement>("problem-select").addEventListener("change", () =>
      this.renderParameterPanel(),
    );
    el<HTMLSelectElement>("operator-select").addEventListener("change", () =>
      this.renderParameterPanel(),
    );
    el<HTMLButtonElement>("start-button").addEventListener("click", () => {
      void this.startRun();
    });
    el<HTMLInputElement>("generation-slider").addEventListener("input", (event) => {
      const index = Number((event.target as HTMLInputElement).value);
      void this.showGeneration(index);
    });
    el<HTMLSelectElement>("indicator-select").addEventListener("change", () => {
      void this.refreshTrajectory();
    });
    el<HTMLInputElement>("front-overlay").addEventListener("change", () => {
      void this.refreshScatter();
    });
    const canvas = el<HTMLCanvasElement>("objective-canvas");
    canvas.addEventListener("mousedown", () => (this.dragging = true));
    window.addEventListener("mouseup", () => (this.dragging = false));
    canvas.addEventListener("mousemove", (event) => {
      if (!this.dragging) return;
      this.yaw += event.movementX * 0.01;
      this.pitch += event.movementY * 0.01;
      void this.refreshScatter();
    });
  }

  private setFieldError(message: string | null): void {
    el<HTMLDivElement>("run-error").textContent = message ?? "";
  }

  private async startRun(): Promise<void> {
    this.setFieldError(null);
    const request: RunRequest = {
      algorithm: this.selected("algorithm-select"),
      problem: this.selected("problem-select"),
      n: Number(el<HTMLInputElement>("n-input").value),
      max_evaluations: Number(el<HTMLInputElement>("fe-input").value),
      seed: Number(el<HTMLInputElement>("seed-input").value),
      function_params: this.collectFunctionParams(),
    };
    const operator = this.selected("operator-select");
    if (operator) request.operator = operator;
    const m = el<HTMLInputElement>("m-input").value;
    const d = el<HTMLInputElement>("d-input").value;
    if (m) request.m = Number(m);
    if (d) request.d = Number(d);
    try {
      const { id } = await this.client.startRun(request);
      this.runId = id;
      this.onStateChange({ runId: id, generation: undefined });
      await this.followLiveRun(id);
    } catch (error) {
      this.setFieldError(String(error));
    }
  }

  /** Live mode: consume the event stream, fetching only the newest
   * snapshot each time the server announces one. */
  private async followLiveRun(id: string): Promise<void> {
    await this.loadFront();
    const events = this.client.readEvents(id, 120);
    for (;;) {
      const step = await events.next();
      if (step.done) break;
      this.generationCount = step.value + 1;
      this.generation = step.value;
      this.updateSlider();
      await this.showGeneration(step.value, { updateUrl: false });
    }
    await this.attachToRun(id, this.generation);
    await this.refreshHistory();
  }

  private async attachToRun(id: string, generation?: number): Promise<void> {
    const detail = await this.client.getRun(id);
    this.generationCount = detail.generations;
    await this.loadFront(detail.config.problem, detail.config.m, detail.config.d);
    this.updateSlider();
    await this.refreshTrajectory();
    const index = generation ?? detail.generations - 1;
    await this.showGeneration(Math.max(0, Math.min(index, detail.generations - 1)));
  }

  private async loadFront(problem?: string, m?: number, d?: number): Promise<void> {
    const name = problem ?? this.selected("problem-select");
    try {
      const doc = await this.client.getParetoFront(name, m, 500);
      this.front = doc.points;
    } catch {
      this.front = null;
    }
  }

  private updateSlider(): void {
    const slider = el<HTMLInputElement>("generation-slider");
    slider.max = String(Math.max(0, this.generationCount - 1));
    slider.value = String(this.generation);
    el<HTMLSpanElement>("generation-label").textContent =
      `${this.generation} / ${Math.max(0, this.generationCount - 1)}`;
  }

  private async showGeneration(index: number, opts = { updateUrl: true }): Promise<void> {
    if (this.runId === null) return;
    this.generation = index;
    this.updateSlider();
    const snapshot = await this.snapshots.get(this.runId, index);
    el<HTMLSpanElement>("fe-label").textContent = String(snapshot.evaluations);
    const indicator = this.selected("indicator-select");
    const shown = snapshot.indicators[indicator];
    el<HTMLSpanElement>("indicator-label").textContent =
      shown === undefined ? "-" : shown.toExponential(4);
    await this.refreshScatter(snapshot.objectives);
    drawTrajectory(el<HTMLCanvasElement>("trajectory-canvas"), this.trajectory, index);
    if (opts.updateUrl) this.onStateChange({ runId: this.runId, generation: index });
  }

  private async refreshScatter(objectives?: number[][]): Promise<void> {
    if (this.runId === null) return;
    const points =
      objectives ?? (await this.snapshots.get(this.runId, this.generation)).objectives;
    const overlay = el<HTMLInputElement>("front-overlay").checked ? this.front ?? undefined : undefined;
    drawObjectiveView(el<HTMLCanvasElement>("objective-canvas"), {
      population: points,
      front: overlay,
      yaw: this.yaw,
      pitch: this.pitch,
    });
  }

  private async refreshTrajectory(): Promise<void> {
    if (this.runId === null) return;
    const indicator = this.selected("indicator-select");
    const doc = await this.client.getTrajectory(this.runId, indicator);
    this.trajectory = doc.values;
    drawTrajectory(el<HTMLCanvasElement>("trajectory-canvas"), doc.values, this.generation);
  }

  private async refreshHistory(): Promise<void> {
    const { runs } = await this.client.listRuns();
    const list = el<HTMLUListElement>("history-list");
    list.replaceChildren(
      ...runs.map((run) => {
        const item = document.createElement("li");
        const link = document.createElement("a");
        link.href = "#";
        link.textContent =
          `${run.id}: ${run.algorithm} on ${run.problem} ` +
          `(${run.status}, ${run.generations} generations)`;
        link.addEventListener("click", (event) => {
          event.preventDefault();
          this.runId = run.id;
          this.onStateChange({ runId: run.id, generation: undefined });
          void this.attachToRun(run.id);
        });
        item.appendChild(link);
        return item;
      }),
    );
  }
}
