/**
 * The experiment view: grid setup (multi-select algorithms and problem
 * settings, run count), live cell progress, and the significance table.
 * Table cells render the server's formatted strings verbatim; switching
 * the indicator or the control column refetches only the table document,
 * never rerunning cells.
 */
import { ApiClient, ExperimentRequest, TableDoc } from "./api.js";
import { ExperimentViewState } from "./state.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) throw new Error(`missing element #${id}`);
  return node as T;
}

export interface TableViewModel {
  header: string[];
  body: string[][];
  bestFlags: boolean[][];
  footer: string[];
}

/** Pure: turn a server table document into display rows. Every data cell
 * is the server's `text` string untouched. */
export function buildTableViewModel(doc: TableDoc): TableViewModel {
  const header = ["Problem", "M", "D", ...doc.columns];
  const body = doc.rows.map((setting, i) => [
    setting.problem,
    String(setting.m),
    String(setting.d),
    ...doc.cells[i].map((cell) => cell.text),
  ]);
  const bestFlags = doc.rows.map((_, i) => [
    false,
    false,
    false,
    ...doc.cells[i].map((cell) => cell.is_best),
  ]);
  const footer = ["+/-/≈", "", "", ...doc.footer.map((tally) => tally ?? "")];
  return { header, body, bestFlags, footer };
}

export class ExperimentView {
  private experimentId: string | null = null;
  private pollTimer: number | null = null;

  constructor(
    private readonly client: ApiClient,
    private readonly onStateChange: (state: Partial<ExperimentViewState>) => void,
  ) {}

  async mount(state: ExperimentViewState): Promise<void> {
    const registry = await this.client.getRegistry();
    const algorithms = el<HTMLSelectElement>("exp-algorithms");
    const problems = el<HTMLSelectElement>("exp-problems");
    algorithms.replaceChildren(
      ...registry.algorithms.map((a) => new Option(a.name, a.name)),
    );
    problems.replaceChildren(
      ...registry.problems.map((p) => new Option(p.name, p.name)),
    );
    el<HTMLSelectElement>("exp-indicator").replaceChildren(
      ...registry.indicators.map((i) => new Option(i.name, i.name)),
    );
    el<HTMLSelectElement>("exp-indicator").value = state.indicator;
    el<HTMLButtonElement>("exp-start").addEventListener("click", () => {
      void this.start();
    });
    el<HTMLSelectElement>("exp-indicator").addEventListener("change", () => {
      void this.refreshTable();
    });
    el<HTMLSelectElement>("exp-control").addEventListener("change", () => {
      void this.refreshTable();
    });
    el<HTMLButtonElement>("exp-export-tex").addEventListener("click", () => {
      void this.download("latex", "table.tex");
    });
    el<HTMLButtonElement>("exp-export-csv").addEventListener("click", () => {
      void this.download("csv", "table.csv");
    });
    if (state.experimentId) {
      this.experimentId = state.experimentId;
      if (state.control !== undefined) {
        el<HTMLSelectElement>("exp-control").value = String(state.control);
      }
      this.watchProgress();
    }
  }

  private selections(select: HTMLSelectElement): string[] {
    return [...select.selectedOptions].map((o) => o.value);
  }

  private async start(): Promise<void> {
    const request: ExperimentRequest = {
      algorithms: this.selections(el("exp-algorithms")).map((algorithm) => ({ algorithm })),
      problems: this.selections(el("exp-problems")).map((problem) => ({
        problem,
        n: Number(el<HTMLInputElement>("exp-n").value),
        max_evaluations: Number(el<HTMLInputElement>("exp-fe").value),
      })),
      runs: Number(el<HTMLInputElement>("exp-runs").value),
      pf_size: 2000,
    };
    el<HTMLDivElement>("exp-error").textContent = "";
    try {
      const { id } = await this.client.submitExperiment(request);
      this.experimentId = id;
      this.onStateChange({ experimentId: id });
      this.renderControlChoices(request.algorithms.length);
      this.watchProgress();
    } catch (error) {
      el<HTMLDivElement>("exp-error").textContent = String(error);
    }
  }

  private renderControlChoices(count: number): void {
    const select = el<HTMLSelectElement>("exp-control");
    const options = [];
    for (let i = 0; i < count; i += 1) options.push(new Option(`column ${i + 1}`, String(i)));
    select.replaceChildren(...options);
    select.value = String(count - 1);
  }

  private watchProgress(): void {
    if (this.pollTimer !== null) window.clearInterval(this.pollTimer);
    const tick = async () => {
      if (this.experimentId === null) return;
      const progress = await this.client.getProgress(this.experimentId);
      const bar = el<HTMLProgressElement>("exp-progress");
      bar.max = progress.total;
      bar.value = progress.completed;
      el<HTMLSpanElement>("exp-progress-label").textContent =
        `${progress.completed}/${progress.total} cells (${progress.status})`;
      if (progress.status !== "running") {
        if (this.pollTimer !== null) window.clearInterval(this.pollTimer);
        this.pollTimer = null;
        await this.refreshTable();
      }
    };
    void tick();
    this.pollTimer = window.setInterval(() => void tick(), 500);
  }

  private async refreshTable(): Promise<void> {
    if (this.experimentId === null) return;
    const indicator = el<HTMLSelectElement>("exp-indicator").value;
    const controlRaw = el<HTMLSelectElement>("exp-control").value;
    const control = controlRaw === "" ? undefined : Number(controlRaw);
    this.onStateChange({ experimentId: this.experimentId, indicator, control });
    let doc: TableDoc;
    try {
      doc = await this.client.getTable(this.experimentId, indicator, control);
    } catch (error) {
      el<HTMLDivElement>("exp-error").textContent = String(error);
      return;
    }
    const model = buildTableViewModel(doc);
    const table = el<HTMLTableElement>("exp-table");
    table.replaceChildren();
    const headRow = document.createElement("tr");
    headRow.replaceChildren(
      ...model.header.map((text) => {
        const th = document.createElement("th");
        th.textContent = text;
        return th;
      }),
    );
    table.appendChild(headRow);
    model.body.forEach((cells, i) => {
      const row = document.createElement("tr");
      row.replaceChildren(
        ...cells.map((text, j) => {
          const td = document.createElement("td");
          td.textContent = text;
          if (model.bestFlags[i][j]) td.className = "best-cell";
          return td;
        }),
      );
      table.appendChild(row);
    });
    const footRow = document.createElement("tr");
    footRow.className = "footer-row";
    footRow.replaceChildren(
      ...model.footer.map((text) => {
        const td = document.createElement("td");
        td.textContent = text;
        return td;
      }),
    );
    table.appendChild(footRow);
  }

  private async download(format: "latex" | "csv", filename: string): Promise<void> {
    if (this.experimentId === null) return;
    const indicator = el<HTMLSelectElement>("exp-indicator").value;
    const control = el<HTMLSelectElement>("exp-control").value || undefined;
    const text = await this.client.exportTable(this.experimentId, indicator, format, control);
    const blob = new Blob([text], { type: "text/plain" });
    const link = document.createElement("a");
    link.href = URL.createObjectURL(blob);
    link.download = filename;
    link.click();
    URL.revokeObjectURL(link.href);
  }
}
