/**
 * Typed client for the moealab server API.
 *
 * Every number the UI displays comes out of these responses; the client
 * never recomputes statistics or indicator values. Request counters are
 * kept so tests can assert that view changes (indicator switch, control
 * column change) trigger no new run submissions.
 */

export interface RunRequest {
  algorithm: string;
  problem: string;
  operator?: string;
  n?: number;
  m?: number;
  d?: number;
  max_evaluations?: number;
  seed?: number;
  function_params?: Record<string, number[]>;
}

export interface RunBrief {
  id: string;
  status: string;
  algorithm: string;
  problem: string;
  n: number;
  m: number;
  generations: number;
  evaluations: number;
  error?: string | null;
}

export interface RunDetail extends RunBrief {
  config: {
    algorithm: string;
    problem: string;
    operator: string;
    n: number;
    m: number;
    d: number;
    max_evaluations: number;
    seed: number;
    function_params: Record<string, number[]>;
  };
}

export interface SnapshotDoc {
  run_id: string;
  index: number;
  generation: number;
  evaluations: number;
  objectives: number[][];
  decisions: number[][];
  indicators: Record<string, number>;
}

export interface TrajectoryDoc {
  indicator: string;
  values: number[];
  generations: number[];
}

export interface ParameterMeta {
  name: string;
  default: number;
  help: string;
}

export interface RegistryEntry {
  name: string;
  description: string;
  labels: string[];
  params: ParameterMeta[];
  default_operator?: string | null;
  encoding?: string | null;
  direction?: string | null;
}

export interface RegistryDoc {
  algorithms: RegistryEntry[];
  problems: RegistryEntry[];
  operators: RegistryEntry[];
  indicators: RegistryEntry[];
}

export interface PfDoc {
  problem: string;
  m: number;
  points: number[][];
}

export interface ExperimentRequest {
  algorithms: { algorithm: string; operator?: string; label?: string }[];
  problems: { problem: string; m?: number; d?: number; n?: number; max_evaluations?: number }[];
  runs: number;
  indicators?: string[];
  parallelism?: number;
  base_seed?: number;
  pf_size?: number;
  folder?: string;
}

export interface ProgressDoc {
  id: string;
  status: string;
  completed: number;
  total: number;
  error?: string | null;
}

export interface TableCellDoc {
  mean: number | null;
  std: number | null;
  sign: string;
  is_best: boolean;
  text: string;
}

export interface TableDoc {
  id: string;
  indicator: string;
  direction: string;
  columns: string[];
  control_index: number;
  rows: { problem: string; m: number; d: number; n: number; max_evaluations: number }[];
  cells: TableCellDoc[][];
  footer: (string | null)[];
}

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

export class ApiClient {
  /** Counters for tests and the UI's activity hint. */
  readonly stats = { gets: 0, posts: 0 };

  constructor(readonly baseUrl: string = "") {}

  private async request<T>(method: "GET" | "POST", path: string, body?: unknown): Promise<T> {
    if (method === "GET") this.stats.gets += 1;
    else this.stats.posts += 1;
    const response = await fetch(this.baseUrl + path, {
      method,
      headers: body === undefined ? undefined : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      const text = await response.text();
      throw new ApiError(response.status, `${method} ${path} -> ${response.status}: ${text}`);
    }
    return (await response.json()) as T;
  }

  getRegistry(): Promise<RegistryDoc> {
    return this.request("GET", "/api/registry");
  }

  getParetoFront(problem: string, m?: number, count = 1000): Promise<PfDoc> {
    const params = new URLSearchParams({ count: String(count) });
    if (m !== undefined) params.set("m", String(m));
    return this.request("GET", `/api/problems/${encodeURIComponent(problem)}/pf?${params}`);
  }

  startRun(request: RunRequest): Promise<{ id: string; status: string }> {
    return this.request("POST", "/api/runs", request);
  }

  listRuns(): Promise<{ runs: RunBrief[] }> {
    return this.request("GET", "/api/runs");
  }

  getRun(id: string): Promise<RunDetail> {
    return this.request("GET", `/api/runs/${encodeURIComponent(id)}`);
  }

  getSnapshot(id: string, generation: number | "latest"): Promise<SnapshotDoc> {
    return this.request("GET", `/api/runs/${encodeURIComponent(id)}/snapshots/${generation}`);
  }

  getTrajectory(id: string, indicator: string): Promise<TrajectoryDoc> {
    const params = new URLSearchParams({ indicator });
    return this.request("GET", `/api/runs/${encodeURIComponent(id)}/trajectory?${params}`);
  }

  /**
   * Read the per-generation event stream of a run. Yields snapshot indices
   * as the server announces them and stops on the final status event.
   */
  async *readEvents(id: string, timeoutSeconds = 60): AsyncGenerator<number, string> {
    this.stats.gets += 1;
    const response = await fetch(
      `${this.baseUrl}/api/runs/${encodeURIComponent(id)}/events?timeout=${timeoutSeconds}`,
    );
    if (!response.ok || response.body === null) {
      throw new ApiError(response.status, `event stream for ${id} failed`);
    }
    const reader = response.body.getReader();
    const decoder = new TextDecoder();
    let buffer = "";
    let status = "unknown";
    for (;;) {
      const { done, value } = await reader.read();
      if (value) buffer += decoder.decode(value, { stream: true });
      const events = buffer.split("\n\n");
      buffer = events.pop() ?? "";
      for (const chunk of events) {
        const lines = chunk.split("\n");
        const isStatus = lines.some((l) => l === "event: status");
        const data = lines.find((l) => l.startsWith("data: "))?.slice(6) ?? "";
        if (isStatus) {
          status = data;
          return status;
        }
        if (data !== "") yield Number(data);
      }
      if (done) return status;
    }
  }

  submitExperiment(request: ExperimentRequest): Promise<{ id: string; status: string; total_cells: number }> {
    return this.request("POST", "/api/experiments", request);
  }

  getProgress(id: string): Promise<ProgressDoc> {
    return this.request("GET", `/api/experiments/${encodeURIComponent(id)}/progress`);
  }

  getTable(id: string, indicator: string, control?: number | string): Promise<TableDoc> {
    const params = new URLSearchParams({ indicator });
    if (control !== undefined) params.set("control", String(control));
    return this.request("GET", `/api/experiments/${encodeURIComponent(id)}/table?${params}`);
  }

  async exportTable(id: string, indicator: string, format: "latex" | "csv", control?: number | string): Promise<string> {
    this.stats.gets += 1;
    const params = new URLSearchParams({ indicator, format });
    if (control !== undefined) params.set("control", String(control));
    const response = await fetch(
      `${this.baseUrl}/api/experiments/${encodeURIComponent(id)}/export?${params}`,
    );
    if (!response.ok) {
      throw new ApiError(response.status, `export failed: ${await response.text()}`);
    }
    return response.text();
  }
}
