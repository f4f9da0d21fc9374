/**
 * View state serialized in the URL hash, so any view can be reconstructed
 * from the address alone (shareable / reload-safe).
 *
 *   #/test?run=run-3&gen=12&indicator=IGD
 *   #/experiment?id=experiment-1&indicator=HV&control=0
 */

export interface TestViewState {
  view: "test";
  runId?: string;
  generation?: number;
  indicator: string;
}

export interface ExperimentViewState {
  view: "experiment";
  experimentId?: string;
  indicator: string;
  control?: number;
}

export type ViewState = TestViewState | ExperimentViewState;

export const DEFAULT_STATE: ViewState = { view: "test", indicator: "IGD" };

export function encodeState(state: ViewState): string {
  const params = new URLSearchParams();
  if (state.view === "test") {
    if (state.runId !== undefined) params.set("run", state.runId);
    if (state.generation !== undefined) params.set("gen", String(state.generation));
    params.set("indicator", state.indicator);
    return `#/test?${params.toString()}`;
  }
  if (state.experimentId !== undefined) params.set("id", state.experimentId);
  params.set("indicator", state.indicator);
  if (state.control !== undefined) params.set("control", String(state.control));
  return `#/experiment?${params.toString()}`;
}

export function decodeState(hash: string): ViewState {
  const stripped = hash.startsWith("#") ? hash.slice(1) : hash;
  const [path, query = ""] = stripped.split("?", 2);
  const params = new URLSearchParams(query);
  const indicator = params.get("indicator") ?? "IGD";
  if (path === "/experiment") {
    const control = params.get("control");
    return {
      view: "experiment",
      experimentId: params.get("id") ?? undefined,
      indicator,
      control: control === null ? undefined : Number(control),
    };
  }
  const gen = params.get("gen");
  return {
    view: "test",
    runId: params.get("run") ?? undefined,
    generation: gen === null ? undefined : Number(gen),
    indicator,
  };
}
