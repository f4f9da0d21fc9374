/** Entry point: hash-based routing between the test and experiment views,
 * with all view state kept in the URL. */
import { ApiClient } from "./api.js";
import { ExperimentView } from "./expview.js";
import { decodeState, encodeState, ViewState } from "./state.js";
import { TestView } from "./testview.js";

const client = new ApiClient("");

function currentState(): ViewState {
  return decodeState(window.location.hash || "#/test?indicator=IGD");
}

function pushState(state: ViewState): void {
  const encoded = encodeState(state);
  if (window.location.hash !== encoded) {
    history.replaceState(null, "", encoded);
  }
}

function showPanel(view: "test" | "experiment"): void {
  document.getElementById("test-view")!.hidden = view !== "test";
  document.getElementById("experiment-view")!.hidden = view !== "experiment";
  document.querySelectorAll<HTMLAnchorElement>("nav a").forEach((a) => {
    a.classList.toggle("active", a.dataset.view === view);
  });
}

async function boot(): Promise<void> {
  const state = currentState();
  showPanel(state.view);

  const testView = new TestView(client, (partial) => {
    const merged = { ...currentState(), ...partial, view: "test" as const };
    pushState(merged as ViewState);
  });
  const experimentView = new ExperimentView(client, (partial) => {
    const merged = { ...currentState(), ...partial, view: "experiment" as const };
    pushState(merged as ViewState);
  });

  document.querySelectorAll<HTMLAnchorElement>("nav a").forEach((a) => {
    a.addEventListener("click", (event) => {
      event.preventDefault();
      const view = a.dataset.view as "test" | "experiment";
      const indicator = currentState().indicator;
      pushState(view === "test" ? { view, indicator } : { view, indicator });
      showPanel(view);
    });
  });

  await testView.mount(state.view === "test" ? state : { view: "test", indicator: "IGD" });
  await experimentView.mount(
    state.view === "experiment" ? state : { view: "experiment", indicator: "IGD" },
  );
}

void boot();
