/**
 * Acceptance tests against a live moealab server (started by the global
 * setup): slider replay equality, table-cell pass-through, and the
 * no-rerun guarantee when switching indicator or control column.
 */
import { beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { buildTableViewModel } from "../src/expview.js";
import { SnapshotStore } from "../src/snapshots.js";
import { BASE_URL } from "./server-setup.js";

async function waitForRun(client: ApiClient, id: string): Promise<void> {
  for (let i = 0; i < 600; i += 1) {
    const doc = await client.getRun(id);
    if (doc.status === "finished") return;
    if (doc.status === "failed") throw new Error(doc.error ?? "run failed");
    await new Promise((resolve) => setTimeout(resolve, 50));
  }
  throw new Error("run did not finish in time");
}

async function waitForExperiment(client: ApiClient, id: string): Promise<void> {
  for (let i = 0; i < 1200; i += 1) {
    const doc = await client.getProgress(id);
    if (doc.status === "finished") return;
    if (doc.status === "failed") throw new Error(doc.error ?? "experiment failed");
    await new Promise((resolve) => setTimeout(resolve, 50));
  }
  throw new Error("experiment did not finish in time");
}

describe("test view against a live server", () => {
  const client = new ApiClient(BASE_URL);
  let runId = "";
  let generations = 0;

  beforeAll(async () => {
    const { id } = await client.startRun({
      algorithm: "NSGAII",
      problem: "ZDT1",
      n: 10,
      d: 6,
      max_evaluations: 200,
      seed: 11,
    });
    runId = id;
    await waitForRun(client, id);
    generations = (await client.getRun(id)).generations;
  });

  it("replays every generation through the slider cache with values equal to the snapshot endpoint", async () => {
    const store = new SnapshotStore(client);
    const replayed = await store.replayAll(runId, generations);
    expect(replayed).toHaveLength(generations);
    const fresh = new ApiClient(BASE_URL);
    for (let index = 0; index < generations; index += 1) {
      const direct = await fresh.getSnapshot(runId, index);
      expect(replayed[index].generation).toBe(direct.generation);
      expect(replayed[index].evaluations).toBe(direct.evaluations);
      expect(replayed[index].objectives).toEqual(direct.objectives);
      expect(replayed[index].indicators).toEqual(direct.indicators);
    }
    // scrubbing back through cached generations must not refetch
    const getsBefore = client.stats.gets;
    await store.get(runId, 0);
    await store.get(runId, generations - 1);
    expect(client.stats.gets).toBe(getsBefore);
  });

  it("serves the event stream with one event per generation", async () => {
    const seen: number[] = [];
    const events = client.readEvents(runId, 30);
    for (;;) {
      const step = await events.next();
      if (step.done) {
        expect(step.value).toBe("finished");
        break;
      }
      seen.push(step.value);
    }
    expect(seen).toEqual([...Array(generations).keys()]);
  });

  it("exposes an indicator trajectory with one value per snapshot", async () => {
    const doc = await client.getTrajectory(runId, "IGD");
    expect(doc.values).toHaveLength(generations);
    const last = await client.getSnapshot(runId, "latest");
    expect(doc.values[generations - 1]).toBe(last.indicators.IGD);
  });

  it("reports field-level validation errors", async () => {
    await expect(
      client.startRun({ algorithm: "NOPE", problem: "ZDT1" }),
    ).rejects.toThrow(/algorithm/);
  });

  it("drives the parameter panel from registry metadata", async () => {
    const registry = await client.getRegistry();
    const moead = registry.algorithms.find((a) => a.name === "MOEAD")!;
    const ibea = registry.algorithms.find((a) => a.name === "IBEA")!;
    expect(moead.params.map((p) => p.name)).toContain("T");
    expect(moead.params.map((p) => p.name)).not.toContain("kappa");
    expect(ibea.params.map((p) => p.name)).toContain("kappa");
    const eareal = registry.operators.find((o) => o.name === "EAreal")!;
    expect(eareal.params.map((p) => p.default)).toEqual([1, 15, 1, 15]);
    for (const entry of [moead, ibea, eareal]) {
      for (const param of entry.params) expect(param.help.length).toBeGreaterThan(0);
    }
  });
});

describe("experiment view against a live server", () => {
  const client = new ApiClient(BASE_URL);
  let experimentId = "";

  beforeAll(async () => {
    const { id } = await client.submitExperiment({
      algorithms: [{ algorithm: "NSGAII" }, { algorithm: "IBEA" }],
      problems: [{ problem: "ZDT1", d: 6, n: 8, max_evaluations: 80 }],
      runs: 3,
      indicators: ["IGD", "HV"],
      pf_size: 200,
    });
    experimentId = id;
    await waitForExperiment(client, id);
  });

  it("renders table cells exactly as the server formats them", async () => {
    const doc = await client.getTable(experimentId, "IGD", 0);
    const model = buildTableViewModel(doc);
    expect(model.header).toEqual(["Problem", "M", "D", "NSGAII", "IBEA"]);
    for (let i = 0; i < doc.rows.length; i += 1) {
      for (let j = 0; j < doc.columns.length; j += 1) {
        expect(model.body[i][3 + j]).toBe(doc.cells[i][j].text);
        expect(model.body[i][3 + j]).toMatch(/^\d\.\d{4}e[+-]\d+ \(\d\.\d{2}e[+-]\d+\)/);
      }
    }
    expect(model.footer[0]).toBe("+/-/≈");
  });

  it("switches indicator and control column without any cell reruns", async () => {
    const before = await client.getProgress(experimentId);
    const postsBefore = client.stats.posts;

    const igd = await client.getTable(experimentId, "IGD", 0);
    const hv = await client.getTable(experimentId, "HV", 0);
    const flipped = await client.getTable(experimentId, "IGD", 1);

    expect(client.stats.posts).toBe(postsBefore); // no new submissions
    const after = await client.getProgress(experimentId);
    expect(after.completed).toBe(before.completed);
    expect(after.total).toBe(before.total);

    expect(igd.direction).toBe("minimize");
    expect(hv.direction).toBe("maximize");
    expect(flipped.control_index).toBe(1);
    // sign flips with the control column on the exact path
    const flip: Record<string, string> = { "+": "-", "-": "+", "≈": "≈", "": "" };
    for (let i = 0; i < igd.rows.length; i += 1) {
      expect(flipped.cells[i][0].sign).toBe(flip[igd.cells[i][1].sign]);
    }
  });

  it("downloads exports that match the export endpoint bytes", async () => {
    const tex = await client.exportTable(experimentId, "IGD", "latex", 0);
    expect(tex.startsWith("\\begin{tabular}")).toBe(true);
    const csv = await client.exportTable(experimentId, "IGD", "csv", 0);
    expect(csv.split("\n")[0]).toContain("NSGAII mean");
  });
});
