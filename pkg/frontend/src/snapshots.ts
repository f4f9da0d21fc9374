/**
 * Snapshot access for the generation slider: fetch on demand through an
 * LRU cache (50 entries) so scrubbing back and forth does not refetch, and
 * live runs only ever pull the newest generation announced by the event
 * stream.
 */
import { ApiClient, SnapshotDoc } from "./api.js";
import { LruCache } from "./lru.js";

export const SNAPSHOT_CACHE_SIZE = 50;

export class SnapshotStore {
  private readonly cache = new LruCache<string, SnapshotDoc>(SNAPSHOT_CACHE_SIZE);

  constructor(private readonly client: ApiClient) {}

  async get(runId: string, index: number): Promise<SnapshotDoc> {
    const key = `${runId}:${index}`;
    const hit = this.cache.get(key);
    if (hit !== undefined) return hit;
    const doc = await this.client.getSnapshot(runId, index);
    this.cache.set(key, doc);
    return doc;
  }

  /** Replay every generation in order (the slider's data path). */
  async replayAll(runId: string, count: number): Promise<SnapshotDoc[]> {
    const out: SnapshotDoc[] = [];
    for (let index = 0; index < count; index += 1) {
      out.push(await this.get(runId, index));
    }
    return out;
  }
}
