/** Thin fetch client for the calibration REST endpoints. */

import { parseSnapshot, Snapshot } from "./types";

export class ApiError extends Error {
  constructor(
    message: string,
    public readonly status: number,
  ) {
    super(message);
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

async function fail(res: Response): Promise<never> {
  let detail = res.statusText;
  try {
    const body = (await res.json()) as { detail?: string };
    if (body.detail) detail = body.detail;
  } catch {
    // non-JSON error body; keep the status text
  }
  throw new ApiError(detail, res.status);
}

export class ApiClient {
  constructor(
    private readonly base: string = "",
    private readonly fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  private async json<T>(path: string, init?: RequestInit): Promise<T> {
    const res = await this.fetchImpl(this.base + path, init);
    if (!res.ok) await fail(res);
    return (await res.json()) as T;
  }

  private post(path: string, payload: unknown): Promise<unknown> {
    return this.json(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  async state(): Promise<Snapshot> {
    return parseSnapshot(await this.json("/api/state"));
  }

  async setActuator(index: number, value: number): Promise<Snapshot> {
    return parseSnapshot(await this.post("/api/actuator", { index, value }));
  }

  async select(semantic: string, intensity: number): Promise<Snapshot> {
    return parseSnapshot(await this.post("/api/select", { semantic, intensity }));
  }

  async saveAnchor(): Promise<Snapshot> {
    return parseSnapshot(await this.post("/api/anchor", {}));
  }

  /** Actuators the draft profile commands for the selected semantic and
   * intensity (or an explicit coefficient vector). */
  async preview(body: {
    coefficients?: number[];
    semantic?: string;
    intensity?: number;
  }): Promise<number[]> {
    const out = (await this.post("/api/preview", body)) as { actuators: number[] };
    return out.actuators;
  }

  async exportProfile(): Promise<string> {
    const res = await this.fetchImpl(this.base + "/api/profile/export");
    if (!res.ok) await fail(res);
    return res.text();
  }
}
