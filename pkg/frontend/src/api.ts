// Thin typed client for the engine API.  All verdicts come from here; the
// UI never re-derives consonance or successor admissibility locally.

import type {
  CheckReportDoc,
  ScaleSpec,
  ScoreDoc,
  SuccessorsResponse,
  ValidateResponse,
  WorldInfo,
  WorldSelector,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class EngineError extends Error {
  constructor(
    readonly status: number,
    readonly reason: string,
    detail: string,
  ) {
    super(`${reason}: ${detail}`);
  }
}

export class EngineUnreachableError extends Error {}

export class EngineClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  private async request(method: string, path: string, body?: unknown): Promise<Response> {
    let response: Response;
    try {
      response = await this.fetchImpl(this.baseUrl + path, {
        method,
        headers: body === undefined ? undefined : { "Content-Type": "application/json" },
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch (err) {
      throw new EngineUnreachableError(String(err));
    }
    if (!response.ok) {
      let reason = `HTTP ${response.status}`;
      let detail = "";
      try {
        const doc = await response.json();
        reason = typeof doc.error === "string" ? doc.error : reason;
        detail = typeof doc.detail === "string" ? doc.detail : JSON.stringify(doc.detail ?? "");
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new EngineError(response.status, reason, detail);
    }
    return response;
  }

  private async json<T>(method: string, path: string, body?: unknown): Promise<T> {
    return (await this.request(method, path, body)).json() as Promise<T>;
  }

  private async bytes(path: string): Promise<Uint8Array> {
    const response = await this.request("GET", path);
    return new Uint8Array(await response.arrayBuffer());
  }

  async worlds(): Promise<WorldInfo[]> {
    const doc = await this.json<{ worlds: WorldInfo[] }>("GET", "/worlds");
    return doc.worlds;
  }

  validate(modulus: number, x: number[]): Promise<ValidateResponse> {
    return this.json("POST", "/worlds/validate", { modulus, X: x });
  }

  successors(world: WorldSelector, interval: string): Promise<SuccessorsResponse> {
    return this.json("POST", "/successors", { world, interval });
  }

  check(world: WorldSelector, score: ScoreDoc): Promise<CheckReportDoc> {
    return this.json("POST", "/check", { world, score });
  }

  compose(
    world: WorldSelector,
    cantus: number[],
    seed: number,
    scale?: ScaleSpec,
  ): Promise<{ id: string; score: ScoreDoc }> {
    const body: Record<string, unknown> = { world, cantus, seed };
    if (scale) body.scale = scale;
    return this.json("POST", "/compose", body);
  }

  registerScore(score: ScoreDoc): Promise<{ id: string }> {
    return this.json("POST", "/score", { score });
  }

  scoreJson(id: string): Promise<Uint8Array> {
    return this.bytes(`/score/${id}/json`);
  }

  scoreMidi(id: string): Promise<Uint8Array> {
    return this.bytes(`/score/${id}/midi`);
  }
}
