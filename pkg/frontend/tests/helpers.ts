// Replay recorded engine exchanges through a fake fetch.  Requests must
// match a recorded exchange exactly (method, path, body), so any drift in
// the UI's request construction fails loudly.

import type { FetchLike } from "../src/api.js";
import recorded from "./fixtures/engine.json";

export interface Exchange {
  name: string;
  method: string;
  path: string;
  status: number;
  request?: unknown;
  json?: unknown;
  base64?: string;
}

export function loadExchanges(): Exchange[] {
  return (recorded as { exchanges: Exchange[] }).exchanges;
}

export function byName(name: string): Exchange {
  const found = loadExchanges().find((e) => e.name === name);
  if (!found) throw new Error(`no fixture exchange named ${name}`);
  return found;
}

function stable(value: unknown): string {
  return JSON.stringify(value, function replacer(_key, v) {
    if (v && typeof v === "object" && !Array.isArray(v)) {
      return Object.fromEntries(Object.entries(v).sort(([a], [b]) => (a < b ? -1 : 1)));
    }
    return v;
  });
}

export function bytesFromBase64(b64: string): Uint8Array {
  return Uint8Array.from(Buffer.from(b64, "base64"));
}

export class FakeEngine {
  readonly baseUrl = "http://engine.test";
  calls: Array<{ method: string; path: string; body: unknown }> = [];

  constructor(private readonly exchanges: Exchange[] = loadExchanges()) {}

  fetch: FetchLike = async (url, init) => {
    const method = init?.method ?? "GET";
    const path = url.startsWith(this.baseUrl) ? url.slice(this.baseUrl.length) : url;
    const body = init?.body ? JSON.parse(init.body as string) : undefined;
    this.calls.push({ method, path, body });
    const exchange = this.exchanges.find(
      (e) =>
        e.method === method &&
        e.path === path &&
        (e.request === undefined || stable(e.request) === stable(body)),
    );
    if (!exchange) {
      throw new Error(`no recorded exchange for ${method} ${path}: ${stable(body)}`);
    }
    if (exchange.base64 !== undefined) {
      const bytes = bytesFromBase64(exchange.base64);
      return new Response(bytes.buffer.slice(0) as ArrayBuffer, {
        status: exchange.status,
        headers: { "Content-Type": "application/octet-stream" },
      });
    }
    return new Response(JSON.stringify(exchange.json), {
      status: exchange.status,
      headers: { "Content-Type": "application/json" },
    });
  };
}

/** Manual scheduler for deterministic debounce tests. */
export class ManualTimers {
  private queue: Array<{ id: number; fn: () => void }> = [];
  private nextId = 1;

  schedule = (fn: () => void, _ms: number) => {
    const id = this.nextId++;
    this.queue.push({ id, fn });
    return id as unknown as ReturnType<typeof setTimeout>;
  };

  cancel = (t: ReturnType<typeof setTimeout>) => {
    this.queue = this.queue.filter((item) => item.id !== (t as unknown as number));
  };

  fire(): void {
    const pending = this.queue;
    this.queue = [];
    for (const item of pending) item.fn();
  }

  get pending(): number {
    return this.queue.length;
  }
}

export async function settle(): Promise<void> {
  // drain the microtask queue a few times so chained awaits finish
  for (let i = 0; i < 10; i += 1) await Promise.resolve();
}
