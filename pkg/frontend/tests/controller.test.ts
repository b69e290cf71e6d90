import { describe, expect, it } from "vitest";

import { EngineClient, EngineUnreachableError } from "../src/api.js";
import { ComposerController } from "../src/controller.js";
import { ComposerState } from "../src/state.js";
import { byName, FakeEngine, ManualTimers, settle } from "./helpers.js";

function fixtureSetup() {
  const engine = new FakeEngine();
  const client = new EngineClient(engine.baseUrl, engine.fetch);
  const state = new ComposerState(2);
  // pitches of the recorded parallel-fifths exchange
  state.setPitch("cantus", 0, 60);
  state.setPitch("cantus", 1, 62);
  state.setPitch("discantus", 0, 67);
  state.setPitch("discantus", 1, 69);
  return { engine, client, state };
}

describe("ComposerController", () => {
  it("coalesces a drag into a single check call (debounce)", async () => {
    const { engine, client, state } = fixtureSetup();
    const timers = new ManualTimers();
    const controller = new ComposerController(
      state, client, {}, 150, timers.schedule, timers.cancel,
    );
    // a drag passes through several pitches before settling on 69
    for (const pitch of [65, 66, 67, 68, 69]) {
      state.setPitch("discantus", 1, pitch);
      controller.edited();
    }
    expect(timers.pending).toBe(1);
    // only the recorded final body exists, so an early call would throw
    timers.fire();
    await settle();
    expect(engine.calls.filter((c) => c.path === "/check")).toHaveLength(1);
    expect(state.report).toEqual(byName("check-parallel-fifths-82").json);
  });

  it("drops stale responses: the last drag wins", async () => {
    const { client, state } = fixtureSetup();
    const timers = new ManualTimers();
    const controller = new ComposerController(
      state, client, {}, 150, timers.schedule, timers.cancel,
    );
    const staleRevision = state.revision;
    const first = controller.refresh(); // in flight for the fifths pitches
    state.setPitch("discantus", 0, 65); // drag to the fourth while awaiting
    await first;
    expect(state.report).toBeNull(); // stale response was not applied
    expect(state.revision).toBeGreaterThan(staleRevision);
    await controller.refresh();
    expect(state.report).toEqual(byName("check-fourth-82").json);
  });

  it("reports unreachable engines and recovery", async () => {
    const state = new ComposerState(2);
    let down: unknown = null;
    let recovered = 0;
    const failingClient = new EngineClient("http://engine.test", async () => {
      throw new TypeError("connection refused");
    });
    const controller = new ComposerController(state, failingClient, {
      onUnreachable: (err) => (down = err),
      onRecovered: () => (recovered += 1),
    });
    await controller.refresh();
    expect(down).toBeInstanceOf(EngineUnreachableError);
    expect(recovered).toBe(0);
  });

  it("turns successor responses into next-position highlights", async () => {
    const { state, client } = fixtureSetup();
    const controller = new ComposerController(state, client);
    await controller.showSuccessors(0); // anchor interval is 0+e7
    const recorded = byName("successors-82-0e7").json as { successors: string[] };
    const expected = recorded.successors
      .filter((s) => s.startsWith("2+e"))
      .map((s) => Number(s.split("+e")[1]))
      .sort((a, b) => a - b);
    expect([...(state.highlightEps ?? [])].sort((a, b) => a - b)).toEqual(expected);
    expect(state.highlightPosition).toBe(0);
    // no parallel fifth may be highlighted
    expect(state.highlightEps).not.toContain(7);
  });
});
