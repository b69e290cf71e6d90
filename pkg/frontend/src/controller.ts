// Debounced bridge between composer edits and the engine: one /check per
// settled drag, successor highlighting on demand, connectivity reporting.

import { EngineClient, EngineError, EngineUnreachableError } from "./api.js";
import { ComposerState } from "./state.js";

export interface ControllerEvents {
  onUnreachable?: (err: EngineUnreachableError) => void;
  onEngineError?: (err: EngineError) => void;
  onRecovered?: () => void;
}

type Scheduler = (fn: () => void, ms: number) => ReturnType<typeof setTimeout>;

export class ComposerController {
  private timer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    readonly state: ComposerState,
    readonly client: EngineClient,
    private readonly events: ControllerEvents = {},
    readonly debounceMs = 150,
    private readonly schedule: Scheduler = (fn, ms) => setTimeout(fn, ms),
    private readonly cancel: (t: ReturnType<typeof setTimeout>) => void = clearTimeout,
  ) {}

  /** Called on every drag step / world switch; coalesces into one check. */
  edited(): void {
    if (this.timer !== null) this.cancel(this.timer);
    this.timer = this.schedule(() => {
      this.timer = null;
      void this.refresh();
    }, this.debounceMs);
  }

  /** Issue a check for the current pitches; stale responses are dropped. */
  async refresh(): Promise<void> {
    const revision = this.state.revision;
    try {
      const report = await this.client.check(this.state.world, this.state.toScoreDoc());
      this.state.applyReport(report, revision);
      this.events.onRecovered?.();
    } catch (err) {
      if (err instanceof EngineUnreachableError) {
        this.events.onUnreachable?.(err);
      } else if (err instanceof EngineError) {
        this.events.onEngineError?.(err);
      } else {
        throw err;
      }
    }
  }

  /** Highlight the admitted successor interval numbers after `position`
   * whose cantus matches the next position's note. */
  async showSuccessors(position: number): Promise<void> {
    const state = this.state;
    if (position < 0 || position + 1 >= state.length) return;
    const revision = state.revision;
    const m = state.modulus;
    try {
      const response = await this.client.successors(
        state.world,
        state.intervalAt(position),
      );
      const nextBase = ((state.cantus[position + 1] % m) + m) % m;
      const eps: number[] = [];
      for (const literal of response.successors) {
        const match = /^(\d+)\+e(\d+)$/.exec(literal);
        if (match && Number(match[1]) === nextBase) eps.push(Number(match[2]));
      }
      state.applyHighlights(position, eps, revision);
      this.events.onRecovered?.();
    } catch (err) {
      if (err instanceof EngineUnreachableError) {
        this.events.onUnreachable?.(err);
      } else if (err instanceof EngineError) {
        // dissonant anchor: nothing to highlight
        state.applyHighlights(position, [], revision);
        this.events.onEngineError?.(err);
      } else {
        throw err;
      }
    }
  }
}
