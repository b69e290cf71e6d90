// Composer state: two voice pitch arrays plus the latest engine verdicts.
// Edits bump a revision counter; stale check responses are dropped so the
// display always reflects the newest drag (last-write-wins).

import type { CheckReportDoc, ScaleSpec, ScoreDoc, WorldSelector } from "./types.js";

export const DEFAULT_CANTUS_PITCH = 60;
export const DEFAULT_DISCANTUS_PITCH = 67;

export type Voice = "cantus" | "discantus";

export class ComposerState {
  world: WorldSelector = "82";
  worldLabel = "82";
  modulus = 12;
  scale: ScaleSpec | null = null;
  cantus: number[] = [];
  discantus: number[] = [];
  /** Latest verdicts for the current pitches; null while a check is pending. */
  report: CheckReportDoc | null = null;
  revision = 0;
  /** Interval numbers admitted at the position after the highlight anchor. */
  highlightEps: number[] | null = null;
  highlightPosition = -1;

  private listeners: Array<() => void> = [];

  constructor(length = 8) {
    this.setLength(length);
  }

  subscribe(listener: () => void): void {
    this.listeners.push(listener);
  }

  private notify(): void {
    for (const fn of this.listeners) fn();
  }

  private edited(): void {
    this.revision += 1;
    this.report = null;
    this.highlightEps = null;
    this.highlightPosition = -1;
    this.notify();
  }

  get length(): number {
    return this.cantus.length;
  }

  setLength(length: number): void {
    length = Math.max(1, Math.min(64, Math.floor(length)));
    while (this.cantus.length < length) {
      this.cantus.push(this.cantus.at(-1) ?? DEFAULT_CANTUS_PITCH);
      this.discantus.push(this.discantus.at(-1) ?? DEFAULT_DISCANTUS_PITCH);
    }
    this.cantus.length = length;
    this.discantus.length = length;
    this.edited();
  }

  setPitch(voice: Voice, index: number, pitch: number): void {
    const arr = voice === "cantus" ? this.cantus : this.discantus;
    if (index < 0 || index >= arr.length) return;
    pitch = Math.max(0, Math.min(127, Math.round(pitch)));
    if (arr[index] === pitch) return;
    arr[index] = pitch;
    this.edited();
  }

  setVoices(cantus: number[], discantus: number[]): void {
    if (cantus.length !== discantus.length || cantus.length === 0) {
      throw new Error("voices must be nonempty and equally long");
    }
    this.cantus = [...cantus];
    this.discantus = [...discantus];
    this.edited();
  }

  setWorld(selector: WorldSelector, label: string, modulus: number): void {
    this.world = selector;
    this.worldLabel = label;
    this.modulus = modulus;
    this.edited();
  }

  setScale(scale: ScaleSpec | null): void {
    this.scale = scale;
    this.notify();
  }

  /** The interval literal x+eK at a position, as the engine writes it. */
  intervalAt(index: number): string {
    const m = this.modulus;
    const base = ((this.cantus[index] % m) + m) % m;
    const eps = (((this.discantus[index] - this.cantus[index]) % m) + m) % m;
    return `${base}+e${eps}`;
  }

  toScoreDoc(): ScoreDoc {
    const voice = (pitches: number[]) =>
      pitches.map((pitch, i) => ({
        onset: String(i),
        duration: "1",
        pitch,
        loudness: 64,
      }));
    return {
      schemaVersion: 1,
      modulus: this.modulus,
      voices: { cantus: voice(this.cantus), discantus: voice(this.discantus) },
      meta: { world: this.worldLabel },
    };
  }

  applyReport(report: CheckReportDoc, revision: number): boolean {
    if (revision !== this.revision) return false; // stale response
    this.report = report;
    this.notify();
    return true;
  }

  applyHighlights(position: number, eps: number[], revision: number): boolean {
    if (revision !== this.revision) return false;
    this.highlightPosition = position;
    this.highlightEps = eps;
    this.notify();
    return true;
  }
}
