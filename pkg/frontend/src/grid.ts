// Two-voice piano-roll grid.  One column per position; each column holds a
// cantus block and a discantus block that drag vertically in semitones.
// Verdict classes come exclusively from the engine report in the state.

import { ComposerState, Voice } from "./state.js";

const NOTE_NAMES = ["C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B"];

export function pitchName(pitch: number): string {
  return NOTE_NAMES[pitch % 12] + String(Math.floor(pitch / 12) - 1);
}

export interface GridOptions {
  lowPitch?: number;
  highPitch?: number;
  cellHeight?: number;
  columnWidth?: number;
}

export interface GridCallbacks {
  onDrag: (voice: Voice, index: number, pitch: number) => void;
  onSelect?: (index: number) => void;
}

interface DragContext {
  voice: Voice;
  index: number;
  startPitch: number;
  startY: number;
}

export class PianoRollGrid {
  readonly root: HTMLElement;
  readonly lowPitch: number;
  readonly highPitch: number;
  readonly cellHeight: number;
  readonly columnWidth: number;
  private drag: DragContext | null = null;

  constructor(
    private readonly state: ComposerState,
    private readonly callbacks: GridCallbacks,
    doc: Document = document,
    options: GridOptions = {},
  ) {
    this.lowPitch = options.lowPitch ?? 41; // F2
    this.highPitch = options.highPitch ?? 84; // C6
    this.cellHeight = options.cellHeight ?? 12;
    this.columnWidth = options.columnWidth ?? 64;
    this.root = doc.createElement("div");
    this.root.className = "piano-roll";
    this.root.addEventListener("pointermove", (ev) => this.onPointerMove(ev as PointerEvent));
    this.root.addEventListener("pointerup", () => (this.drag = null));
    this.root.addEventListener("pointercancel", () => (this.drag = null));
    state.subscribe(() => this.render());
    this.render();
  }

  private pitchToTop(pitch: number): number {
    return (this.highPitch - pitch) * this.cellHeight;
  }

  render(): void {
    const doc = this.root.ownerDocument;
    this.root.textContent = "";
    const state = this.state;
    const report = state.report;
    const height = (this.highPitch - this.lowPitch + 1) * this.cellHeight;
    this.root.style.height = `${height}px`;
    this.root.style.width = `${state.length * this.columnWidth + 40}px`;

    for (let pitch = this.lowPitch; pitch <= this.highPitch; pitch += 1) {
      if (pitch % 12 === 0) {
        const line = doc.createElement("div");
        line.className = "octave-line";
        line.style.top = `${this.pitchToTop(pitch) + this.cellHeight - 1}px`;
        const label = doc.createElement("span");
        label.textContent = pitchName(pitch);
        line.appendChild(label);
        this.root.appendChild(line);
      }
    }

    for (let i = 0; i < state.length; i += 1) {
      const column = doc.createElement("div");
      column.className = "column";
      column.style.left = `${40 + i * this.columnWidth}px`;
      column.style.width = `${this.columnWidth - 4}px`;
      column.dataset.index = String(i);
      column.addEventListener("pointerdown", () => this.callbacks.onSelect?.(i));

      const verdict = report?.positions[i];
      const transition = i > 0 ? report?.transitions[i - 1] : undefined;
      // successor highlights for the position after the anchor
      if (state.highlightEps && i === state.highlightPosition + 1) {
        for (let pitch = this.lowPitch; pitch <= this.highPitch; pitch += 1) {
          const eps =
            (((pitch - state.cantus[i]) % state.modulus) + state.modulus) %
            state.modulus;
          if (state.highlightEps.includes(eps)) {
            const mark = doc.createElement("div");
            mark.className = "successor-highlight";
            mark.style.top = `${this.pitchToTop(pitch)}px`;
            mark.style.height = `${this.cellHeight}px`;
            column.appendChild(mark);
          }
        }
      }

      for (const voice of ["cantus", "discantus"] as Voice[]) {
        const pitch = voice === "cantus" ? state.cantus[i] : state.discantus[i];
        const block = doc.createElement("div");
        const classes = ["note", voice];
        if (report === null) classes.push("pending");
        else if (verdict) classes.push(verdict.consonant ? "consonant" : "dissonant");
        block.className = classes.join(" ");
        block.style.top = `${this.pitchToTop(pitch)}px`;
        block.style.height = `${this.cellHeight}px`;
        block.title = `${voice} ${pitchName(pitch)}`;
        block.dataset.voice = voice;
        block.dataset.index = String(i);
        block.textContent = pitchName(pitch);
        block.addEventListener("pointerdown", (ev) =>
          this.onPointerDown(ev as PointerEvent, voice, i, pitch),
        );
        column.appendChild(block);
      }

      if (transition && transition.admitted !== null) {
        const marker = doc.createElement("div");
        marker.className = `transition ${transition.admitted ? "admitted" : "forbidden"}`;
        marker.style.left = "-4px";
        column.appendChild(marker);
      }
      this.root.appendChild(column);
    }
  }

  private onPointerDown(ev: PointerEvent, voice: Voice, index: number, pitch: number): void {
    ev.preventDefault();
    this.drag = { voice, index, startPitch: pitch, startY: ev.clientY };
    const target = ev.target as HTMLElement & { setPointerCapture?: (id: number) => void };
    target.setPointerCapture?.(ev.pointerId);
    this.callbacks.onSelect?.(index);
  }

  private onPointerMove(ev: PointerEvent): void {
    if (!this.drag) return;
    const semitones = Math.round((this.drag.startY - ev.clientY) / this.cellHeight);
    const pitch = this.drag.startPitch + semitones;
    const current =
      this.drag.voice === "cantus"
        ? this.state.cantus[this.drag.index]
        : this.state.discantus[this.drag.index];
    if (pitch !== current) {
      this.callbacks.onDrag(this.drag.voice, this.drag.index, pitch);
    }
  }
}
