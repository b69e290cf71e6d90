// Status box, world picker, scale picker, length control.

import { EngineClient, EngineError } from "./api.js";
import { ComposerState } from "./state.js";
import type { ScaleSpec, ValidateResponse, WorldInfo } from "./types.js";

export class StatusBox {
  readonly root: HTMLElement;
  private selected = 0;

  constructor(private readonly state: ComposerState, doc: Document = document) {
    this.root = doc.createElement("div");
    this.root.className = "status-box";
    state.subscribe(() => this.render());
    this.render();
  }

  select(index: number): void {
    this.selected = index;
    this.render();
  }

  render(): void {
    const doc = this.root.ownerDocument;
    this.root.textContent = "";
    const { report } = this.state;
    const i = Math.min(this.selected, this.state.length - 1);

    const head = doc.createElement("div");
    head.className = "status-head";
    head.textContent = `position ${i + 1} of ${this.state.length} — interval ${this.state.intervalAt(i)}`;
    this.root.appendChild(head);

    const position = doc.createElement("div");
    position.className = "status-line position-status";
    const transition = doc.createElement("div");
    transition.className = "status-line transition-status";
    if (report === null) {
      position.textContent = "checking…";
      transition.textContent = "";
    } else {
      const verdict = report.positions[i];
      position.textContent = verdict.consonant ? "Consonant" : "Dissonant";
      position.classList.add(verdict.consonant ? "ok" : "bad");
      if (i + 1 < this.state.length) {
        const adm = report.transitions[i].admitted;
        if (adm === null) {
          transition.textContent = "next step: n/a (dissonance involved)";
        } else {
          transition.textContent = adm ? "next step: Admitted" : "next step: Forbidden";
          transition.classList.add(adm ? "ok" : "bad");
        }
      }
    }
    this.root.appendChild(position);
    this.root.appendChild(transition);

    const summary = doc.createElement("div");
    summary.className = "status-line summary";
    if (report !== null) {
      summary.textContent = report.pass
        ? "composition passes"
        : `${report.violations.length} violation(s): ` +
          report.violations.map((v) => `#${v.position + 1} ${v.kind}`).join(", ");
      summary.classList.add(report.pass ? "ok" : "bad");
    }
    this.root.appendChild(summary);
  }
}

export interface WorldChoice {
  selector: string | { modulus: number; X: number[] };
  label: string;
  modulus: number;
}

export class WorldPicker {
  readonly root: HTMLElement;
  private select: HTMLSelectElement;
  private customBox: HTMLElement;
  private setInput: HTMLInputElement;
  private modInput: HTMLInputElement;
  private feedback: HTMLElement;

  constructor(
    private readonly client: EngineClient,
    private readonly onPick: (choice: WorldChoice) => void,
    doc: Document = document,
  ) {
    this.root = doc.createElement("div");
    this.root.className = "world-picker";
    this.select = doc.createElement("select");
    for (const label of ["64", "68", "71", "75", "78", "82", "custom"]) {
      const option = doc.createElement("option");
      option.value = label;
      option.textContent = label === "custom" ? "custom…" : `world ${label}`;
      this.select.appendChild(option);
    }
    this.select.value = "82";
    this.select.addEventListener("change", () => this.onSelect());

    this.customBox = doc.createElement("span");
    this.customBox.className = "custom-world hidden";
    this.setInput = doc.createElement("input");
    this.setInput.placeholder = "0,2,3";
    this.setInput.className = "set-input";
    this.modInput = doc.createElement("input");
    this.modInput.placeholder = "6";
    this.modInput.className = "mod-input";
    const apply = doc.createElement("button");
    apply.textContent = "validate";
    apply.addEventListener("click", () => void this.applyCustom());
    this.customBox.append(this.setInput, this.modInput, apply);

    this.feedback = doc.createElement("span");
    this.feedback.className = "world-feedback";

    this.root.append(this.select, this.customBox, this.feedback);
  }

  private onSelect(): void {
    if (this.select.value === "custom") {
      this.customBox.classList.remove("hidden");
      return;
    }
    this.customBox.classList.add("hidden");
    this.feedback.textContent = "";
    this.onPick({ selector: this.select.value, label: this.select.value, modulus: 12 });
  }

  private async applyCustom(): Promise<void> {
    const modulus = Number(this.modInput.value);
    const x = this.setInput.value
      .split(",")
      .map((token) => Number(token.trim()))
      .filter((v) => Number.isFinite(v));
    let verdict: ValidateResponse;
    try {
      verdict = await this.client.validate(modulus, x);
    } catch (err) {
      this.feedback.textContent = err instanceof EngineError ? err.message : String(err);
      this.feedback.className = "world-feedback bad";
      return;
    }
    if (!verdict.strong) {
      // surface the engine's reason verbatim
      this.feedback.textContent = `not a strong dichotomy: ${verdict.reason}`;
      this.feedback.className = "world-feedback bad";
      return;
    }
    const label = `${x.join(",")}@${modulus}`;
    this.feedback.textContent = `strong, polarity T^${verdict.polarity!.t}.${verdict.polarity!.u}`;
    this.feedback.className = "world-feedback ok";
    this.onPick({ selector: { modulus, X: x }, label, modulus });
  }
}

export class ScalePicker {
  readonly root: HTMLElement;

  constructor(onPick: (scale: ScaleSpec | null) => void, doc: Document = document) {
    this.root = doc.createElement("div");
    this.root.className = "scale-picker";
    const select = doc.createElement("select");
    for (const name of ["none", "major", "minor", "dorian", "lydian", "mixolydian"]) {
      const option = doc.createElement("option");
      option.value = name;
      option.textContent = name === "none" ? "no scale" : `${name} scale`;
      select.appendChild(option);
    }
    const root = doc.createElement("input");
    root.type = "number";
    root.value = "60";
    root.title = "scale root (MIDI)";
    const emit = () => {
      if (select.value === "none") onPick(null);
      else onPick({ root: Number(root.value), preset: select.value });
    };
    select.addEventListener("change", emit);
    root.addEventListener("change", emit);
    this.root.append(select, root);
  }
}

export function worldSummary(info: WorldInfo): string {
  return `X = {${info.x.join(",")}}, polarity T^${info.polarity.t}.${info.polarity.u}`;
}
