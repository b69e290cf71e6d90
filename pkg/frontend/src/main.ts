// Page assembly: world/scale pickers, length control, the piano roll, the
// status box, successor highlighting, engine-side generation and export.

import { EngineClient } from "./api.js";
import { ComposerController } from "./controller.js";
import { exportComposition, triggerDownload } from "./exporter.js";
import { PianoRollGrid } from "./grid.js";
import { ComposerState } from "./state.js";
import { ScalePicker, StatusBox, WorldPicker } from "./widgets.js";

const DEFAULT_BASE_URL = "http://127.0.0.1:8000";

export function mountComposer(root: HTMLElement, baseUrl: string = DEFAULT_BASE_URL): void {
  const doc = root.ownerDocument;
  const client = new EngineClient(baseUrl);
  const state = new ComposerState(8);

  const banner = doc.createElement("div");
  banner.className = "banner hidden";
  const controller = new ComposerController(state, client, {
    onUnreachable: () => {
      banner.textContent = `engine unreachable at ${baseUrl} — start it with: contrapunctus serve`;
      banner.classList.remove("hidden");
    },
    onEngineError: (err) => {
      banner.textContent = err.message;
      banner.classList.remove("hidden");
    },
    onRecovered: () => banner.classList.add("hidden"),
  });

  const statusBox = new StatusBox(state, doc);
  const grid = new PianoRollGrid(
    state,
    {
      onDrag: (voice, index, pitch) => {
        state.setPitch(voice, index, pitch);
        controller.edited();
      },
      onSelect: (index) => statusBox.select(index),
    },
    doc,
  );

  const toolbar = doc.createElement("div");
  toolbar.className = "toolbar";

  const worldPicker = new WorldPicker(
    client,
    (choice) => {
      state.setWorld(choice.selector, choice.label, choice.modulus);
      controller.edited();
    },
    doc,
  );

  const scalePicker = new ScalePicker((scale) => state.setScale(scale), doc);

  const lengthInput = doc.createElement("input");
  lengthInput.type = "number";
  lengthInput.min = "1";
  lengthInput.max = "64";
  lengthInput.value = String(state.length);
  lengthInput.title = "composition length";
  lengthInput.addEventListener("change", () => {
    state.setLength(Number(lengthInput.value));
    controller.edited();
  });

  const successorsBtn = doc.createElement("button");
  successorsBtn.textContent = "show successors";
  successorsBtn.title = "highlight admitted next-position pitches for the selected position";
  let selected = 0;
  state.subscribe(() => undefined);
  successorsBtn.addEventListener("click", () => void controller.showSuccessors(selected));

  const generateBtn = doc.createElement("button");
  generateBtn.textContent = "generate discantus";
  generateBtn.addEventListener("click", () => {
    void (async () => {
      try {
        const { score } = await client.compose(
          state.world,
          [...state.cantus],
          Math.floor(Math.random() * 1_000_000),
          state.scale ?? undefined,
        );
        state.setVoices(
          score.voices.cantus.map((n) => n.pitch),
          score.voices.discantus.map((n) => n.pitch),
        );
        controller.edited();
      } catch (err) {
        banner.textContent = String(err);
        banner.classList.remove("hidden");
      }
    })();
  });

  const exportJson = doc.createElement("button");
  exportJson.textContent = "export JSON";
  const exportMidi = doc.createElement("button");
  exportMidi.textContent = "export MIDI";
  for (const [button, format] of [
    [exportJson, "json"],
    [exportMidi, "midi"],
  ] as const) {
    button.addEventListener("click", () => {
      void exportComposition(state, client, format)
        .then((result) => triggerDownload(result, doc))
        .catch((err) => {
          banner.textContent = String(err);
          banner.classList.remove("hidden");
        });
    });
  }

  toolbar.append(
    worldPicker.root,
    scalePicker.root,
    lengthInput,
    successorsBtn,
    generateBtn,
    exportJson,
    exportMidi,
  );

  // keep the successor anchor in sync with the selected column
  const origSelect = statusBox.select.bind(statusBox);
  statusBox.select = (index: number) => {
    selected = index;
    origSelect(index);
  };

  root.append(banner, toolbar, grid.root, statusBox.root);
  controller.edited();
}

declare global {
  interface Window {
    CONTRAPUNCTUS_API?: string;
  }
}

if (typeof document !== "undefined" && document.getElementById("composer")) {
  mountComposer(
    document.getElementById("composer")!,
    window.CONTRAPUNCTUS_API ?? DEFAULT_BASE_URL,
  );
}
