// Exports go through the engine: the score is registered, then the bytes
// served by the engine are downloaded unchanged, so a UI export is
// byte-identical to the CLI writing the same content.

import { EngineClient } from "./api.js";
import { ComposerState } from "./state.js";

export interface ExportResult {
  filename: string;
  mime: string;
  bytes: Uint8Array;
}

export async function exportComposition(
  state: ComposerState,
  client: EngineClient,
  format: "json" | "midi",
): Promise<ExportResult> {
  if (state.length === 0) throw new Error("composition is empty");
  const { id } = await client.registerScore(state.toScoreDoc());
  if (format === "json") {
    return {
      filename: "composition.json",
      mime: "application/json",
      bytes: await client.scoreJson(id),
    };
  }
  return {
    filename: "composition.mid",
    mime: "audio/midi",
    bytes: await client.scoreMidi(id),
  };
}

export function triggerDownload(result: ExportResult, doc: Document = document): void {
  const buffer = result.bytes.buffer.slice(
    result.bytes.byteOffset,
    result.bytes.byteOffset + result.bytes.byteLength,
  ) as ArrayBuffer;
  const blob = new Blob([buffer], { type: result.mime });
  const url = URL.createObjectURL(blob);
  const anchor = doc.createElement("a");
  anchor.href = url;
  anchor.download = result.filename;
  doc.body.appendChild(anchor);
  anchor.click();
  anchor.remove();
  URL.revokeObjectURL(url);
}
