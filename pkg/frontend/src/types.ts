// Wire types of the engine's HTTP API.

export interface PolarityDoc {
  t: number;
  u: number;
}

export interface WorldInfo {
  id: string;
  modulus: number;
  x: number[];
  y: number[];
  polarity: PolarityDoc;
}

export interface ValidateResponse {
  strong: boolean;
  polarity?: PolarityDoc;
  reason?: string;
}

export interface NoteDoc {
  onset: string;
  duration: string;
  pitch: number;
  loudness: number;
}

export interface ScoreDoc {
  schemaVersion: number;
  modulus: number;
  voices: { cantus: NoteDoc[]; discantus: NoteDoc[] };
  meta: Record<string, unknown>;
}

export interface PositionVerdict {
  index: number;
  interval: string;
  consonant: boolean;
}

export interface TransitionVerdict {
  index: number;
  admitted: boolean | null;
}

export interface ViolationDoc {
  position: number;
  kind: string;
  detail: string;
}

export interface CheckReportDoc {
  pass: boolean;
  positions: PositionVerdict[];
  transitions: TransitionVerdict[];
  violations: ViolationDoc[];
}

export interface SuccessorsResponse {
  world: string;
  interval: string;
  count: number;
  successors: string[];
}

/** Either a catalogue label like "82" / "0,2,3@6", or an explicit set. */
export type WorldSelector = string | { modulus: number; X: number[] };

export interface ScaleSpec {
  root: number;
  steps?: number[];
  preset?: string;
}
