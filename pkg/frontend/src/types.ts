/** Wire formats of the engine service, mirrored one to one. */

export type Role = "normal" | "solo_laid_back";
export type MeterKind = "binary" | "ternary";

export interface InstrumentDoc {
  name: string;
  role: Role;
  timbres: string[];
  matrix: number[][];
}

export interface PatternDoc {
  pulsesPerBar: number;
  tempoBpm: number;
  bars: number;
  instruments: InstrumentDoc[];
}

export interface SegmentDoc {
  start: number;
  length: number;
  kind: MeterKind;
}

export interface InterpretationDoc {
  signature: number[];
  segments: SegmentDoc[];
  score: number;
}

export interface PhraseDoc {
  start: number;
  end: number;
}

export interface TrackReport {
  track: string;
  interpretations?: InterpretationDoc[];
  phrases?: PhraseDoc[];
  error?: { code: string; message: string };
}

export interface AnalysisReport {
  tracks: TrackReport[];
}

export interface PutPatternResponse {
  revision: number;
  report: AnalysisReport;
}

export interface FeelProfileDoc {
  theta1: number;
  theta2: number;
  theta3: number;
  binaryScale: [number, number];
  ternaryScale: [number, number];
}

export interface RenderOptionsDoc {
  seed?: number;
  switchProbability?: number;
  walkStep?: number;
  velocityMode?: "metric" | "backbeat" | "offbeat";
  topK?: number;
}

export interface TimelineEventDoc {
  tMs: number;
  instrument: string;
  timbre: string;
  velocity: number;
  pulse: number;
  bar: number;
}

export interface TimelineDoc {
  events: TimelineEventDoc[];
  totalMs: number;
  notes?: string[];
  smfBase64?: string;
}

export interface ClockTick {
  bar: number;
  pulse: number;
  tMs: number;
}

export interface TransportResponse {
  transport: "playing" | "stopped";
  revision: number;
}
