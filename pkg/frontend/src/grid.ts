/**
 * View model of the step grid: toggle state, analysis overlays, playhead.
 *
 * The grid never computes rhythm analysis or timing itself.  Overlays come
 * from engine analysis reports, the playhead from engine clock ticks; the
 * only thing the grid owns is which cells are switched on.
 */

import type {
  AnalysisReport,
  ClockTick,
  InterpretationDoc,
  PatternDoc,
  PhraseDoc,
  Role,
} from "./types.js";

export interface InstrumentConfig {
  name: string;
  role?: Role;
  timbres: string[];
}

export interface GridConfig {
  pulsesPerBar: number;
  tempoBpm: number;
  bars: number;
  instruments: InstrumentConfig[];
}

export interface Playhead {
  bar: number;
  pulse: number;
}

export class GridViewModel {
  pulsesPerBar: number;
  tempoBpm: number;
  bars: number;
  instruments: Required<InstrumentConfig>[];

  /** cells[instrument][timbreRow][pulse] */
  private cells: boolean[][][];

  private report: AnalysisReport | null = null;
  private selectedInterpretation: number[] = [];
  focusedTrack = 0;
  playhead: Playhead | null = null;

  constructor(config: GridConfig) {
    this.pulsesPerBar = config.pulsesPerBar;
    this.tempoBpm = config.tempoBpm;
    this.bars = config.bars;
    this.instruments = config.instruments.map((i) => ({
      name: i.name,
      role: i.role ?? "normal",
      timbres: [...i.timbres],
    }));
    this.cells = this.instruments.map((i) =>
      i.timbres.map(() => new Array<boolean>(this.pulsesPerBar).fill(false)),
    );
    this.selectedInterpretation = this.instruments.map(() => 0);
  }

  cellOn(instrument: number, timbre: number, pulse: number): boolean {
    return this.cells[instrument]?.[timbre]?.[pulse] ?? false;
  }

  /** Flip one cell; returns the new state. */
  toggleCell(instrument: number, timbre: number, pulse: number): boolean {
    const row = this.cells[instrument]?.[timbre];
    if (row === undefined || pulse < 0 || pulse >= this.pulsesPerBar) {
      throw new RangeError(`no cell (${instrument}, ${timbre}, ${pulse})`);
    }
    row[pulse] = !row[pulse];
    return row[pulse];
  }

  /** Serialize the grid as the engine's pattern document. */
  toPatternJson(): PatternDoc {
    return {
      pulsesPerBar: this.pulsesPerBar,
      tempoBpm: this.tempoBpm,
      bars: this.bars,
      instruments: this.instruments.map((instrument, i) => ({
        name: instrument.name,
        role: instrument.role,
        timbres: [...instrument.timbres],
        matrix: this.cells[i]!.map((row) => row.map((on) => (on ? 1 : 0))),
      })),
    };
  }

  /** Rebuild the whole grid from a pattern document (lossless round trip). */
  loadPattern(doc: PatternDoc): void {
    this.pulsesPerBar = doc.pulsesPerBar;
    this.tempoBpm = doc.tempoBpm;
    this.bars = doc.bars;
    this.instruments = doc.instruments.map((i) => ({
      name: i.name,
      role: i.role,
      timbres: [...i.timbres],
    }));
    this.cells = doc.instruments.map((i) =>
      i.matrix.map((row) => row.map((v) => v !== 0)),
    );
    this.selectedInterpretation = this.instruments.map(() => 0);
    this.report = null;
    this.focusedTrack = Math.min(this.focusedTrack, this.instruments.length - 1);
  }

  /** Install a fresh analysis report; overlays snap to it. */
  applyAnalysis(report: AnalysisReport): void {
    this.report = report;
    this.selectedInterpretation = report.tracks.map(() => 0);
  }

  interpretationsFor(track: number): InterpretationDoc[] {
    return this.report?.tracks[track]?.interpretations ?? [];
  }

  selectInterpretation(track: number, index: number): void {
    const available = this.interpretationsFor(track).length;
    if (index < 0 || index >= available) {
      throw new RangeError(`track ${track} has no interpretation ${index}`);
    }
    this.selectedInterpretation[track] = index;
  }

  selectedInterpretationIndex(track: number): number {
    return this.selectedInterpretation[track] ?? 0;
  }

  /** Per-pulse 2/3 colouring for the focused track, or null before analysis. */
  signatureOverlay(): number[] | null {
    const chosen =
      this.interpretationsFor(this.focusedTrack)[
        this.selectedInterpretationIndex(this.focusedTrack)
      ];
    return chosen ? [...chosen.signature] : null;
  }

  /** Phrase spans of the focused track, straight from the engine report. */
  phraseOverlay(): PhraseDoc[] {
    return this.report?.tracks[this.focusedTrack]?.phrases ?? [];
  }

  phraseBoundaries(): number[] {
    return this.phraseOverlay().map((p) => p.start);
  }

  setPlayhead(tick: ClockTick): void {
    this.playhead = { bar: tick.bar, pulse: tick.pulse };
  }

  clearPlayhead(): void {
    this.playhead = null;
  }
}
