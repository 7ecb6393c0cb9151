/**
 * Glue between the grid and the engine: debounced pattern pushes, transport
 * control with one automatic conflict retry, swing sliders, interpretation
 * pinning and the live playhead.
 *
 * Every overlay and every playhead position originates from an engine
 * response; the controller's own state is limited to plumbing (timers,
 * revision counter, queued-edit and stale flags).
 */

import { EngineClient, EngineHttpError } from "./engineClient.js";
import { GridViewModel } from "./grid.js";
import type { ClockTick, FeelProfileDoc, RenderOptionsDoc } from "./types.js";

const DEFAULT_PROFILE: FeelProfileDoc = {
  theta1: 0,
  theta2: 0,
  theta3: 0,
  binaryScale: [1, 0.5],
  ternaryScale: [0.5, 2],
};

export interface ControllerOptions {
  debounceMs?: number;
}

export class SequencerController {
  readonly grid: GridViewModel;
  private client: EngineClient;
  private debounceMs: number;

  private pushTimer: ReturnType<typeof setTimeout> | null = null;
  /** An edit could not reach the engine and waits for the next push. */
  editQueued = false;
  /** Overlays no longer match the cells (edit pending or push failed). */
  staleOverlay = false;
  revision: number | null = null;
  playing = false;
  private closeClock: (() => void) | null = null;

  profile: FeelProfileDoc = { ...DEFAULT_PROFILE };
  renderOptions: RenderOptionsDoc = { seed: 0 };
  /** Observer for clock ticks (the click synth hooks in here). */
  onTick: ((tick: ClockTick) => void) | null = null;

  constructor(grid: GridViewModel, client: EngineClient, options: ControllerOptions = {}) {
    this.grid = grid;
    this.client = client;
    this.debounceMs = options.debounceMs ?? 100;
  }

  /** Flip a cell and schedule a debounced push + re-analysis. */
  toggleCell(instrument: number, timbre: number, pulse: number): void {
    this.grid.toggleCell(instrument, timbre, pulse);
    this.staleOverlay = true;
    if (this.pushTimer !== null) {
      clearTimeout(this.pushTimer);
    }
    this.pushTimer = setTimeout(() => {
      this.pushTimer = null;
      void this.pushPattern();
    }, this.debounceMs);
  }

  /** Push the grid to the engine; overlays refresh from the response. */
  async pushPattern(): Promise<boolean> {
    try {
      const response = await this.client.putPattern(this.grid.toPatternJson());
      this.revision = response.revision;
      this.grid.applyAnalysis(response.report);
      this.editQueued = false;
      this.staleOverlay = false;
      return true;
    } catch {
      this.editQueued = true;
      this.staleOverlay = true;
      return false;
    }
  }

  /** Retry a queued edit (e.g. when the engine comes back). */
  async flushQueuedEdits(): Promise<boolean> {
    if (!this.editQueued) {
      return true;
    }
    return this.pushPattern();
  }

  /**
   * Start playback: validate the revision with a render request (one
   * automatic re-analyze + retry on conflict), then start the transport and
   * subscribe to the clock stream.
   */
  async play(seed?: number): Promise<void> {
    if (seed !== undefined) {
      this.renderOptions.seed = seed;
    }
    const renderBody = {
      revision: this.revision ?? undefined,
      profile: this.profile,
      options: this.renderOptions,
    };
    try {
      await this.client.render(renderBody);
    } catch (error) {
      if (error instanceof EngineHttpError && error.status === 409) {
        await this.pushPattern();
        await this.client.render({ ...renderBody, revision: this.revision ?? undefined });
      } else {
        throw error;
      }
    }
    await this.client.transport({
      action: "play",
      seed: this.renderOptions.seed,
      profile: this.profile,
      options: this.renderOptions,
    });
    this.playing = true;
    this.closeClock = this.client.openClock((tick) => {
      this.grid.setPlayhead(tick);
      this.onTick?.(tick);
    });
  }

  async stop(): Promise<void> {
    if (this.closeClock) {
      this.closeClock();
      this.closeClock = null;
    }
    await this.client.transport({ action: "stop" });
    this.playing = false;
    this.grid.clearPlayhead();
  }

  /**
   * Pin one interpretation: the overlay shows it and reading-hopping is
   * switched off so the groove stays on a single feel.
   */
  pinInterpretation(track: number, index: number): void {
    this.grid.selectInterpretation(track, index);
    this.renderOptions.switchProbability = 0;
  }

  /** Move a swing slider; a running transport re-renders with the new feel. */
  async setTheta(which: "theta1" | "theta2" | "theta3", value: number): Promise<void> {
    this.profile[which] = value;
    if (this.playing) {
      await this.play();
    }
  }
}
