/**
 * Built-in click sounds, one short ping per timbre row.
 *
 * The engine is the timing authority: clicks fire when clock ticks arrive,
 * the browser never schedules ahead of the stream.
 */

export class ClickSynth {
  private context: AudioContext | null = null;

  private ensureContext(): AudioContext {
    if (!this.context) {
      this.context = new AudioContext();
    }
    if (this.context.state === "suspended") {
      void this.context.resume();
    }
    return this.context;
  }

  /** Short decaying sine ping; pitch varies with the timbre row. */
  click(timbreRow: number, accent = false): void {
    const ctx = this.ensureContext();
    const osc = ctx.createOscillator();
    const gain = ctx.createGain();
    osc.frequency.value = 220 * Math.pow(2, timbreRow / 3);
    gain.gain.setValueAtTime(accent ? 0.5 : 0.25, ctx.currentTime);
    gain.gain.exponentialRampToValueAtTime(1e-4, ctx.currentTime + 0.08);
    osc.connect(gain).connect(ctx.destination);
    osc.start();
    osc.stop(ctx.currentTime + 0.1);
  }
}
