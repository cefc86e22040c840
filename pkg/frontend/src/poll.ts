/**
 * Fixed-interval polling. The workbench refreshes by asking again, not by
 * listening; a tick that throws stops nothing and the next tick runs as
 * scheduled.
 */

export class Poller {
  private readonly tick: () => Promise<void> | void;
  private readonly intervalMs: number;
  private timer: ReturnType<typeof setInterval> | null = null;

  constructor(tick: () => Promise<void> | void, intervalMs = 5000) {
    this.tick = tick;
    this.intervalMs = intervalMs;
  }

  get running(): boolean {
    return this.timer !== null;
  }

  start(): void {
    if (this.timer !== null) return;
    this.timer = setInterval(() => {
      void Promise.resolve(this.tick()).catch(() => {
        // a failed poll is not an event; the next interval retries
      });
    }, this.intervalMs);
  }

  stop(): void {
    if (this.timer === null) return;
    clearInterval(this.timer);
    this.timer = null;
  }
}
