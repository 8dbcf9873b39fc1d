/** Connectivity banner driven by periodic /v1/health probes. */

export const DEFAULT_POLL_INTERVAL_MS = 10_000;

export class HealthPoller {
  online = true;
  private timer: ReturnType<typeof setInterval> | null = null;

  constructor(
    private readonly check: () => Promise<boolean>,
    private readonly onChange: (online: boolean) => void,
    private readonly intervalMs: number = DEFAULT_POLL_INTERVAL_MS,
  ) {}

  async poll(): Promise<boolean> {
    const ok = await this.check();
    if (ok !== this.online) {
      this.online = ok;
      this.onChange(ok);
    }
    return ok;
  }

  start(): void {
    void this.poll();
    this.timer = setInterval(() => void this.poll(), this.intervalMs);
  }

  stop(): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
  }
}

export function renderOfflineBanner(): HTMLElement {
  const banner = document.createElement("div");
  banner.dataset.role = "offline-banner";
  banner.className = "offline-banner";
  banner.hidden = true;
  banner.textContent =
    "No connection to the risk service - your entries stay on this screen.";
  return banner;
}

export function setBannerVisible(banner: HTMLElement, offline: boolean): void {
  banner.hidden = !offline;
}
