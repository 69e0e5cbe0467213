/**
 * Ordered outbound queue with bounded capacity and exponential backoff.
 *
 * All pending records ship as one JSONL batch per POST, oldest first, and
 * nothing is removed until the service acknowledges the batch, so order is
 * preserved across failures. On overflow the oldest pending record is
 * dropped with a console warning.
 */

export interface PostResult {
  status: number;
  /** Rejected-record count from the ingest ack, when the body had one. */
  rejected?: number;
}

export type PostFn = (body: string) => Promise<PostResult>;
export type ScheduleFn = (fn: () => void, delayMs: number) => void;

export interface OutboundQueueOptions {
  post: PostFn;
  maxPending?: number;
  baseDelayMs?: number;
  maxDelayMs?: number;
  schedule?: ScheduleFn;
  warn?: (message: string) => void;
}

export function fetchPoster(url: string): PostFn {
  return async (body: string) => {
    const resp = await fetch(url, {
      method: "POST",
      body,
      headers: { "Content-Type": "application/x-ndjson" },
      keepalive: true,
    });
    let rejected: number | undefined;
    try {
      const ack = (await resp.json()) as { rejected?: unknown };
      if (typeof ack.rejected === "number") rejected = ack.rejected;
    } catch {
      // non-JSON body (proxy error page); status alone decides
    }
    return { status: resp.status, rejected };
  };
}

export class OutboundQueue {
  private readonly post: PostFn;
  private readonly maxPending: number;
  private readonly baseDelayMs: number;
  private readonly maxDelayMs: number;
  private readonly schedule: ScheduleFn;
  private readonly warn: (message: string) => void;

  private lines: string[] = [];
  private attempts = 0;
  private sending = false;
  private waiting = false;
  private idleResolvers: Array<() => void> = [];

  constructor(opts: OutboundQueueOptions) {
    this.post = opts.post;
    this.maxPending = opts.maxPending ?? 64;
    this.baseDelayMs = opts.baseDelayMs ?? 500;
    this.maxDelayMs = opts.maxDelayMs ?? 30_000;
    this.schedule = opts.schedule ?? ((fn, ms) => setTimeout(fn, ms));
    this.warn = opts.warn ?? ((m) => console.warn(m));
  }

  get pending(): number {
    return this.lines.length;
  }

  enqueue(line: string): void {
    if (this.lines.length >= this.maxPending) {
      this.lines.shift();
      this.warn("outbound queue full, dropped oldest pending record");
    }
    this.lines.push(line);
    this.pump();
  }

  /** Resolves once everything currently pending has been delivered. */
  onIdle(): Promise<void> {
    if (this.lines.length === 0 && !this.sending) return Promise.resolve();
    return new Promise((resolve) => this.idleResolvers.push(resolve));
  }

  private settleIdle(): void {
    if (this.lines.length === 0 && !this.sending) {
      const resolvers = this.idleResolvers;
      this.idleResolvers = [];
      for (const r of resolvers) r();
    }
  }

  private batchLimit = Infinity;

  private pump(): void {
    if (this.sending || this.waiting || this.lines.length === 0) return;
    this.sending = true;
    const batch = this.lines.slice(0, this.batchLimit);
    const body = batch.join("\n") + "\n";
    this.post(body).then(
      (result) => {
        this.sending = false;
        if (result.status === 202 || result.status === 400) {
          // 202: stored. 400: the service rejected every record; they are
          // malformed and retrying cannot fix them, so drop with a warning.
          if (result.status === 400) {
            this.warn(`service rejected batch of ${batch.length} record(s)`);
          } else if (result.rejected) {
            this.warn(`service rejected ${result.rejected} record(s) of the batch`);
          }
          this.lines.splice(0, batch.length);
          this.attempts = 0;
          this.pump();
          this.settleIdle();
        } else if (result.status === 413) {
          if (batch.length === 1) {
            this.warn("record exceeds the service batch limit, dropped");
            this.lines.shift();
            this.pump();
            this.settleIdle();
          } else {
            this.batchLimit = Math.max(1, Math.floor(batch.length / 2));
            this.pump();
          }
        } else {
          this.retryLater(`service answered ${result.status}`);
        }
      },
      (err) => {
        this.sending = false;
        this.retryLater(err instanceof Error ? err.message : String(err));
      },
    );
  }

  private retryLater(reason: string): void {
    const delay = Math.min(this.baseDelayMs * 2 ** this.attempts, this.maxDelayMs);
    this.attempts += 1;
    this.warn(`delivery failed (${reason}), retrying in ${delay} ms`);
    this.waiting = true;
    this.schedule(() => {
      this.waiting = false;
      this.pump();
    }, delay);
  }
}
