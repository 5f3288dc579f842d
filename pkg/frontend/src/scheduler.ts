/** Latest-wins query scheduling: debounced, never more than one in flight.
 *
 * Slider drags fire many state changes; only the newest matters.  While a
 * query is in flight new requests replace the pending slot, and the pending
 * request (if any) is sent when the active one settles, so responses always
 * arrive in request order.
 */

export class QueryScheduler<Req, Resp> {
  private timer: ReturnType<typeof setTimeout> | null = null;
  private inFlight = false;
  private pending: Req | null = null;

  constructor(
    private readonly send: (req: Req) => Promise<Resp>,
    private readonly onResult: (req: Req, resp: Resp) => void,
    private readonly onError: (req: Req, err: unknown) => void,
    private readonly debounceMs = 150,
  ) {}

  /** Schedule a query; earlier unsent requests are discarded. */
  request(req: Req): void {
    this.pending = req;
    if (this.timer !== null) {
      clearTimeout(this.timer);
    }
    this.timer = setTimeout(() => {
      this.timer = null;
      this.pump();
    }, this.debounceMs);
  }

  /** Number of requests currently on the wire (0 or 1). */
  inFlightCount(): number {
    return this.inFlight ? 1 : 0;
  }

  hasPending(): boolean {
    return this.pending !== null;
  }

  private pump(): void {
    if (this.inFlight || this.pending === null) {
      return;
    }
    const req = this.pending;
    this.pending = null;
    this.inFlight = true;
    this.send(req)
      .then((resp) => this.onResult(req, resp))
      .catch((err) => this.onError(req, err))
      .finally(() => {
        this.inFlight = false;
        this.pump();
      });
  }
}
