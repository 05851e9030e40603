/** Server-push subscription: one event-stream connection feeding parsed
 * snapshots to the store, with connection status callbacks. The event
 * source is injected so tests can drive the channel synthetically. */

import { parseSnapshot, Snapshot } from "./types";

export type ConnectionStatus = "connecting" | "live" | "lost";

/** The EventSource surface the channel needs (DOM lib not required). */
export interface EventSourceLike {
  onopen: ((ev: unknown) => void) | null;
  onmessage: ((ev: { data: string }) => void) | null;
  onerror: ((ev: unknown) => void) | null;
  close(): void;
}

export type EventSourceFactory = (url: string) => EventSourceLike;

export class PushChannel {
  private source: EventSourceLike | null = null;

  constructor(
    private readonly url: string,
    private readonly factory: EventSourceFactory,
  ) {}

  start(
    onSnapshot: (snap: Snapshot) => void,
    onStatus: (status: ConnectionStatus) => void,
  ): void {
    onStatus("connecting");
    this.source = this.factory(this.url);
    this.source.onopen = () => onStatus("live");
    this.source.onmessage = (ev) => {
      // first message proves liveness even if onopen never fired
      onStatus("live");
      onSnapshot(parseSnapshot(JSON.parse(ev.data)));
    };
    // EventSource auto-reconnects; surface the gap, keep the source open
    this.source.onerror = () => onStatus("lost");
  }

  stop(): void {
    this.source?.close();
    this.source = null;
  }
}
