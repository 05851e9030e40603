import { EventSourceLike } from "../src/push";
import { Snapshot } from "../src/types";

export function makeSnapshot(overrides: Partial<Snapshot> = {}): Snapshot {
  return {
    version: 0,
    dof: 4,
    actuators: [0.1, 0.2, 0.3, 0.4],
    semantic: null,
    intensity: 1.0,
    anchors: {},
    ...overrides,
  };
}

/** Hand-cranked EventSource: tests emit open/message/error explicitly. */
export class FakeEventSource implements EventSourceLike {
  onopen: ((ev: unknown) => void) | null = null;
  onmessage: ((ev: { data: string }) => void) | null = null;
  onerror: ((ev: unknown) => void) | null = null;
  closed = false;

  constructor(public readonly url: string) {}

  close(): void {
    this.closed = true;
  }

  emitOpen(): void {
    this.onopen?.({});
  }

  emitMessage(data: string): void {
    this.onmessage?.({ data });
  }

  emitSnapshot(snap: Snapshot): void {
    this.emitMessage(JSON.stringify(snap));
  }

  emitError(): void {
    this.onerror?.({});
  }
}
