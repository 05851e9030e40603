/** Client-side state: the last server snapshot plus optimistic slider
 * overlays.
 *
 * The server stays authoritative: every applied snapshot REPLACES local
 * state wholesale and drops all pending overlays, so immediately after a
 * snapshot the store is equal to it. Overlays only bridge the round-trip
 * gap between a slider drag and the echo snapshot. Snapshots older than
 * the current version are ignored (the channel may race a POST response).
 */

import { Anchor, clamp01, Snapshot } from "./types";
import { ConnectionStatus } from "./push";

export type PreviewMode = "manual" | "mapped";

export interface UiState {
  connection: ConnectionStatus;
  version: number;
  dof: number;
  actuators: number[];
  semantic: string | null;
  intensity: number;
  anchors: Record<string, Anchor[]>;
  previewMode: PreviewMode;
  /** Mapped-pose actuators fetched from /api/preview, when in mapped mode. */
  mappedPose: number[] | null;
  error: string | null;
}

export type Listener = (state: UiState) => void;

export class Store {
  private snapshot: Snapshot | null = null;
  private pending = new Map<number, number>();
  private connection: ConnectionStatus = "connecting";
  private previewMode: PreviewMode = "manual";
  private mappedPose: number[] | null = null;
  private error: string | null = null;
  private listeners = new Set<Listener>();

  subscribe(listener: Listener): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }

  private emit(): void {
    const state = this.state();
    for (const listener of this.listeners) listener(state);
  }

  /** Apply a server snapshot; stale versions are dropped. */
  applySnapshot(snap: Snapshot): void {
    if (this.snapshot && snap.version < this.snapshot.version) return;
    this.snapshot = snap;
    this.pending.clear();
    this.emit();
  }

  /** Record a local slider edit until the next snapshot confirms it. */
  optimisticActuator(index: number, value: number): void {
    if (!this.snapshot || index < 0 || index >= this.snapshot.dof) return;
    this.pending.set(index, clamp01(value));
    this.emit();
  }

  setConnection(status: ConnectionStatus): void {
    this.connection = status;
    this.emit();
  }

  setPreviewMode(mode: PreviewMode, mappedPose: number[] | null = null): void {
    this.previewMode = mode;
    this.mappedPose = mode === "mapped" ? mappedPose : null;
    this.emit();
  }

  setError(message: string | null): void {
    this.error = message;
    this.emit();
  }

  state(): UiState {
    const snap = this.snapshot;
    const actuators = snap ? snap.actuators.slice() : [];
    for (const [index, value] of this.pending) {
      if (index < actuators.length) actuators[index] = value;
    }
    return {
      connection: this.connection,
      version: snap?.version ?? -1,
      dof: snap?.dof ?? 0,
      actuators: actuators.map(clamp01),
      semantic: snap?.semantic ?? null,
      intensity: snap?.intensity ?? 1.0,
      anchors: snap ? sortedAnchors(snap.anchors) : {},
      previewMode: this.previewMode,
      mappedPose: this.mappedPose,
      error: this.error,
    };
  }
}

function sortedAnchors(anchors: Record<string, Anchor[]>): Record<string, Anchor[]> {
  const out: Record<string, Anchor[]> = {};
  for (const [sem, list] of Object.entries(anchors)) {
    out[sem] = list.slice().sort((a, b) => a.intensity - b.intensity);
  }
  return out;
}
