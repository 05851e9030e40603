/** Wire shapes of the calibration API. */

export interface Anchor {
  intensity: number;
  pose: number[];
}

/** Full-state snapshot pushed by the server after every mutation. */
export interface Snapshot {
  version: number;
  dof: number;
  actuators: number[];
  semantic: string | null;
  intensity: number;
  anchors: Record<string, Anchor[]>;
}

export class SnapshotError extends Error {}

const isFiniteNumber = (v: unknown): v is number =>
  typeof v === "number" && Number.isFinite(v);

/**
 * Validate an incoming snapshot. The server is trusted for semantics but
 * not for transport corruption; a malformed snapshot must never reach the
 * store, where it would poison every later render.
 */
export function parseSnapshot(raw: unknown): Snapshot {
  if (typeof raw !== "object" || raw === null) {
    throw new SnapshotError("snapshot is not an object");
  }
  const o = raw as Record<string, unknown>;
  if (!isFiniteNumber(o.version) || !isFiniteNumber(o.dof) || o.dof < 1) {
    throw new SnapshotError("snapshot missing version/dof");
  }
  if (!Array.isArray(o.actuators) || o.actuators.length !== o.dof) {
    throw new SnapshotError("actuator vector length != dof");
  }
  for (const v of o.actuators) {
    if (!isFiniteNumber(v) || v < 0 || v > 1) {
      throw new SnapshotError(`actuator value ${String(v)} outside [0, 1]`);
    }
  }
  if (o.semantic !== null && typeof o.semantic !== "string") {
    throw new SnapshotError("semantic must be a string or null");
  }
  if (!isFiniteNumber(o.intensity) || o.intensity < 0 || o.intensity > 1) {
    throw new SnapshotError("intensity outside [0, 1]");
  }
  if (typeof o.anchors !== "object" || o.anchors === null) {
    throw new SnapshotError("anchors must be an object");
  }
  const anchors: Record<string, Anchor[]> = {};
  for (const [sem, list] of Object.entries(o.anchors as Record<string, unknown>)) {
    if (!Array.isArray(list)) throw new SnapshotError(`anchors.${sem} not a list`);
    anchors[sem] = list.map((entry) => {
      const a = entry as Record<string, unknown>;
      if (!isFiniteNumber(a.intensity) || !Array.isArray(a.pose)) {
        throw new SnapshotError(`bad anchor in ${sem}`);
      }
      return { intensity: a.intensity, pose: a.pose.map(Number) };
    });
    anchors[sem].sort((a, b) => a.intensity - b.intensity);
  }
  return {
    version: o.version,
    dof: o.dof,
    actuators: (o.actuators as number[]).slice(),
    semantic: o.semantic as string | null,
    intensity: o.intensity,
    anchors,
  };
}

export const clamp01 = (v: number): number => Math.min(1, Math.max(0, v));
