/** Schematic face preview.
 *
 * Pure functions from an actuator vector to geometry and then to an SVG
 * string: no DOM, no randomness, no time. Every feature position is an
 * affine function of the actuator values so the preview moves linearly
 * with the sliders. The layout pins which actuator index drives which
 * feature; rendering a vector whose length disagrees with the layout is
 * an error the caller surfaces, not a silent crop.
 */

export class FaceError extends Error {}

export interface FaceLayout {
  dof: number;
  browInner: number;
  browLeft: number;
  browRight: number;
  browOuterLeft: number;
  browOuterRight: number;
  lidUpperLeft: number;
  lidUpperRight: number;
  lidLowerLeft: number;
  lidLowerRight: number;
  cornerUpLeft: number;
  cornerUpRight: number;
  cornerDownLeft: number;
  cornerDownRight: number;
  jaw: number;
  lowerLip: number;
  pucker: number;
  stretchLeft: number;
  stretchRight: number;
  neckYaw: number;
  neckPitch: number;
  neckRoll: number;
  /** Lower-lip drop in SVG units when the jaw actuator reads 1.0. */
  jawMaxPx: number;
  /** Head tilt in degrees when a neck actuator sits at full travel. */
  neckMaxDeg: number;
}

/** Index assignments for the 32-motor head the bundled profile targets. */
export const DEFAULT_LAYOUT: FaceLayout = {
  dof: 32,
  browInner: 0,
  browLeft: 1,
  browRight: 2,
  browOuterLeft: 26,
  browOuterRight: 27,
  lidUpperLeft: 3,
  lidUpperRight: 4,
  lidLowerLeft: 5,
  lidLowerRight: 6,
  cornerUpLeft: 13,
  cornerUpRight: 14,
  cornerDownLeft: 15,
  cornerDownRight: 16,
  jaw: 17,
  lowerLip: 19,
  pucker: 20,
  stretchLeft: 22,
  stretchRight: 23,
  neckYaw: 29,
  neckPitch: 30,
  neckRoll: 31,
  jawMaxPx: 60,
  neckMaxDeg: 18,
};

export interface Segment {
  x1: number;
  y1: number;
  x2: number;
  y2: number;
}

export interface Eye {
  cx: number;
  cy: number;
  rx: number;
  /** Vertical half-opening after the lids act; 0 means fully shut. */
  ry: number;
}

export interface FaceGeometry {
  width: number;
  height: number;
  head: { cx: number; cy: number; r: number };
  /** Whole-face rotation from neck roll, degrees, positive clockwise. */
  tiltDeg: number;
  /** Horizontal shear offset from neck yaw, SVG units. */
  yawShift: number;
  /** Vertical nod offset from neck pitch, SVG units. */
  pitchShift: number;
  browLeft: Segment;
  browRight: Segment;
  eyeLeft: Eye;
  eyeRight: Eye;
  /** Lip contour: left corner, top mid, right corner, bottom mid. */
  mouth: {
    leftX: number;
    leftY: number;
    rightX: number;
    rightY: number;
    topY: number;
    bottomY: number;
  };
  jawDrop: number;
}

const W = 320;
const H = 360;
const CX = W / 2;
const HEAD_CY = 160;
const HEAD_R = 120;

const EYE_DX = 48;
const EYE_CY = 140;
const EYE_RX = 26;
const EYE_RY_OPEN = 16;

const BROW_Y = 102;
const BROW_INNER_X = 22;
const BROW_OUTER_X = 74;
const BROW_RAISE = 18;

const MOUTH_CY = 218;
const MOUTH_HALF_W = 46;
const CORNER_TRAVEL = 16;
const STRETCH_TRAVEL = 18;
const LIP_GAP = 5;

function at(actuators: readonly number[], index: number): number {
  return actuators[index] ?? 0;
}

/** Map actuator values to schematic coordinates. Throws FaceError when
 * the vector length does not match the layout. */
export function faceGeometry(
  actuators: readonly number[],
  layout: FaceLayout = DEFAULT_LAYOUT,
): FaceGeometry {
  if (actuators.length !== layout.dof) {
    throw new FaceError(
      `face layout expects ${layout.dof} actuators, got ${actuators.length}`,
    );
  }
  const a = (index: number) => at(actuators, index);

  const inner = a(layout.browInner) * BROW_RAISE;
  const browLeftLift = a(layout.browLeft) * BROW_RAISE;
  const browRightLift = a(layout.browRight) * BROW_RAISE;
  const outerLeft = a(layout.browOuterLeft) * BROW_RAISE;
  const outerRight = a(layout.browOuterRight) * BROW_RAISE;

  // Lids close from the top; lower lids push the floor up.
  const openLeft =
    EYE_RY_OPEN * (1 - a(layout.lidUpperLeft)) -
    0.4 * EYE_RY_OPEN * a(layout.lidLowerLeft);
  const openRight =
    EYE_RY_OPEN * (1 - a(layout.lidUpperRight)) -
    0.4 * EYE_RY_OPEN * a(layout.lidLowerRight);

  const jawDrop = a(layout.jaw) * layout.jawMaxPx;
  const lipDrop = a(layout.lowerLip) * 0.5 * layout.jawMaxPx;

  const width =
    MOUTH_HALF_W +
    STRETCH_TRAVEL * 0.5 * (a(layout.stretchLeft) + a(layout.stretchRight)) -
    STRETCH_TRAVEL * a(layout.pucker);

  const cornerLeftY =
    MOUTH_CY -
    CORNER_TRAVEL * a(layout.cornerUpLeft) +
    CORNER_TRAVEL * a(layout.cornerDownLeft);
  const cornerRightY =
    MOUTH_CY -
    CORNER_TRAVEL * a(layout.cornerUpRight) +
    CORNER_TRAVEL * a(layout.cornerDownRight);

  // Neck channels are centered: 0.5 is straight ahead.
  const tiltDeg = (a(layout.neckRoll) - 0.5) * 2 * layout.neckMaxDeg;
  const yawShift = (a(layout.neckYaw) - 0.5) * 2 * 14;
  const pitchShift = (a(layout.neckPitch) - 0.5) * 2 * 10;

  return {
    width: W,
    height: H,
    head: { cx: CX, cy: HEAD_CY, r: HEAD_R },
    tiltDeg,
    yawShift,
    pitchShift,
    browLeft: {
      x1: CX - EYE_DX - BROW_INNER_X,
      y1: BROW_Y - inner - browLeftLift,
      x2: CX - EYE_DX - BROW_OUTER_X + BROW_INNER_X,
      y2: BROW_Y - browLeftLift - outerLeft,
    },
    browRight: {
      x1: CX + EYE_DX + BROW_INNER_X,
      y1: BROW_Y - inner - browRightLift,
      x2: CX + EYE_DX + BROW_OUTER_X - BROW_INNER_X,
      y2: BROW_Y - browRightLift - outerRight,
    },
    eyeLeft: {
      cx: CX - EYE_DX,
      cy: EYE_CY,
      rx: EYE_RX,
      ry: Math.max(0, openLeft),
    },
    eyeRight: {
      cx: CX + EYE_DX,
      cy: EYE_CY,
      rx: EYE_RX,
      ry: Math.max(0, openRight),
    },
    mouth: {
      leftX: CX - width,
      leftY: cornerLeftY,
      rightX: CX + width,
      rightY: cornerRightY,
      topY: MOUTH_CY - LIP_GAP,
      bottomY: MOUTH_CY + LIP_GAP + jawDrop + lipDrop,
    },
    jawDrop,
  };
}

const fmt = (v: number): string => {
  const r = Math.round(v * 100) / 100;
  return Object.is(r, -0) ? "0" : String(r);
};

/** Render the schematic as a standalone SVG string. */
export function renderFace(
  actuators: readonly number[],
  layout: FaceLayout = DEFAULT_LAYOUT,
): string {
  const g = faceGeometry(actuators, layout);
  const tx = g.head.cx + g.yawShift;
  const ty = g.head.cy + g.pitchShift;
  const transform = `translate(${fmt(g.yawShift)} ${fmt(g.pitchShift)}) rotate(${fmt(g.tiltDeg)} ${fmt(tx)} ${fmt(ty)})`;

  const brow = (s: Segment) =>
    `<line class="brow" x1="${fmt(s.x1)}" y1="${fmt(s.y1)}" x2="${fmt(s.x2)}" y2="${fmt(s.y2)}"/>`;
  const eye = (e: Eye) =>
    `<ellipse class="eye" cx="${fmt(e.cx)}" cy="${fmt(e.cy)}" rx="${fmt(e.rx)}" ry="${fmt(e.ry)}"/>`;

  const m = g.mouth;
  const midX = (m.leftX + m.rightX) / 2;
  const lip =
    `<path class="lip" d="M ${fmt(m.leftX)} ${fmt(m.leftY)} ` +
    `Q ${fmt(midX)} ${fmt(m.topY)} ${fmt(m.rightX)} ${fmt(m.rightY)} ` +
    `Q ${fmt(midX)} ${fmt(m.bottomY)} ${fmt(m.leftX)} ${fmt(m.leftY)} Z"/>`;

  return [
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${g.width} ${g.height}">`,
    `<g transform="${transform}">`,
    `<circle class="head" cx="${fmt(g.head.cx)}" cy="${fmt(g.head.cy)}" r="${fmt(g.head.r)}"/>`,
    brow(g.browLeft),
    brow(g.browRight),
    eye(g.eyeLeft),
    eye(g.eyeRight),
    lip,
    `</g>`,
    `</svg>`,
  ].join("");
}
