/**
 * Deterministic color ramps.  "heat" is the default style for
 * probability and speed maps; "spin" blends two hues for spin-resolved
 * maps (up toward warm, down toward cold).  Every mapping is a pure
 * function of the normalized value.
 */

export type Rgb = [number, number, number];

const HEAT_STOPS: Rgb[] = [
  [13, 8, 135],
  [84, 2, 163],
  [139, 10, 165],
  [185, 50, 137],
  [219, 92, 104],
  [244, 136, 73],
  [254, 188, 43],
  [240, 249, 33],
];

const SPIN_DOWN: Rgb = [33, 102, 172];
const SPIN_UP: Rgb = [178, 24, 43];

function lerp(a: number, b: number, t: number): number {
  return a + (b - a) * t;
}

function rampAt(stops: Rgb[], t: number): Rgb {
  const clamped = Math.min(1, Math.max(0, t));
  const scaled = clamped * (stops.length - 1);
  const low = Math.min(stops.length - 2, Math.floor(scaled));
  const frac = scaled - low;
  const a = stops[low];
  const b = stops[low + 1];
  return [lerp(a[0], b[0], frac), lerp(a[1], b[1], frac), lerp(a[2], b[2], frac)];
}

export function toHex(rgb: Rgb): string {
  const channel = (v: number) => Math.round(Math.min(255, Math.max(0, v))).toString(16).padStart(2, "0");
  return `#${channel(rgb[0])}${channel(rgb[1])}${channel(rgb[2])}`;
}

/** Normalized value in [0, 1] -> heat ramp color. */
export function heatColor(t: number): string {
  return toHex(rampAt(HEAT_STOPS, t));
}

/**
 * Spin-fraction color: fraction = up / (up + down) in [0, 1], intensity
 * in [0, 1] scales toward white at zero weight.
 */
export function spinColor(fraction: number, intensity: number): string {
  const f = Math.min(1, Math.max(0, fraction));
  const base: Rgb = [
    lerp(SPIN_DOWN[0], SPIN_UP[0], f),
    lerp(SPIN_DOWN[1], SPIN_UP[1], f),
    lerp(SPIN_DOWN[2], SPIN_UP[2], f),
  ];
  const i = Math.min(1, Math.max(0, intensity));
  return toHex([lerp(255, base[0], i), lerp(255, base[1], i), lerp(255, base[2], i)]);
}

export const STYLE_NAMES = ["heat", "spin"] as const;
export type StyleName = (typeof STYLE_NAMES)[number];
