/**
 * Fixed, colour-blind-safe palette (Okabe–Ito) for up to four colours.
 *
 * Edges with colours beyond the palette render in neutral grey with a
 * numeric label instead.
 */

export const PENDING_STROKE = "#9aa0a6";
export const VERTEX_FILL = "#202124";
export const HIGHLIGHT_RING = "#ffd600";

const OKABE_ITO = ["#d55e00", "#0072b2", "#009e73", "#e69f00"];

/** Human-readable names matching the palette order, for banners and logs. */
const NAMES = ["red", "blue", "green", "orange"];

export function edgeStroke(color: number): string {
  if (color <= 0) return PENDING_STROKE;
  return OKABE_ITO[color - 1] ?? "#5f6368";
}

/** True when the colour index has no palette slot and needs a label. */
export function needsLabel(color: number): boolean {
  return color > OKABE_ITO.length;
}

export function colourName(color: number): string {
  if (color <= 0) return "uncoloured";
  return NAMES[color - 1] ?? `colour ${color}`;
}
