/** Minimal SVG assembly: numbers are printed with fixed precision so a
 * given input always yields the identical document. */

export function fmt(value: number): string {
  if (Number.isInteger(value)) return String(value);
  return value.toFixed(3).replace(/\.?0+$/, "");
}

export function svgDocument(width: number, height: number, body: string[]): string {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${fmt(width)}" height="${fmt(height)}" viewBox="0 0 ${fmt(width)} ${fmt(height)}">`,
    ...body,
    "</svg>",
    "",
  ].join("\n");
}

export function rect(x: number, y: number, w: number, h: number, fill: string): string {
  return `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}" fill="${fill}"/>`;
}

export function polygon(points: Array<[number, number]>, fill: string, stroke?: string): string {
  const pts = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
  const strokeAttr = stroke ? ` stroke="${stroke}" stroke-width="0.3"` : "";
  return `<polygon points="${pts}" fill="${fill}"${strokeAttr}/>`;
}

export function polyline(points: Array<[number, number]>, stroke: string): string {
  const pts = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
  return `<polyline points="${pts}" fill="none" stroke="${stroke}" stroke-width="1.5"/>`;
}

export function text(x: number, y: number, content: string, size = 11): string {
  const escaped = content
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;");
  return `<text x="${fmt(x)}" y="${fmt(y)}" font-family="monospace" font-size="${size}">${escaped}</text>`;
}

export function line(x1: number, y1: number, x2: number, y2: number, stroke = "#444"): string {
  return `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" stroke="${stroke}" stroke-width="1"/>`;
}
