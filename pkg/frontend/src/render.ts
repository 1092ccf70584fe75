// SVG rendering of a configuration: a number line with one stack of robot
// dots per tower, exact rational labels, and a marker on the destination
// the current phase implies. Pure string-building so it runs anywhere.

import { parseFrac, toNumber } from "./fraction.js";
import { SessionView } from "./view.js";

export interface RenderOptions {
  width?: number;
  height?: number;
}

const ROBOT_RADIUS = 8;
const ROBOT_GAP = 3;

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderStateSvg(view: SessionView, options: RenderOptions = {}): string {
  const width = options.width ?? 720;
  const height = options.height ?? 260;
  const pad = 48;
  const axisY = height - 56;

  const values = view.towers.map((t) => t.value);
  if (view.target !== null) values.push(toNumber(parseFrac(view.target)));
  const min = Math.min(...(values.length ? values : [0]));
  const max = Math.max(...(values.length ? values : [0]));
  const span = max - min || 1;
  const toX = (value: number) => pad + ((value - min) / span) * (width - 2 * pad);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" ` +
      `width="${width}" height="${height}" role="img" class="number-line">`
  );
  parts.push(
    `<line class="axis" x1="${pad - 24}" y1="${axisY}" x2="${width - pad + 24}" y2="${axisY}" ` +
      `stroke="currentColor" stroke-width="2"/>`
  );

  if (view.target !== null) {
    const x = toX(toNumber(parseFrac(view.target)));
    parts.push(
      `<g class="target-marker">` +
        `<line x1="${x}" y1="${28}" x2="${x}" y2="${axisY}" stroke="#e0a020" ` +
        `stroke-width="1.5" stroke-dasharray="5 4"/>` +
        `<text x="${x}" y="${20}" text-anchor="middle" fill="#e0a020" font-size="12">` +
        `target ${escapeXml(view.target)}</text>` +
        `</g>`
    );
  }

  const movingSet = new Set(view.moving);
  for (const tower of view.towers) {
    const x = toX(tower.value);
    const dots: string[] = [];
    tower.robots.forEach((id, level) => {
      const y = axisY - ROBOT_RADIUS - level * (2 * ROBOT_RADIUS + ROBOT_GAP);
      const cls = movingSet.has(id) ? "robot moved" : "robot";
      dots.push(
        `<circle class="${cls}" data-robot="${id}" cx="${x}" cy="${y}" r="${ROBOT_RADIUS}" ` +
          `fill="${movingSet.has(id) ? "#4caf50" : "#8a8f98"}" stroke="#2b2e33"/>`
      );
    });
    parts.push(
      `<g class="tower" data-location="${escapeXml(tower.location)}" ` +
        `data-multiplicity="${tower.multiplicity}">` +
        dots.join("") +
        `<text x="${x}" y="${axisY + 20}" text-anchor="middle" font-size="13" ` +
        `fill="currentColor">${escapeXml(tower.location)}</text>` +
        `</g>`
    );
  }

  const banner = view.gathered !== null
    ? `gathered at ${view.gathered}`
    : view.forbidden
      ? "forbidden (fixed point)"
      : "";
  if (banner) {
    parts.push(
      `<text class="banner" x="${width / 2}" y="${height - 12}" text-anchor="middle" ` +
        `font-size="15" font-weight="bold" ` +
        `fill="${view.forbidden ? "#e05555" : "#4caf50"}">${escapeXml(banner)}</text>`
    );
  }

  parts.push("</svg>");
  return parts.join("");
}
