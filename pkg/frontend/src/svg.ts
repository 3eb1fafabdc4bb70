import { AxisScale } from './types';
import { Scene } from './plots';

const WIDTH = 640;
const HEIGHT = 480;
const MARGIN = { left: 70, right: 150, top: 20, bottom: 50 };
const TICKS = 5;

const PALETTE = [
  '#1f77b4',
  '#d62728',
  '#2ca02c',
  '#9467bd',
  '#ff7f0e',
  '#8c564b',
  '#17becf',
  '#7f7f7f',
];

interface Range {
  lo: number;
  hi: number;
}

function fmt(v: number): string {
  return v.toFixed(2);
}

function tickLabel(value: number, scale: AxisScale): string {
  if (scale === 'log') return Math.pow(10, value).toExponential(1);
  return value.toPrecision(4);
}

function dataRange(values: number[]): Range {
  let lo = Math.min(...values);
  let hi = Math.max(...values);
  if (lo === hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  return { lo, hi };
}

function ticks(range: Range): number[] {
  const out: number[] = [];
  for (let i = 0; i < TICKS; i++) {
    out.push(range.lo + ((range.hi - range.lo) * i) / (TICKS - 1));
  }
  return out;
}

/** Deterministic text rendering: same scene, same bytes. */
export function renderSvg(scene: Scene): string {
  const allPoints = scene.series
    .flatMap((s) => s.points)
    .concat(scene.guides.flatMap((g) => [g.from, g.to]));
  const xRange = dataRange(allPoints.map((p) => p.x));
  const yRange = dataRange(allPoints.map((p) => p.y));
  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const padX = 0.04 * (xRange.hi - xRange.lo);
  const padY = 0.04 * (yRange.hi - yRange.lo);
  const x0 = xRange.lo - padX;
  const x1 = xRange.hi + padX;
  const y0 = yRange.lo - padY;
  const y1 = yRange.hi + padY;
  const sx = (v: number) => MARGIN.left + ((v - x0) / (x1 - x0)) * plotW;
  const sy = (v: number) => MARGIN.top + plotH - ((v - y0) / (y1 - y0)) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
      `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="monospace" font-size="12">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" ` +
      `fill="none" stroke="black"/>`,
  );

  for (const t of ticks(xRange)) {
    const px = fmt(sx(t));
    const yAxis = MARGIN.top + plotH;
    parts.push(
      `<line x1="${px}" y1="${yAxis}" x2="${px}" y2="${yAxis + 5}" stroke="black"/>`,
    );
    parts.push(
      `<text x="${px}" y="${yAxis + 18}" text-anchor="middle">` +
        `${tickLabel(t, scene.xScale)}</text>`,
    );
  }
  for (const t of ticks(yRange)) {
    const py = fmt(sy(t));
    parts.push(
      `<line x1="${MARGIN.left - 5}" y1="${py}" x2="${MARGIN.left}" y2="${py}" stroke="black"/>`,
    );
    parts.push(
      `<text x="${MARGIN.left - 8}" y="${py}" text-anchor="end" dominant-baseline="middle">` +
        `${tickLabel(t, scene.yScale)}</text>`,
    );
  }
  parts.push(
    `<text x="${MARGIN.left + plotW / 2}" y="${HEIGHT - 12}" text-anchor="middle">` +
      `${scene.xLabel}</text>`,
  );
  parts.push(
    `<text x="16" y="${MARGIN.top + plotH / 2}" text-anchor="middle" ` +
      `transform="rotate(-90 16 ${MARGIN.top + plotH / 2})">${scene.yLabel}</text>`,
  );

  for (const guide of scene.guides) {
    parts.push(
      `<line x1="${fmt(sx(guide.from.x))}" y1="${fmt(sy(guide.from.y))}" ` +
        `x2="${fmt(sx(guide.to.x))}" y2="${fmt(sy(guide.to.y))}" ` +
        `stroke="#999999" stroke-dasharray="6 3"/>`,
    );
  }

  scene.series.forEach((series, i) => {
    const color = PALETTE[i % PALETTE.length];
    const coords = series.points.map((p) => `${fmt(sx(p.x))},${fmt(sy(p.y))}`).join(' ');
    parts.push(`<polyline points="${coords}" fill="none" stroke="${color}"/>`);
    for (const p of series.points) {
      parts.push(
        `<circle cx="${fmt(sx(p.x))}" cy="${fmt(sy(p.y))}" r="3" fill="${color}"/>`,
      );
    }
  });

  const legendX = WIDTH - MARGIN.right + 10;
  let legendY = MARGIN.top + 10;
  scene.series.forEach((series, i) => {
    const color = PALETTE[i % PALETTE.length];
    parts.push(
      `<line x1="${legendX}" y1="${legendY}" x2="${legendX + 18}" y2="${legendY}" ` +
        `stroke="${color}"/>`,
    );
    parts.push(
      `<text x="${legendX + 24}" y="${legendY}" dominant-baseline="middle">` +
        `${series.label}</text>`,
    );
    legendY += 16;
  });
  for (const guide of scene.guides) {
    parts.push(
      `<line x1="${legendX}" y1="${legendY}" x2="${legendX + 18}" y2="${legendY}" ` +
        `stroke="#999999" stroke-dasharray="6 3"/>`,
    );
    parts.push(
      `<text x="${legendX + 24}" y="${legendY}" dominant-baseline="middle">` +
        `${guide.label}</text>`,
    );
    legendY += 16;
  }

  parts.push('</svg>');
  return parts.join('\n') + '\n';
}
