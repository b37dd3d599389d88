import type { StatsPayload } from './types';

export interface PieSlice {
  label: string;
  value: number;
  color: string;
}

/** Reviewed vs unreviewed, straight from the stats payload. */
export function progressPie(stats: StatsPayload): PieSlice[] {
  return [
    { label: 'reviewed', value: stats.reviewed, color: '#6b4fa0' },
    { label: 'unreviewed', value: stats.unreviewed, color: '#d8d2e6' },
  ];
}

/** Distribution of judgements by label. */
export function labelPie(stats: StatsPayload): PieSlice[] {
  return [
    { label: 'include', value: stats.label_counts.include, color: '#2e8b57' },
    { label: 'exclude', value: stats.label_counts.exclude, color: '#b5443c' },
    { label: 'maybe', value: stats.label_counts.maybe, color: '#d9a441' },
  ];
}

/** Discovery curve points: x = studies screened, y = cumulative includes. */
export function discoveryPoints(stats: StatsPayload): [number, number][] {
  return stats.discovery_curve.map(([x, y]) => [x, y]);
}

export function renderPieSvg(slices: PieSlice[], size = 120): string {
  const total = slices.reduce((s, sl) => s + sl.value, 0);
  const r = size / 2;
  if (total === 0) {
    return `<svg width="${size}" height="${size}" viewBox="0 0 ${size} ${size}"><circle cx="${r}" cy="${r}" r="${r - 1}" fill="#eee"/></svg>`;
  }
  let angle = -Math.PI / 2;
  const paths = slices
    .filter((s) => s.value > 0)
    .map((s) => {
      const frac = s.value / total;
      if (frac >= 0.999) {
        return `<circle cx="${r}" cy="${r}" r="${r - 1}" fill="${s.color}"><title>${s.label}: ${s.value}</title></circle>`;
      }
      const a0 = angle;
      angle += frac * 2 * Math.PI;
      const x0 = r + (r - 1) * Math.cos(a0);
      const y0 = r + (r - 1) * Math.sin(a0);
      const x1 = r + (r - 1) * Math.cos(angle);
      const y1 = r + (r - 1) * Math.sin(angle);
      const large = frac > 0.5 ? 1 : 0;
      return `<path d="M${r},${r} L${x0.toFixed(2)},${y0.toFixed(2)} A${r - 1},${r - 1} 0 ${large} 1 ${x1.toFixed(2)},${y1.toFixed(2)} Z" fill="${s.color}"><title>${s.label}: ${s.value}</title></path>`;
    })
    .join('');
  return `<svg width="${size}" height="${size}" viewBox="0 0 ${size} ${size}">${paths}</svg>`;
}

export function renderDiscoverySvg(
  stats: StatsPayload,
  width = 260,
  height = 120,
): string {
  const points = discoveryPoints(stats);
  const pad = 10;
  if (points.length === 0) {
    return `<svg width="${width}" height="${height}" data-points="0"></svg>`;
  }
  const maxX = Math.max(...points.map((p) => p[0]), 1);
  const maxY = Math.max(...points.map((p) => p[1]), 1);
  const sx = (x: number) => pad + (x / maxX) * (width - 2 * pad);
  const sy = (y: number) => height - pad - (y / maxY) * (height - 2 * pad);
  const path = points
    .map(([x, y], i) => `${i === 0 ? 'M' : 'L'}${sx(x).toFixed(1)},${sy(y).toFixed(1)}`)
    .join(' ');
  const dots = points
    .map(([x, y]) => `<circle cx="${sx(x).toFixed(1)}" cy="${sy(y).toFixed(1)}" r="2" fill="#6b4fa0"/>`)
    .join('');
  return `<svg width="${width}" height="${height}" data-points="${points.length}"><path d="${path}" fill="none" stroke="#6b4fa0" stroke-width="1.5"/>${dots}</svg>`;
}
