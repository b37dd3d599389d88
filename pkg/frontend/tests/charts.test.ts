import { describe, expect, it } from 'vitest';
import {
  discoveryPoints,
  labelPie,
  progressPie,
  renderDiscoverySvg,
  renderPieSvg,
} from '../src/charts';
import { renderRankingMode } from '../src/views';
import { initialState, loadPage } from '../src/state';
import type { StatsPayload } from '../src/types';
import { makePage } from './helpers';

// golden /stats payload: 20 judged (3 include, 15 exclude, 2 maybe), 10 left
const goldenStats: StatsPayload = {
  reviewed: 20,
  unreviewed: 10,
  label_counts: { include: 3, exclude: 15, maybe: 2 },
  discovery_curve: [
    [1, 1], [2, 1], [3, 2], [4, 2], [5, 2], [6, 2], [7, 2], [8, 2], [9, 2], [10, 2],
    [11, 2], [12, 2], [13, 2], [14, 2], [15, 2], [16, 3], [17, 3], [18, 3], [19, 3], [20, 3],
  ],
};

describe('chart data from the stats payload', () => {
  it('progress pie equals reviewed/unreviewed', () => {
    const slices = progressPie(goldenStats);
    expect(slices.map((s) => [s.label, s.value])).toEqual([
      ['reviewed', 20],
      ['unreviewed', 10],
    ]);
  });

  it('label pie equals per-label counts', () => {
    const slices = labelPie(goldenStats);
    expect(slices.map((s) => [s.label, s.value])).toEqual([
      ['include', 3],
      ['exclude', 15],
      ['maybe', 2],
    ]);
  });

  it('discovery curve keeps one point per judgement', () => {
    expect(discoveryPoints(goldenStats)).toHaveLength(20);
    expect(discoveryPoints(goldenStats)[19]).toEqual([20, 3]);
  });

  it('discovery svg carries one dot per judgement', () => {
    const svg = renderDiscoverySvg(goldenStats);
    expect(svg).toContain('data-points="20"');
    expect(svg.match(/<circle/g)).toHaveLength(20);
  });

  it('pie svg covers all non-zero slices', () => {
    const svg = renderPieSvg(labelPie(goldenStats));
    expect(svg).toContain('include: 3');
    expect(svg).toContain('exclude: 15');
    expect(svg).toContain('maybe: 2');
  });

  it('empty stats render without NaN geometry', () => {
    const empty: StatsPayload = {
      reviewed: 0,
      unreviewed: 10,
      label_counts: { include: 0, exclude: 0, maybe: 0 },
      discovery_curve: [],
    };
    expect(renderPieSvg(labelPie(empty))).not.toContain('NaN');
    expect(renderDiscoverySvg(empty)).toContain('data-points="0"');
  });
});

describe('ranking mode rendering', () => {
  it('rendered counts equal the golden stats payload', () => {
    const s = {
      ...loadPage(initialState('s1'), makePage(['101', '102'])),
      stats: goldenStats,
    };
    const html = renderRankingMode(s);
    expect(html).toContain('reviewed 20 / unreviewed 10');
    expect(html).toContain('include 3 · exclude 15 · maybe 2');
  });

  it('assessed studies are highlighted, fresh page has none', () => {
    let s = loadPage(initialState('s1'), makePage(['101', '102', '103']));
    expect(renderRankingMode(s).match(/assessed/g)).toBeNull();
    s = { ...s, pending: { '101': 'include', '103': 'maybe' } };
    expect(renderRankingMode(s).match(/class="study assessed/g)).toHaveLength(2);
  });

  it('submit stays disabled until the page is complete', () => {
    let s = loadPage(initialState('s1'), makePage(['101', '102']));
    expect(renderRankingMode(s)).toContain('id="submit-page" disabled');
    s = { ...s, pending: { '101': 'include', '102': 'exclude' } };
    expect(renderRankingMode(s)).toContain('id="submit-page" >');
  });
});
