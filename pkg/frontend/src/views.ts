import { labelPie, progressPie, renderDiscoverySvg, renderPieSvg } from './charts';
import { labelOf, pageComplete, ScreenState } from './state';
import type { PageItem } from './types';

function esc(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

function studyRow(state: ScreenState, item: PageItem, selected: boolean): string {
  const label = labelOf(state, item.pmid);
  const classes = [
    'study',
    label ? 'assessed' : '', // assessed studies get the purple highlight
    selected ? 'selected' : '',
    state.expanded[item.pmid] ? 'expanded' : '',
  ]
    .filter(Boolean)
    .join(' ');
  const body = state.expanded[item.pmid]
    ? `<p class="abstract">${esc(item.abstract)}</p>
       <div class="judge-buttons" data-pmid="${item.pmid}">
         <button data-label="include">Include</button>
         <button data-label="exclude">Exclude</button>
         <button data-label="maybe">Maybe</button>
       </div>`
    : '';
  return `<li class="${classes}" data-pmid="${item.pmid}">
    <span class="rank">${item.rank_on_page}</span>
    <span class="title">${esc(item.title)}</span>
    ${label ? `<span class="label label-${label}">${label}</span>` : ''}
    ${body}
  </li>`;
}

export function renderRankingMode(state: ScreenState): string {
  const page = state.page;
  if (!page) return '<p class="loading">loading…</p>';
  const rows = page.items
    .map((item, i) => studyRow(state, item, i === state.selectionIndex))
    .join('\n');
  const stats = state.stats;
  const charts = stats
    ? `<div class="charts">
         <figure>${renderPieSvg(progressPie(stats))}<figcaption>reviewed ${stats.reviewed} / unreviewed ${stats.unreviewed}</figcaption></figure>
         <figure>${renderPieSvg(labelPie(stats))}<figcaption>include ${stats.label_counts.include} · exclude ${stats.label_counts.exclude} · maybe ${stats.label_counts.maybe}</figcaption></figure>
         <figure>${renderDiscoverySvg(stats)}<figcaption>relevance discovery</figcaption></figure>
       </div>`
    : '';
  const complete = pageComplete(state);
  return `<section class="ranking-mode">
    <header class="query-panel" id="pico-panel"></header>
    <ol class="study-list">${rows}</ol>
    <footer class="page-controls">
      <span class="page-no">page ${page.page_no}</span>
      <button id="pause-btn">Pause</button>
      <label><input type="checkbox" id="stop-last-page"> stop at last page</label>
      <button id="submit-page" ${complete && !state.submitting ? '' : 'disabled'}>Submit page</button>
      <button id="enter-focus">Focus mode</button>
    </footer>
    ${charts}
    ${state.error ? `<p class="error">${esc(state.error)}</p>` : ''}
  </section>`;
}

export function renderFocusMode(state: ScreenState): string {
  const page = state.page;
  if (!page || page.items.length === 0) return '<p class="loading">loading…</p>';
  const item = page.items[state.focusIndex];
  const label = labelOf(state, item.pmid);
  const complete = pageComplete(state);
  return `<section class="focus-mode">
    <header>
      <h2>${esc(item.title)}</h2>
      <p class="authors">${esc(item.authors.join(', '))}</p>
      <p class="pmid">PMID ${item.pmid}</p>
    </header>
    <article class="abstract">${esc(item.abstract)}</article>
    <div class="assess" data-pmid="${item.pmid}">
      <span class="rank-index">${state.focusIndex + 1} / ${page.items.length}</span>
      <button data-label="include" ${label === 'include' ? 'class="active"' : ''}>Include (i)</button>
      <button data-label="exclude" ${label === 'exclude' ? 'class="active"' : ''}>Exclude (e)</button>
      <button data-label="maybe" ${label === 'maybe' ? 'class="active"' : ''}>Maybe (m)</button>
      <span class="page-no">page ${page.page_no}</span>
    </div>
    <nav>
      <button id="prev-study" ${state.focusIndex === 0 ? 'disabled' : ''}>&larr; previous</button>
      <button id="next-study" ${state.focusIndex === page.items.length - 1 ? 'disabled' : ''}>next &rarr;</button>
    </nav>
    ${complete ? '<p class="page-complete">Page complete — submit to re-rank.</p>' : ''}
  </section>`;
}

export function render(state: ScreenState): string {
  return state.mode === 'focus' ? renderFocusMode(state) : renderRankingMode(state);
}
