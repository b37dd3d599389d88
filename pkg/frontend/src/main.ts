import { api, pollJob } from './api';
import {
  enterFocusMode,
  handleKey,
  initialState,
  loadPage,
  ScreenState,
  setPending,
  submitPage,
} from './state';
import { render } from './views';
import type { Label } from './types';

const root = document.getElementById('app')!;
let state: ScreenState;

function draw() {
  root.innerHTML = render(state);
}

function update(next: ScreenState) {
  state = next;
  draw();
}

async function refresh() {
  const [page, stats] = await Promise.all([
    api.getPage(state.sessionId),
    api.getStats(state.sessionId),
  ]);
  update({ ...loadPage(state, page), stats });
}

document.addEventListener('keydown', (e) => {
  const target = e.target as HTMLElement;
  if (target.tagName === 'INPUT' || target.tagName === 'TEXTAREA') return;
  const next = handleKey(state, e.key);
  if (next !== state) {
    e.preventDefault();
    update(next);
  }
});

root.addEventListener('click', async (e) => {
  const el = e.target as HTMLElement;
  const labelBtn = el.closest('button[data-label]');
  if (labelBtn) {
    const pmid = (labelBtn.closest('[data-pmid]') as HTMLElement).dataset.pmid!;
    update(setPending(state, pmid, labelBtn.getAttribute('data-label') as Label));
    return;
  }
  switch (el.id) {
    case 'enter-focus':
      update(enterFocusMode(state));
      break;
    case 'prev-study':
      update(handleKey(state, 'ArrowLeft'));
      break;
    case 'next-study':
      update(handleKey(state, 'ArrowRight'));
      break;
    case 'submit-page':
      update(await submitPage(state, { ...api, pollJob: (id) => pollJob(id) }));
      break;
    case 'pause-btn':
      await api.pause(state.sessionId);
      break;
  }
});

const params = new URLSearchParams(window.location.search);
const sessionId = params.get('session');
if (!sessionId) {
  root.innerHTML = '<p>append ?session=&lt;session_id&gt; to the URL</p>';
} else {
  state = initialState(sessionId);
  draw();
  refresh().catch((err) => {
    root.innerHTML = `<p class="error">${err}</p>`;
  });
}
