import type { Label, PagePayload, StatsPayload } from './types';

export type Mode = 'ranking' | 'focus';

export interface ScreenState {
  mode: Mode;
  sessionId: string;
  page: PagePayload | null;
  stats: StatsPayload | null;
  /** unsubmitted judgements, pmid -> label; always a subset of page pmids */
  pending: Record<string, Label>;
  expanded: Record<string, boolean>;
  focusIndex: number; // focus mode: which page item is shown
  selectionIndex: number; // ranking mode: highlighted row
  submitting: boolean;
  /** fingerprints already sent, so a page is never submitted twice */
  submittedFingerprints: string[];
  error: string | null;
}

export function initialState(sessionId: string): ScreenState {
  return {
    mode: 'ranking',
    sessionId,
    page: null,
    stats: null,
    pending: {},
    expanded: {},
    focusIndex: 0,
    selectionIndex: 0,
    submitting: false,
    submittedFingerprints: [],
    error: null,
  };
}

export function loadPage(state: ScreenState, page: PagePayload): ScreenState {
  return {
    ...state,
    page,
    pending: {},
    expanded: {},
    focusIndex: 0,
    selectionIndex: 0,
    error: null,
  };
}

/** Effective label for a page item: pending overrides committed. */
export function labelOf(state: ScreenState, pmid: string): Label | null {
  if (state.pending[pmid]) return state.pending[pmid];
  const item = state.page?.items.find((it) => it.pmid === pmid);
  return item?.label ?? null;
}

export function judgedCount(state: ScreenState): number {
  if (!state.page) return 0;
  return state.page.items.filter((it) => labelOf(state, it.pmid) !== null).length;
}

export function pageComplete(state: ScreenState): boolean {
  return state.page !== null && judgedCount(state) === state.page.items.length;
}

function clamp(i: number, n: number): number {
  return Math.max(0, Math.min(i, n - 1));
}

/** Next item after `from` without any label yet; falls back to `from`. */
function nextUnjudged(state: ScreenState, from: number): number {
  const items = state.page?.items ?? [];
  for (let i = from + 1; i < items.length; i++) {
    if (labelOf(state, items[i].pmid) === null) return i;
  }
  for (let i = 0; i < items.length; i++) {
    if (i !== from && labelOf(state, items[i].pmid) === null) return i;
  }
  return from;
}

function judgeFocused(state: ScreenState, label: Label): ScreenState {
  const items = state.page?.items ?? [];
  if (items.length === 0) return state;
  const pmid = items[state.focusIndex].pmid;
  const next = { ...state, pending: { ...state.pending, [pmid]: label } };
  return { ...next, focusIndex: nextUnjudged(next, state.focusIndex) };
}

const FOCUS_LABEL_KEYS: Record<string, Label> = {
  i: 'include',
  e: 'exclude',
  m: 'maybe',
};

/** Pure keyboard reducer; unbound keys are no-ops. */
export function handleKey(state: ScreenState, key: string): ScreenState {
  const items = state.page?.items ?? [];
  if (state.mode === 'focus') {
    if (key === 'ArrowLeft') {
      return { ...state, focusIndex: clamp(state.focusIndex - 1, items.length) };
    }
    if (key === 'ArrowRight') {
      return { ...state, focusIndex: clamp(state.focusIndex + 1, items.length) };
    }
    const label = FOCUS_LABEL_KEYS[key];
    if (label) return judgeFocused(state, label);
    if (key === 'Escape') return { ...state, mode: 'ranking' };
    return state;
  }
  // ranking mode
  if (key === 'ArrowUp') {
    return { ...state, selectionIndex: clamp(state.selectionIndex - 1, items.length) };
  }
  if (key === 'ArrowDown') {
    return { ...state, selectionIndex: clamp(state.selectionIndex + 1, items.length) };
  }
  if (key === 'Enter' && items.length > 0) {
    const pmid = items[state.selectionIndex].pmid;
    return {
      ...state,
      expanded: { ...state.expanded, [pmid]: !state.expanded[pmid] },
    };
  }
  return state;
}

export function setPending(state: ScreenState, pmid: string, label: Label): ScreenState {
  if (!state.page?.items.some((it) => it.pmid === pmid)) return state;
  return { ...state, pending: { ...state.pending, [pmid]: label } };
}

export function enterFocusMode(state: ScreenState): ScreenState {
  const items = state.page?.items ?? [];
  let start = items.findIndex((it) => labelOf(state, it.pmid) === null);
  if (start < 0) start = 0;
  return { ...state, mode: 'focus', focusIndex: start };
}

export interface SubmitDeps {
  submitJudgements: (
    sessionId: string,
    items: { pmid: string; label: Label }[],
    pageFingerprint: string,
  ) => Promise<{ job_id: string }>;
  pollJob: (jobId: string) => Promise<unknown>;
  getPage: (sessionId: string) => Promise<PagePayload>;
  getStats: (sessionId: string) => Promise<StatsPayload>;
}

/**
 * Submit the completed page, wait for the re-rank job, and load the new
 * page and charts. A fingerprint is sent at most once; stale submissions
 * reload the committed page instead.
 */
export async function submitPage(
  state: ScreenState,
  deps: SubmitDeps,
): Promise<ScreenState> {
  if (!state.page || state.submitting) return state;
  if (!pageComplete(state)) {
    return { ...state, error: 'judge every study on the page before submitting' };
  }
  const fingerprint = state.page.page_fingerprint;
  if (state.submittedFingerprints.includes(fingerprint)) return state;
  const items = state.page.items.map((it) => ({
    pmid: it.pmid,
    label: labelOf(state, it.pmid) as Label,
  }));
  const inFlight: ScreenState = {
    ...state,
    submitting: true,
    submittedFingerprints: [...state.submittedFingerprints, fingerprint],
  };
  try {
    const { job_id } = await deps.submitJudgements(state.sessionId, items, fingerprint);
    await deps.pollJob(job_id);
  } catch (err) {
    const code = (err as { error_code?: string }).error_code;
    if (code !== 'StaleSubmission') {
      // keep pending judgements so nothing the user did is lost
      return {
        ...inFlight,
        submitting: false,
        error: err instanceof Error ? err.message : String(err),
      };
    }
  }
  const [page, stats] = await Promise.all([
    deps.getPage(state.sessionId),
    deps.getStats(state.sessionId),
  ]);
  return { ...loadPage(inFlight, page), stats, submitting: false };
}
