import type { JobPayload, Label, PagePayload, StatsPayload } from './types';

declare global {
  interface Window {
    DENSESCREEN_API?: string;
  }
}

const base = () =>
  (typeof window !== 'undefined' && window.DENSESCREEN_API) || '';

async function request<T>(path: string, init?: RequestInit): Promise<T> {
  const resp = await fetch(base() + path, init);
  const body = await resp.json();
  if (!resp.ok) {
    const err = new Error(body.message || resp.statusText) as Error & {
      error_code?: string;
    };
    err.error_code = body.error_code;
    throw err;
  }
  return body as T;
}

export const api = {
  getPage: (sessionId: string) =>
    request<PagePayload>(`/reviews/${sessionId}/page`),
  getStats: (sessionId: string) =>
    request<StatsPayload>(`/reviews/${sessionId}/stats`),
  getJob: (jobId: string) => request<JobPayload>(`/jobs/${jobId}`),
  submitJudgements: (
    sessionId: string,
    items: { pmid: string; label: Label }[],
    pageFingerprint: string,
  ) =>
    request<{ job_id: string }>(`/reviews/${sessionId}/judgements`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ items, page_fingerprint: pageFingerprint }),
    }),
  pause: (sessionId: string) =>
    request<{ status: string }>(`/reviews/${sessionId}/pause`, { method: 'POST' }),
  resume: (sessionId: string) =>
    request<{ status: string }>(`/reviews/${sessionId}/resume`, { method: 'POST' }),
  uploadCorpus: (file: File) => {
    const form = new FormData();
    form.append('file', file);
    return request<{ corpus_id: string; job_id: string }>('/corpora', {
      method: 'POST',
      body: form,
    });
  },
  createReview: (body: unknown) =>
    request<{ session_id: string }>('/reviews', {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(body),
    }),
};

/** Poll a job until it settles; backs off between attempts. */
export async function pollJob(
  jobId: string,
  getJob: (id: string) => Promise<JobPayload> = api.getJob,
  baseDelayMs = 100,
): Promise<JobPayload> {
  let delay = baseDelayMs;
  for (;;) {
    const job = await getJob(jobId);
    if (job.state === 'succeeded') return job;
    if (job.state === 'failed') throw new Error(job.error || 'job failed');
    await new Promise((r) => setTimeout(r, delay));
    delay = Math.min(delay * 2, 2000);
  }
}
