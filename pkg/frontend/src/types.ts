export type Label = 'include' | 'exclude' | 'maybe';

export interface PageItem {
  pmid: string;
  title: string;
  abstract: string;
  authors: string[];
  score: number;
  rank_on_page: number;
  label: Label | null; // committed judgement, if any
}

export interface PagePayload {
  session_id: string;
  status: string;
  page_no: number;
  page_size: number;
  items: PageItem[];
  unjudged_total: number;
  page_fingerprint: string;
}

export interface StatsPayload {
  reviewed: number;
  unreviewed: number;
  label_counts: Record<Label, number>;
  discovery_curve: [number, number][];
}

export interface JobPayload {
  job_id: string;
  state: 'queued' | 'running' | 'succeeded' | 'failed';
  error: string | null;
}
