import type { PagePayload } from '../src/types';

export function makePage(pmids: string[], fingerprint = 'fp-1'): PagePayload {
  return {
    session_id: 's1',
    status: 'screening',
    page_no: 1,
    page_size: pmids.length,
    items: pmids.map((pmid, i) => ({
      pmid,
      title: `Study ${pmid}`,
      abstract: `Abstract ${pmid}`,
      authors: [`Author ${pmid}`],
      score: 1 - i * 0.1,
      rank_on_page: i + 1,
      label: null,
    })),
    unjudged_total: pmids.length,
    page_fingerprint: fingerprint,
  };
}
