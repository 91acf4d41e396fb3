/** In-memory double of the triage service, mirroring its contract:
 * last-write-wins labels, 409 on label-invariant violations, 404 on unknown
 * reports, distribution over actively labeled reports only.
 */
import type { DistributionRow, PatternInfo, ReportView, Verdict } from '../src/types.js';

export interface MockOptions {
  reports: ReportView[];
  patterns?: string[];
  ablation?: Array<{ feature_set: string; precision: number; recall: number; f1: number }>;
  failNextSubmit?: boolean;
  predict?: (summary: string) => {
    verdict: Verdict;
    margin: number;
    confidence: number;
    matched_patterns: string[];
    gated: boolean;
  };
}

const DEFAULT_PATTERNS = [
  'NI_REQUEST',
  'NI_YESNO_QUESTION',
  'NI_WHY_QUESTION',
  'NI_POSSIBLE',
  'NI_INADVERTENTLY',
];

function json(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { 'content-type': 'application/json' },
  });
}

function error(status: number, code: string, message: string): Response {
  return json(status, { error: { code, message } });
}

export class MockServer {
  labels = new Map<string, { verdict: Verdict; pattern_code?: string; labeler: string }>();
  submitCalls = 0;
  private failNextSubmit: boolean;

  constructor(private readonly options: MockOptions) {
    this.failNextSubmit = options.failNextSubmit ?? false;
  }

  get patterns(): PatternInfo[] {
    return (this.options.patterns ?? DEFAULT_PATTERNS).map((code) => ({
      code,
      trigger_roots: [],
      trigger_tags: [],
      question_particle: false,
      scope: 'Sentence',
    }));
  }

  fetch = async (input: string, init?: RequestInit): Promise<Response> => {
    const url = new URL(input, 'http://mock');
    const path = url.pathname;
    if (path === '/patterns') {
      return json(200, { patterns: this.patterns });
    }
    if (path === '/reports/next') {
      const pending = this.options.reports.filter((r) => !this.labels.has(r.id));
      return json(200, {
        report: pending[0] ?? null,
        progress: { labeled: this.labels.size, total: this.options.reports.length },
      });
    }
    if (path === '/labels' && init?.method === 'POST') {
      this.submitCalls += 1;
      if (this.failNextSubmit) {
        this.failNextSubmit = false;
        throw new TypeError('network failure');
      }
      const body = JSON.parse(String(init.body)) as {
        report_id: string;
        verdict: Verdict;
        pattern_code?: string;
        labeler: string;
      };
      const report = this.options.reports.find((r) => r.id === body.report_id);
      if (!report) return error(404, 'unknown_report', `unknown report id '${body.report_id}'`);
      if (body.verdict === 'NonIssue' && !body.pattern_code) {
        return error(409, 'label_invariant', 'non-issue labels require a pattern code');
      }
      if (body.verdict === 'Issue' && body.pattern_code) {
        return error(409, 'label_invariant', 'issue labels must not carry a pattern code');
      }
      if (body.pattern_code && !this.patterns.some((p) => p.code === body.pattern_code)) {
        return error(409, 'label_invariant', `pattern code '${body.pattern_code}' is not in the catalog`);
      }
      this.labels.set(body.report_id, {
        verdict: body.verdict,
        pattern_code: body.pattern_code,
        labeler: body.labeler,
      });
      return json(200, { status: 'stored', report_id: body.report_id });
    }
    if (path === '/predict' && init?.method === 'POST') {
      const body = JSON.parse(String(init.body)) as { summary: string };
      const custom = this.options.predict;
      if (!custom) return error(503, 'model_not_loaded', 'no model loaded');
      const prediction = custom(body.summary);
      return json(200, { id: 'hash', ...prediction });
    }
    if (path === '/stats/distribution') {
      const byProject = new Map<string, { non_issue: number; issue: number }>();
      for (const [reportId, label] of this.labels) {
        const report = this.options.reports.find((r) => r.id === reportId);
        if (!report) continue;
        const slot = byProject.get(report.project) ?? { non_issue: 0, issue: 0 };
        if (label.verdict === 'NonIssue') slot.non_issue += 1;
        else slot.issue += 1;
        byProject.set(report.project, slot);
      }
      const rows: DistributionRow[] = [...byProject.entries()]
        .sort(([a], [b]) => (a < b ? -1 : 1))
        .map(([project, c]) => ({
          project,
          non_issue_count: c.non_issue,
          issue_count: c.issue,
          total: c.non_issue + c.issue,
          non_issue_pct: c.non_issue + c.issue ? (100 * c.non_issue) / (c.non_issue + c.issue) : 0,
        }));
      const nonIssue = rows.reduce((s, r) => s + r.non_issue_count, 0);
      const issue = rows.reduce((s, r) => s + r.issue_count, 0);
      return json(200, {
        rows,
        totals: {
          project: 'Total',
          non_issue_count: nonIssue,
          issue_count: issue,
          total: nonIssue + issue,
          non_issue_pct: nonIssue + issue ? (100 * nonIssue) / (nonIssue + issue) : 0,
        },
      });
    }
    if (path === '/stats/ablation') {
      return json(200, { rows: this.options.ablation ?? [] });
    }
    return error(404, 'not_found', path);
  };
}

export function makeReport(id: string, project = 'Cards', summary = 'Ekran açılamadı.'): ReportView {
  return {
    id,
    project,
    summary,
    description: summary,
    created_at: '2020-10-01T09:00:00+00:00',
  };
}
