/** Wire types of the triage service API. */

export type Verdict = 'Issue' | 'NonIssue';

export interface ReportView {
  id: string;
  project: string;
  summary: string;
  description: string;
  created_at: string;
}

export interface Progress {
  labeled: number;
  total: number;
}

export interface NextReportResponse {
  report: ReportView | null;
  progress: Progress;
}

export interface PatternInfo {
  code: string;
  trigger_roots: string[];
  trigger_tags: string[];
  question_particle: boolean;
  scope: string;
}

export interface Prediction {
  id: string;
  verdict: Verdict;
  margin: number;
  confidence: number;
  matched_patterns: string[];
  gated: boolean;
}

export interface LabelBody {
  report_id: string;
  verdict: Verdict;
  pattern_code?: string;
  labeler: string;
}

export interface DistributionRow {
  project: string;
  non_issue_count: number;
  issue_count: number;
  total: number;
  non_issue_pct: number;
}

export interface DistributionResponse {
  rows: DistributionRow[];
  totals: DistributionRow;
}

export interface AblationRow {
  feature_set: string;
  precision: number;
  recall: number;
  f1: number;
}
