/** View models for the review dashboard.
 *
 * All numbers come from service responses; the client only re-derives the
 * percentage as a display-time consistency check.
 */
import type { AblationRow, DistributionResponse, DistributionRow } from './types.js';

export interface DistributionView {
  rows: DistributionRow[];
  totals: DistributionRow;
  consistent: boolean;
}

function pctConsistent(row: DistributionRow): boolean {
  const expected = row.total === 0 ? 0 : (100 * row.non_issue_count) / row.total;
  return Math.abs(expected - row.non_issue_pct) < 1e-6;
}

export function distributionView(response: DistributionResponse): DistributionView {
  const sums = response.rows.reduce(
    (acc, row) => ({
      non_issue: acc.non_issue + row.non_issue_count,
      issue: acc.issue + row.issue_count,
    }),
    { non_issue: 0, issue: 0 },
  );
  const consistent =
    response.rows.every(pctConsistent) &&
    pctConsistent(response.totals) &&
    sums.non_issue === response.totals.non_issue_count &&
    sums.issue === response.totals.issue_count;
  return { rows: response.rows, totals: response.totals, consistent };
}

export function formatPct(value: number): string {
  return `${value.toFixed(2)}%`;
}

export interface AblationView {
  hasRows: boolean; // false: labeling-only mode, no evaluation has been published
  rows: Array<{ feature_set: string; precision: string; recall: string; f1: string }>;
  bestFeatureSet: string | null;
}

export function ablationView(rows: AblationRow[]): AblationView {
  if (rows.length === 0) {
    return { hasRows: false, rows: [], bestFeatureSet: null };
  }
  let best = rows[0]!;
  for (const row of rows) {
    if (row.f1 > best.f1) best = row;
  }
  return {
    hasRows: true,
    rows: rows.map((row) => ({
      feature_set: row.feature_set,
      precision: row.precision.toFixed(2),
      recall: row.recall.toFixed(2),
      f1: row.f1.toFixed(2),
    })),
    bestFeatureSet: best.feature_set,
  };
}
