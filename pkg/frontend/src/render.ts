/** Pure HTML renderers; main.ts injects the results into the page. */
import { AblationView, DistributionView, formatPct } from './dashboard.js';
import { KEY_HELP } from './keyboard.js';
import { SessionState, canSubmit, patternMenuEnabled } from './session.js';

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

export function renderSession(state: SessionState): string {
  if (state.phase === 'idle') return '<p>Connecting…</p>';
  if (state.phase === 'done') {
    return `<p class="done">All reports labeled (${state.progress.labeled}/${state.progress.total}).</p>`;
  }
  const report = state.report!;
  const menuEnabled = patternMenuEnabled(state);
  const hint = state.hint;
  const hintHtml = hint
    ? `<div class="hint ${hint.gated ? 'gated' : ''}">
        model: <strong>${hint.verdict}</strong>
        (confidence ${(100 * hint.confidence).toFixed(0)}%)
        ${hint.gated ? '<span class="badge">needs verification</span>' : ''}
        ${hint.matched_patterns.length ? `patterns: ${hint.matched_patterns.join(', ')}` : ''}
      </div>`
    : '<div class="hint muted">no model hint</div>';
  const patternButtons = state.patterns
    .map(
      (pattern, index) => `
      <button class="pattern ${state.patternCode === pattern.code ? 'selected' : ''}"
              data-pattern="${pattern.code}" ${menuEnabled ? '' : 'disabled'}>
        ${index + 1}. ${pattern.code}
      </button>`,
    )
    .join('');
  return `
    <div class="progress">${state.progress.labeled}/${state.progress.total} labeled</div>
    <article class="report">
      <header><span class="project">${escapeHtml(report.project)}</span> ${escapeHtml(report.id)}</header>
      <h2>${escapeHtml(report.summary)}</h2>
      <p>${escapeHtml(report.description)}</p>
    </article>
    ${hintHtml}
    <div class="verdicts">
      <button data-verdict="Issue" class="${state.verdict === 'Issue' ? 'selected' : ''}">Issue (i)</button>
      <button data-verdict="NonIssue" class="${state.verdict === 'NonIssue' ? 'selected' : ''}">Non-issue (n)</button>
    </div>
    <div class="patterns ${menuEnabled ? '' : 'disabled'}">${patternButtons}</div>
    <button id="submit" ${canSubmit(state) ? '' : 'disabled'}>Submit (Enter)</button>
    ${state.inlineError ? `<p class="error">${escapeHtml(state.inlineError)}</p>` : ''}
    ${state.needsRetry ? '<p class="error">Network failure; press r to retry. Your selection is kept.</p>' : ''}
    <footer class="keys">${KEY_HELP.map(([key, what]) => `<span><kbd>${key}</kbd> ${what}</span>`).join(' ')}</footer>
  `;
}

export function renderDistribution(view: DistributionView): string {
  if (view.rows.length === 0) {
    return '<p class="muted">No labels yet.</p>';
  }
  const row = (r: { project: string; non_issue_count: number; issue_count: number; total: number; non_issue_pct: number }) => `
    <tr><td>${escapeHtml(r.project)}</td>
        <td>${r.non_issue_count} (${formatPct(r.non_issue_pct)})</td>
        <td>${r.issue_count}</td><td>${r.total}</td></tr>`;
  return `
    <table class="distribution">
      <thead><tr><th>Project</th><th>Non-issue</th><th>Issue</th><th>Total</th></tr></thead>
      <tbody>${view.rows.map(row).join('')}</tbody>
      <tfoot>${row(view.totals)}</tfoot>
    </table>
    ${view.consistent ? '' : '<p class="error">Warning: distribution totals are inconsistent.</p>'}
  `;
}

export function renderAblation(view: AblationView): string {
  if (!view.hasRows) {
    return '<p class="muted">No evaluation published yet; labeling-only mode.</p>';
  }
  const rows = view.rows
    .map(
      (r) => `
      <tr class="${r.feature_set === view.bestFeatureSet ? 'best' : ''}">
        <td>${escapeHtml(r.feature_set)}</td><td>${r.precision}</td><td>${r.recall}</td><td>${r.f1}</td>
      </tr>`,
    )
    .join('');
  return `
    <table class="ablation">
      <thead><tr><th>Features</th><th>P</th><th>R</th><th>F</th></tr></thead>
      <tbody>${rows}</tbody>
    </table>
  `;
}
