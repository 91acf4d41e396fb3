/** Labeling session state machine.
 *
 * The guards here mirror the service's label invariant: a request that
 * would be rejected with 409 (non-issue without a pattern, issue with one)
 * cannot be constructed. Network failures keep the in-progress selection
 * and expose a retry flag instead of losing work.
 */
import { ApiClient, ApiError } from './api.js';
import type { PatternInfo, Prediction, Progress, ReportView, Verdict } from './types.js';

export type Phase = 'idle' | 'labeling' | 'done';

export interface SessionState {
  phase: Phase;
  report: ReportView | null;
  patterns: PatternInfo[];
  verdict: Verdict | null;
  patternCode: string | null;
  hint: Prediction | null;
  progress: Progress;
  inlineError: string | null;
  needsRetry: boolean;
}

export function patternMenuEnabled(state: SessionState): boolean {
  return state.phase === 'labeling' && state.verdict === 'NonIssue';
}

export function canSubmit(state: SessionState): boolean {
  if (state.phase !== 'labeling' || state.report === null) return false;
  if (state.verdict === 'Issue') return true;
  return state.verdict === 'NonIssue' && state.patternCode !== null;
}

export class LabelingSession {
  state: SessionState = {
    phase: 'idle',
    report: null,
    patterns: [],
    verdict: null,
    patternCode: null,
    hint: null,
    progress: { labeled: 0, total: 0 },
    inlineError: null,
    needsRetry: false,
  };

  constructor(
    private readonly api: ApiClient,
    readonly labeler: string = 'ui',
    private readonly strategy: string = 'RoundRobinByProject',
    private readonly onChange: (state: SessionState) => void = () => {},
  ) {}

  private emit(): void {
    this.onChange(this.state);
  }

  async start(): Promise<void> {
    this.state.patterns = await this.api.patterns();
    await this.advance();
  }

  async advance(): Promise<void> {
    const next = await this.api.nextReport(this.strategy);
    this.state.progress = next.progress;
    this.state.verdict = null;
    this.state.patternCode = null;
    this.state.hint = null;
    this.state.inlineError = null;
    this.state.needsRetry = false;
    if (next.report === null) {
      this.state.report = null;
      this.state.phase = 'done';
      this.emit();
      return;
    }
    this.state.report = next.report;
    this.state.phase = 'labeling';
    this.emit();
    try {
      this.state.hint = await this.api.predict(next.report.summary, next.report.description);
    } catch {
      this.state.hint = null; // no model loaded: labeling continues without a hint
    }
    this.emit();
  }

  selectVerdict(verdict: Verdict): void {
    if (this.state.phase !== 'labeling') return;
    this.state.verdict = verdict;
    if (verdict === 'Issue') {
      this.state.patternCode = null; // the invariant: issue labels carry no pattern
    }
    this.state.inlineError = null;
    this.emit();
  }

  selectPattern(code: string): void {
    if (!patternMenuEnabled(this.state)) return;
    if (!this.state.patterns.some((p) => p.code === code)) return;
    this.state.patternCode = code;
    this.emit();
  }

  selectPatternByIndex(index: number): void {
    const pattern = this.state.patterns[index];
    if (pattern) this.selectPattern(pattern.code);
  }

  buildLabelBody() {
    if (!canSubmit(this.state) || this.state.report === null || this.state.verdict === null) {
      return null;
    }
    const body: {
      report_id: string;
      verdict: Verdict;
      pattern_code?: string;
      labeler: string;
    } = {
      report_id: this.state.report.id,
      verdict: this.state.verdict,
      labeler: this.labeler,
    };
    if (this.state.verdict === 'NonIssue' && this.state.patternCode) {
      body.pattern_code = this.state.patternCode;
    }
    return body;
  }

  async submit(): Promise<boolean> {
    const body = this.buildLabelBody();
    if (body === null) return false;
    try {
      await this.api.submitLabel(body);
    } catch (error) {
      if (error instanceof ApiError) {
        this.state.inlineError = `${error.code}: ${error.message}`;
      } else {
        this.state.needsRetry = true; // network failure: selection survives
      }
      this.emit();
      return false;
    }
    await this.advance();
    return true;
  }

  async retry(): Promise<boolean> {
    if (!this.state.needsRetry) return false;
    this.state.needsRetry = false;
    return this.submit();
  }
}
