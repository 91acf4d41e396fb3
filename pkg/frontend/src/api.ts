/** Typed client for the triage service; the only backend the UI talks to. */
import type {
  AblationRow,
  DistributionResponse,
  LabelBody,
  NextReportResponse,
  PatternInfo,
  Prediction,
} from './types.js';

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function parseError(response: Response): Promise<ApiError> {
  let code = 'unknown';
  let message = `HTTP ${response.status}`;
  try {
    const body = (await response.json()) as { error?: { code?: string; message?: string } };
    if (body.error) {
      code = body.error.code ?? code;
      message = body.error.message ?? message;
    }
  } catch {
    // non-JSON error body: keep the generic message
  }
  return new ApiError(response.status, code, message);
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path, init);
    if (!response.ok) {
      throw await parseError(response);
    }
    return (await response.json()) as T;
  }

  nextReport(strategy = 'RoundRobinByProject'): Promise<NextReportResponse> {
    return this.request(`/reports/next?strategy=${encodeURIComponent(strategy)}`);
  }

  async patterns(): Promise<PatternInfo[]> {
    const body = await this.request<{ patterns: PatternInfo[] }>('/patterns');
    return body.patterns;
  }

  submitLabel(body: LabelBody): Promise<{ status: string; report_id: string }> {
    return this.request('/labels', {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(body),
    });
  }

  predict(summary: string, description: string): Promise<Prediction> {
    return this.request('/predict', {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({ summary, description }),
    });
  }

  distribution(): Promise<DistributionResponse> {
    return this.request('/stats/distribution');
  }

  async ablation(): Promise<AblationRow[]> {
    const body = await this.request<{ rows: AblationRow[] }>('/stats/ablation');
    return body.rows;
  }
}
