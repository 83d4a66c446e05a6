import { DatasetDoc, ScoreTableDoc, SensitivityDoc, WeightSchemeDoc } from './types.js';

export class ApiError extends Error {
  constructor(
    message: string,
    readonly status: number,
    readonly fieldErrors: { field: string; message: string }[] = [],
  ) {
    super(message);
  }
}

type FetchLike = typeof fetch;

/**
 * Thin client over the scoring service.
 *
 * At most one score request is in flight: issuing a new one aborts the
 * previous, so a burst of slider moves can never deliver stale rankings
 * out of order.
 */
export class ApiClient {
  private scoreController: AbortController | null = null;

  constructor(
    private readonly baseUrl: string = '',
    private readonly fetchImpl: FetchLike = fetch,
  ) {}

  async health(): Promise<boolean> {
    try {
      const res = await this.fetchImpl(`${this.baseUrl}/api/health`);
      return res.ok;
    } catch {
      return false;
    }
  }

  async getDataset(): Promise<DatasetDoc> {
    const res = await this.fetchImpl(`${this.baseUrl}/api/dataset`);
    if (!res.ok) throw new ApiError(`dataset request failed (${res.status})`, res.status);
    return (await res.json()) as DatasetDoc;
  }

  /** POST /api/score, cancelling any previous in-flight score request. */
  async score(weights: WeightSchemeDoc): Promise<ScoreTableDoc> {
    this.scoreController?.abort();
    const controller = new AbortController();
    this.scoreController = controller;
    const res = await this.fetchImpl(`${this.baseUrl}/api/score`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({ weights }),
      signal: controller.signal,
    });
    if (this.scoreController === controller) this.scoreController = null;
    return this.parseResponse<ScoreTableDoc>(res, 'score');
  }

  async sensitivity(
    baseline: WeightSchemeDoc,
    variants: WeightSchemeDoc[],
    level: 'IVMF' | 'TM' = 'IVMF',
  ): Promise<SensitivityDoc> {
    const res = await this.fetchImpl(`${this.baseUrl}/api/sensitivity`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({ baseline, variants, level }),
    });
    return this.parseResponse<SensitivityDoc>(res, 'sensitivity');
  }

  private async parseResponse<T>(res: Response, what: string): Promise<T> {
    if (!res.ok) {
      let fields: { field: string; message: string }[] = [];
      try {
        const body = await res.json();
        if (Array.isArray(body?.errors)) fields = body.errors;
      } catch {
        // non-JSON error body; fall through with the status alone
      }
      throw new ApiError(`${what} request failed (${res.status})`, res.status, fields);
    }
    return (await res.json()) as T;
  }
}
