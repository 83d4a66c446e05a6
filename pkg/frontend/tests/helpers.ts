import { readFileSync } from 'node:fs';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';

import { DatasetDoc, ScoreTableDoc, SensitivityDoc } from '../src/types.js';

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), 'fixtures');

export function fixture<T>(name: string): T {
  return JSON.parse(readFileSync(join(FIXTURES, name), 'utf-8')) as T;
}

export const datasetFixture = (): DatasetDoc => fixture<DatasetDoc>('dataset.json');
export const defaultScores = (): ScoreTableDoc => fixture<ScoreTableDoc>('score-default.json');
export const pu0Scores = (): ScoreTableDoc => fixture<ScoreTableDoc>('score-pu0.json');
export const sensitivitySelf = (): SensitivityDoc =>
  fixture<SensitivityDoc>('sensitivity-self.json');

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { 'content-type': 'application/json; charset=utf-8' },
  });
}

/**
 * A fetch stand-in that replays the recorded service responses. Score
 * requests are answered by inspecting the submitted PU weight, which is what
 * distinguishes the two recorded scenarios.
 */
export function fixtureFetch(): typeof fetch {
  return async (input: RequestInfo | URL, init?: RequestInit): Promise<Response> => {
    const url = String(input);
    if (url.endsWith('/api/health')) return new Response('ok');
    if (url.endsWith('/api/dataset')) return jsonResponse(datasetFixture());
    if (url.endsWith('/api/score')) {
      const body = JSON.parse(String(init?.body ?? '{}'));
      const pu = body?.weights?.ivmf?.pu;
      return jsonResponse(pu === 0 ? pu0Scores() : defaultScores());
    }
    if (url.endsWith('/api/sensitivity')) return jsonResponse(sensitivitySelf());
    return new Response('not found', { status: 404 });
  };
}

export function failingFetch(): typeof fetch {
  return async () => {
    throw new TypeError('fetch failed');
  };
}

export class MemoryStorage implements Storage {
  private map = new Map<string, string>();

  get length(): number {
    return this.map.size;
  }

  clear(): void {
    this.map.clear();
  }

  getItem(key: string): string | null {
    return this.map.has(key) ? this.map.get(key)! : null;
  }

  key(index: number): string | null {
    return [...this.map.keys()][index] ?? null;
  }

  removeItem(key: string): void {
    this.map.delete(key);
  }

  setItem(key: string, value: string): void {
    this.map.set(key, value);
  }
}

export class QuotaExceededStorage extends MemoryStorage {
  override setItem(): void {
    throw new DOMException('quota exceeded', 'QuotaExceededError');
  }
}
