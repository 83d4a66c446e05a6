import { Scenario, WeightSchemeDoc } from './types.js';

const STORAGE_KEY = 'ivmf.scenarios.v1';

export interface SaveResult {
  ok: boolean;
  warning?: string;
}

/**
 * Client-side scenario persistence. Losing the store (quota, disabled
 * storage) degrades to in-memory state with a non-fatal warning; saved
 * scenarios otherwise survive reloads.
 */
export class ScenarioStore {
  private scenarios: Scenario[] = [];

  constructor(private readonly storage: Storage = localStorage) {
    this.scenarios = this.read();
  }

  list(): Scenario[] {
    return [...this.scenarios];
  }

  get(name: string): Scenario | undefined {
    return this.scenarios.find((s) => s.name === name);
  }

  save(name: string, weights: WeightSchemeDoc, now: () => string = isoNow): SaveResult {
    const scenario: Scenario = { name, weights, createdAt: now() };
    const existing = this.scenarios.findIndex((s) => s.name === name);
    if (existing >= 0) this.scenarios[existing] = scenario;
    else this.scenarios.push(scenario);
    return this.write();
  }

  remove(name: string): SaveResult {
    this.scenarios = this.scenarios.filter((s) => s.name !== name);
    return this.write();
  }

  private read(): Scenario[] {
    try {
      const raw = this.storage.getItem(STORAGE_KEY);
      if (!raw) return [];
      const parsed = JSON.parse(raw);
      return Array.isArray(parsed) ? (parsed as Scenario[]) : [];
    } catch {
      return [];
    }
  }

  private write(): SaveResult {
    try {
      this.storage.setItem(STORAGE_KEY, JSON.stringify(this.scenarios));
      return { ok: true };
    } catch {
      // Quota exceeded or storage unavailable: keep the in-memory list.
      return { ok: true, warning: 'storage unavailable; scenarios will not survive a reload' };
    }
  }
}

function isoNow(): string {
  return new Date().toISOString();
}
