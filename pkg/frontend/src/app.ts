import { ApiClient } from './api.js';
import { DEFAULT_WEIGHTS, PRESETS } from './presets.js';
import { ScenarioStore } from './scenarios.js';
import { DatasetDoc, ScoreTableDoc, WeightSchemeDoc } from './types.js';
import { renderDetailView } from './ui/detailView.js';
import {
  ComparisonColumn,
  MAX_COMPARISON_COLUMNS,
  extractRanks,
  renderRankingTable,
} from './ui/rankingTable.js';
import { WeightsPanel } from './ui/weightsPanel.js';

export interface AppElements {
  table: HTMLElement;
  detail: HTMLElement;
  weights: HTMLElement;
  banner: HTMLElement;
  scenarios: HTMLElement;
  presets: HTMLElement;
}

/**
 * Wires the weight panel, ranking table, detail view and scenario shelf
 * together. Every displayed number originates from a service response; the
 * client only re-renders.
 */
export class App {
  private dataset: DatasetDoc | null = null;
  private currentScores: ScoreTableDoc | null = null;
  private baselineRanks = new Map<string, number>();
  private selectedProtocol: string | null = null;
  private comparisons: ComparisonColumn[] = [];
  private panel: WeightsPanel | null = null;

  constructor(
    private readonly el: AppElements,
    private readonly api: ApiClient,
    private readonly store: ScenarioStore,
    private readonly debounceMs?: number,
  ) {}

  async boot(): Promise<void> {
    try {
      this.dataset = await this.api.getDataset();
      const scores = await this.api.score(DEFAULT_WEIGHTS);
      this.baselineRanks = extractRanks(scores);
      this.applyScores(scores);
      this.clearBanner();
    } catch (error) {
      this.showBanner('Scoring service unreachable. Start it with: ivmf serve');
      return;
    }
    this.panel = new WeightsPanel(
      this.el.weights,
      DEFAULT_WEIGHTS,
      (weights) => void this.scoreAndRender(weights),
      this.debounceMs,
    );
    this.renderPresets();
    this.renderScenarioShelf();
  }

  /** POST the scheme and re-render in place; keep the last table on failure. */
  async scoreAndRender(weights: WeightSchemeDoc): Promise<void> {
    try {
      const scores = await this.api.score(weights);
      this.applyScores(scores);
      this.clearBanner();
    } catch (error) {
      if ((error as Error).name === 'AbortError') return; // superseded request
      this.showBanner('Scoring service unreachable; showing the last ranking.');
    }
  }

  private applyScores(scores: ScoreTableDoc): void {
    this.currentScores = scores;
    renderRankingTable(this.el.table, scores, {
      baselineRanks: this.baselineRanks,
      comparisons: this.comparisons,
      onSelect: (name) => this.selectProtocol(name),
    });
    if (this.selectedProtocol) this.selectProtocol(this.selectedProtocol);
  }

  selectProtocol(name: string): void {
    if (!this.dataset || !this.currentScores) return;
    this.selectedProtocol = name;
    renderDetailView(this.el.detail, this.dataset, this.currentScores, name);
  }

  applyPreset(weights: WeightSchemeDoc): void {
    this.panel?.setWeights(weights);
  }

  saveScenario(name: string): void {
    if (!this.panel) return;
    const result = this.store.save(name, this.panel.value());
    if (result.warning) this.showBanner(result.warning);
    this.renderScenarioShelf();
  }

  deleteScenario(name: string): void {
    this.store.remove(name);
    this.comparisons = this.comparisons.filter((c) => c.label !== name);
    this.renderScenarioShelf();
    this.rerender();
  }

  /** Add a saved scenario as a side-by-side rank column (up to 3). */
  async compareScenario(name: string): Promise<void> {
    const scenario = this.store.get(name);
    if (!scenario || this.comparisons.some((c) => c.label === name)) return;
    if (this.comparisons.length >= MAX_COMPARISON_COLUMNS) return;
    try {
      const scores = await this.api.score(scenario.weights);
      this.comparisons.push({ label: name, ranks: extractRanks(scores) });
      this.rerender();
    } catch {
      this.showBanner('Could not score the saved scenario.');
    }
  }

  uncompareScenario(name: string): void {
    this.comparisons = this.comparisons.filter((c) => c.label !== name);
    this.rerender();
  }

  private rerender(): void {
    if (this.currentScores) this.applyScores(this.currentScores);
  }

  private renderPresets(): void {
    const bar = document.createElement('div');
    bar.className = 'preset-bar';
    for (const preset of PRESETS) {
      const button = document.createElement('button');
      button.textContent = preset.name;
      button.dataset.preset = preset.name;
      button.addEventListener('click', () => this.applyPreset(preset));
      bar.appendChild(button);
    }
    const saveButton = document.createElement('button');
    saveButton.textContent = 'save scenario';
    saveButton.className = 'save-scenario';
    saveButton.addEventListener('click', () => {
      const name = window.prompt('Scenario name?');
      if (name) this.saveScenario(name);
    });
    bar.appendChild(saveButton);
    this.el.presets.replaceChildren(bar);
  }

  private renderScenarioShelf(): void {
    const shelf = document.createElement('ul');
    shelf.className = 'scenario-shelf';
    for (const scenario of this.store.list()) {
      const item = document.createElement('li');
      item.dataset.scenario = scenario.name;

      const label = document.createElement('span');
      label.textContent = `${scenario.name} (${scenario.createdAt.slice(0, 10)})`;
      item.appendChild(label);

      const compare = document.createElement('button');
      compare.textContent = 'compare';
      compare.addEventListener('click', () => void this.compareScenario(scenario.name));
      item.appendChild(compare);

      const load = document.createElement('button');
      load.textContent = 'load';
      load.addEventListener('click', () => this.applyPreset(scenario.weights));
      item.appendChild(load);

      const remove = document.createElement('button');
      remove.textContent = 'delete';
      remove.addEventListener('click', () => this.deleteScenario(scenario.name));
      item.appendChild(remove);

      shelf.appendChild(item);
    }
    this.el.scenarios.replaceChildren(shelf);
  }

  private showBanner(message: string): void {
    this.el.banner.textContent = message;
    this.el.banner.classList.add('visible');
  }

  private clearBanner(): void {
    this.el.banner.textContent = '';
    this.el.banner.classList.remove('visible');
  }
}

export function mount(document: Document, baseUrl = ''): App {
  const byId = (id: string): HTMLElement => {
    const element = document.getElementById(id);
    if (!element) throw new Error(`missing #${id}`);
    return element;
  };
  const app = new App(
    {
      table: byId('ranking'),
      detail: byId('detail'),
      weights: byId('weights'),
      banner: byId('banner'),
      scenarios: byId('scenarios'),
      presets: byId('presets'),
    },
    new ApiClient(baseUrl),
    new ScenarioStore(),
  );
  void app.boot();
  return app;
}
