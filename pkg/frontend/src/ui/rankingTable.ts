import { ScoreTableDoc } from '../types.js';

export interface ComparisonColumn {
  label: string;
  ranks: Map<string, number>;
}

export interface RankingTableOptions {
  /** Rank under the default scheme, for the delta indicators. */
  baselineRanks: Map<string, number>;
  /** Extra saved-scenario rank columns (at most 3 rendered). */
  comparisons?: ComparisonColumn[];
  onSelect?: (protocol: string) => void;
}

export const MAX_COMPARISON_COLUMNS = 3;

/** delta = default-scheme rank - current rank; positive means climbed. */
export function rankDelta(baselineRank: number | undefined, currentRank: number): number {
  if (baselineRank === undefined) return 0;
  return baselineRank - currentRank;
}

export function deltaIndicator(delta: number): string {
  if (delta > 0) return `▲ ${delta}`;
  if (delta < 0) return `▼ ${-delta}`;
  return '–';
}

export function extractRanks(table: ScoreTableDoc): Map<string, number> {
  return new Map(table.rows.map((row) => [row.name, row.rank]));
}

function cell(row: HTMLTableRowElement, text: string, className?: string): HTMLElement {
  const td = document.createElement('td');
  td.textContent = text;
  if (className) td.className = className;
  row.appendChild(td);
  return td;
}

/** Render the ranking table into `root` (replacing previous content). */
export function renderRankingTable(
  root: HTMLElement,
  table: ScoreTableDoc,
  options: RankingTableOptions,
): void {
  const comparisons = (options.comparisons ?? []).slice(0, MAX_COMPARISON_COLUMNS);
  const rows = [...table.rows].sort((a, b) => a.rank - b.rank || a.name.localeCompare(b.name));

  const element = document.createElement('table');
  element.className = 'ranking-table';

  const thead = document.createElement('thead');
  const head = document.createElement('tr');
  const headers = ['Rank', 'Δ', 'Protocol', 'Score', 'Normalized', 'PU', 'TM rank'];
  for (const text of headers) {
    const th = document.createElement('th');
    th.textContent = text;
    head.appendChild(th);
  }
  for (const comparison of comparisons) {
    const th = document.createElement('th');
    th.textContent = `Rank @ ${comparison.label}`;
    th.className = 'comparison';
    head.appendChild(th);
  }
  thead.appendChild(head);
  element.appendChild(thead);

  const body = document.createElement('tbody');
  for (const row of rows) {
    const tr = document.createElement('tr');
    tr.dataset.protocol = row.name;
    const delta = rankDelta(options.baselineRanks.get(row.name), row.rank);

    cell(tr, String(row.rank));
    cell(
      tr,
      deltaIndicator(delta),
      delta > 0 ? 'delta-up' : delta < 0 ? 'delta-down' : 'delta-none',
    );
    cell(tr, row.name, 'protocol-name');
    cell(tr, row.ivmf_raw.toFixed(3));
    cell(tr, row.ivmf_norm.toFixed(4));
    cell(tr, String(row.pu_raw));
    cell(tr, String(row.tm_rank));

    for (const comparison of comparisons) {
      const rank = comparison.ranks.get(row.name);
      cell(tr, rank === undefined ? '–' : String(rank));
    }

    if (options.onSelect) {
      tr.addEventListener('click', () => options.onSelect?.(row.name));
    }
    body.appendChild(tr);
  }
  element.appendChild(body);

  root.replaceChildren(element);
}
