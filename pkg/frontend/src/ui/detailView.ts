import {
  DatasetDoc,
  PROPERTY_LABELS,
  PROPERTY_ORDER,
  ScoreTableDoc,
} from '../types.js';

function cell(row: HTMLTableRowElement, text: string, className?: string): HTMLTableCellElement {
  const td = document.createElement('td');
  td.textContent = text;
  if (className) td.className = className;
  row.appendChild(td);
  return td;
}

/**
 * Per-protocol trust-model breakdown: stored scores, normalized values,
 * collusion expressions and justification prose, with lint mismatches
 * highlighted. All numbers come from the score response; the dataset
 * document contributes only annotation text.
 */
export function renderDetailView(
  root: HTMLElement,
  dataset: DatasetDoc,
  scores: ScoreTableDoc,
  protocolName: string,
): void {
  const protocol = dataset.protocols.find((p) => p.name === protocolName);
  const scoreRow = scores.rows.find((r) => r.name === protocolName);
  if (!protocol || !scoreRow) {
    root.replaceChildren();
    return;
  }

  const container = document.createElement('div');
  container.className = 'detail-view';

  const title = document.createElement('h2');
  title.textContent = protocol.name;
  container.appendChild(title);

  const summary = document.createElement('p');
  summary.className = 'detail-summary';
  summary.textContent =
    `Rank ${scoreRow.rank} · score ${scoreRow.ivmf_raw.toFixed(3)} ` +
    `(normalized ${scoreRow.ivmf_norm.toFixed(4)}) · ` +
    `complexity ${scoreRow.cmpx_raw} · usage level ${scoreRow.pu_raw} · ` +
    `trust model ${scoreRow.tm_raw.toFixed(3)} (rank ${scoreRow.tm_rank})`;
  container.appendChild(summary);

  const table = document.createElement('table');
  table.className = 'detail-table';
  const thead = document.createElement('thead');
  const head = document.createElement('tr');
  for (const text of ['Property', 'Score', 'Normalized', 'Who must collude', 'Flag']) {
    const th = document.createElement('th');
    th.textContent = text;
    head.appendChild(th);
  }
  thead.appendChild(head);
  table.appendChild(thead);

  const body = document.createElement('tbody');
  for (const key of PROPERTY_ORDER) {
    const propertyScore = scoreRow.properties[key];
    const assignment = protocol.properties[key];
    if (!propertyScore || !assignment) continue;

    const tr = document.createElement('tr');
    tr.dataset.property = key;
    cell(tr, `${key} · ${PROPERTY_LABELS[key] ?? key}`);
    cell(tr, String(propertyScore.raw));
    cell(tr, propertyScore.norm.toFixed(4));
    cell(tr, propertyScore.expression ?? 'n/a');

    if (propertyScore.mismatch) {
      tr.classList.add('lint-mismatch');
      cell(
        tr,
        propertyScore.expression_tier == null
          ? 'expression does not map to a tier'
          : `stored ${propertyScore.raw} vs expression tier ${propertyScore.expression_tier}`,
        'lint-flag',
      );
    } else {
      cell(tr, '');
    }
    body.appendChild(tr);

    if (assignment.justification) {
      const justificationRow = document.createElement('tr');
      justificationRow.className = 'justification';
      const justificationCell = cell(justificationRow, assignment.justification);
      justificationCell.colSpan = 5;
      body.appendChild(justificationRow);
    }
  }
  table.appendChild(body);
  container.appendChild(table);

  const components = document.createElement('p');
  components.className = 'detail-components';
  components.textContent =
    'Components: ' +
    protocol.components.map((c) => `${c.name} (${c.class})`).join(', ');
  container.appendChild(components);

  root.replaceChildren(container);
}
