import { debounce } from '../debounce.js';
import { WeightSchemeDoc } from '../types.js';
import { parseWeightInput, validateWeights } from '../validate.js';

export const DEBOUNCE_MS = 150;

interface WeightField {
  group: 'ivmf' | 'tm';
  key: string;
  label: string;
  min: number;
  max: number;
}

const FIELDS: WeightField[] = [
  { group: 'ivmf', key: 'cmpx', label: 'Complexity', min: -5, max: 5 },
  { group: 'ivmf', key: 'pu', label: 'Practical usage', min: -5, max: 5 },
  { group: 'ivmf', key: 'tm', label: 'Trust model', min: -5, max: 5 },
  { group: 'tm', key: 'sec', label: 'Voting secrecy', min: 0, max: 5 },
  { group: 'tm', key: 'anon', label: 'Voter anonymity', min: 0, max: 5 },
  { group: 'tm', key: 'ivf', label: 'Individual verifiability', min: 0, max: 5 },
  { group: 'tm', key: 'uvf', label: 'Universal verifiability', min: 0, max: 5 },
  { group: 'tm', key: 'evf', label: 'Eligibility verifiability', min: 0, max: 5 },
  { group: 'tm', key: 'cres', label: 'Coercion resistance', min: 0, max: 5 },
];

/**
 * The nine weight inputs. Edits are debounced (150 ms) and validated before
 * `onChange` fires; invalid entries mark the field and never trigger a
 * request.
 */
export class WeightsPanel {
  private current: WeightSchemeDoc;
  private readonly inputs = new Map<string, HTMLInputElement>();
  private readonly emitChange: (() => void) & { cancel: () => void };

  constructor(
    private readonly root: HTMLElement,
    initial: WeightSchemeDoc,
    private readonly onChange: (weights: WeightSchemeDoc) => void,
    debounceMs: number = DEBOUNCE_MS,
  ) {
    this.current = structuredClone(initial);
    this.emitChange = debounce(() => this.onChange(this.value()), debounceMs);
    this.render();
  }

  value(): WeightSchemeDoc {
    return structuredClone(this.current);
  }

  /** Replace all weights at once (preset buttons, loaded scenarios). */
  setWeights(weights: WeightSchemeDoc): void {
    this.emitChange.cancel();
    this.current = structuredClone(weights);
    for (const field of FIELDS) {
      const input = this.inputs.get(`${field.group}.${field.key}`);
      if (input) {
        input.value = String(this.groupValue(field));
        input.classList.remove('invalid');
      }
    }
    this.onChange(this.value());
  }

  private groupValue(field: WeightField): number {
    const group = this.current[field.group] as Record<string, number>;
    return group[field.key];
  }

  private render(): void {
    const form = document.createElement('form');
    form.className = 'weights-panel';
    form.addEventListener('submit', (event) => event.preventDefault());

    for (const field of FIELDS) {
      const id = `${field.group}.${field.key}`;
      const row = document.createElement('label');
      row.className = 'weight-row';

      const caption = document.createElement('span');
      caption.textContent = field.label;
      row.appendChild(caption);

      const input = document.createElement('input');
      input.type = 'number';
      input.step = '0.1';
      input.min = String(field.min);
      input.max = String(field.max);
      input.name = id;
      input.value = String(this.groupValue(field));
      input.addEventListener('input', () => this.handleInput(field, input));
      row.appendChild(input);

      this.inputs.set(id, input);
      form.appendChild(row);
    }
    this.root.replaceChildren(form);
  }

  private handleInput(field: WeightField, input: HTMLInputElement): void {
    const parsed = parseWeightInput(input.value);
    if (parsed === null) {
      // Field-level error; no request goes out for invalid input.
      input.classList.add('invalid');
      this.emitChange.cancel();
      return;
    }
    input.classList.remove('invalid');
    const group = this.current[field.group] as Record<string, number>;
    group[field.key] = parsed;
    this.current.name = 'custom';
    if (validateWeights(this.current).length === 0) {
      this.emitChange();
    }
  }
}
