import { WeightSchemeDoc } from './types.js';

export interface FieldError {
  field: string;
  message: string;
}

const IVMF_KEYS = ['cmpx', 'pu', 'tm'] as const;
const TM_KEYS = ['sec', 'anon', 'ivf', 'uvf', 'evf', 'cres'] as const;

/**
 * Client-side mirror of the service's weight-scheme validation: nine finite
 * numbers under the right keys. Invalid schemes are rejected here and never
 * sent over the wire.
 */
export function validateWeights(doc: WeightSchemeDoc): FieldError[] {
  const errors: FieldError[] = [];
  if (!doc.name) errors.push({ field: 'name', message: 'scheme name is required' });
  for (const key of IVMF_KEYS) {
    const value = doc.ivmf?.[key];
    if (typeof value !== 'number' || !Number.isFinite(value)) {
      errors.push({ field: `ivmf.${key}`, message: 'must be a finite number' });
    }
  }
  for (const key of TM_KEYS) {
    const value = doc.tm?.[key];
    if (typeof value !== 'number' || !Number.isFinite(value)) {
      errors.push({ field: `tm.${key}`, message: 'must be a finite number' });
    }
  }
  return errors;
}

/** Parse one weight input field; empty or non-numeric text is an error. */
export function parseWeightInput(text: string): number | null {
  const trimmed = text.trim();
  if (trimmed === '') return null;
  const value = Number(trimmed);
  return Number.isFinite(value) ? value : null;
}
