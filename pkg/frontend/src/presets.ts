import { WeightSchemeDoc } from './types.js';

/** Mirrors data/weights/default.json in the scoring-engine repository. */
export const DEFAULT_WEIGHTS: WeightSchemeDoc = {
  name: 'default',
  ivmf: { cmpx: -0.5, pu: 3.0, tm: 1.0 },
  tm: { sec: 1.0, anon: 1.6, ivf: 1.8, uvf: 2.0, evf: 1.4, cres: 1.2 },
};

/** Mirrors data/weights/theoretical-pu0.json: pure design comparison. */
export const THEORETICAL_PU0: WeightSchemeDoc = {
  name: 'theoretical-pu0',
  ivmf: { cmpx: -0.5, pu: 0.0, tm: 1.0 },
  tm: { sec: 1.0, anon: 1.6, ivf: 1.8, uvf: 2.0, evf: 1.4, cres: 1.2 },
};

export const EQUAL_WEIGHTS: WeightSchemeDoc = {
  name: 'equal',
  ivmf: { cmpx: 1.0, pu: 1.0, tm: 1.0 },
  tm: { sec: 1.0, anon: 1.0, ivf: 1.0, uvf: 1.0, evf: 1.0, cres: 1.0 },
};

export const PRESETS: WeightSchemeDoc[] = [
  DEFAULT_WEIGHTS,
  THEORETICAL_PU0,
  EQUAL_WEIGHTS,
];
