/** Wire formats of the scoring service. The dashboard never computes scores
 * itself; these shapes are exactly what the API returns. */

export interface WeightSchemeDoc {
  name: string;
  ivmf: { cmpx: number; pu: number; tm: number };
  tm: { sec: number; anon: number; ivf: number; uvf: number; evf: number; cres: number };
}

export interface PropertyScoreDoc {
  raw: number;
  norm: number;
  expression?: string;
  expression_tier?: number | null;
  mismatch: boolean;
}

export interface ScoreRowDoc {
  name: string;
  rank: number;
  ivmf_norm: number;
  ivmf_raw: number;
  tm_rank: number;
  tm_norm: number;
  tm_raw: number;
  cmpx_raw: number;
  cmpx_norm: number;
  pu_raw: number;
  pu_norm: number;
  properties: Record<string, PropertyScoreDoc>;
}

export interface ScoreTableDoc {
  scheme: string;
  n: number;
  warnings: string[];
  rows: ScoreRowDoc[];
}

export interface TrustAssignmentDoc {
  score: number;
  expression?: string;
  justification?: string;
}

export interface ProtocolDoc {
  name: string;
  components: { name: string; class: number }[];
  pu: number;
  pu_sources: string[];
  properties: Record<string, TrustAssignmentDoc>;
}

export interface DatasetDoc {
  schema_version: string;
  protocols: ProtocolDoc[];
}

export interface SensitivityRowDoc {
  baseline: string;
  variant: string;
  level: string;
  n: number;
  r: number;
  r_squared: number;
  t: number | null;
  p: number | null;
  flags: string[];
}

export interface SensitivityDoc {
  rows: SensitivityRowDoc[];
}

/** A saved what-if configuration; lives only in this browser. */
export interface Scenario {
  name: string;
  weights: WeightSchemeDoc;
  createdAt: string;
}

export const PROPERTY_ORDER = ['SEC', 'ANON', 'IVF', 'UVF', 'EVF', 'CRES'] as const;

export const PROPERTY_LABELS: Record<string, string> = {
  SEC: 'Voting Secrecy',
  ANON: 'Voter Anonymity',
  IVF: 'Individual Verifiability',
  UVF: 'Universal Verifiability',
  EVF: 'Eligibility Verifiability',
  CRES: 'Coercion Resistance',
};
