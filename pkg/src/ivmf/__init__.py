"""Internet Voting Maturity Framework scoring engine.

Scores internet-voting protocols on complexity, practical usage, and
trust-model composites; ranks them; and runs weight-sensitivity analyses.
"""

__version__ = "0.1.0"

from .model import (
    ComplexityClass,
    ComponentSpec,
    Dataset,
    ProtocolRecord,
    SecurityProperty,
    TrustAssignment,
    ValidationFinding,
    WeightScheme,
    validate_dataset,
)
from .scoring import (
    DegenerateColumnWarning,
    ScoreRow,
    ScoreTable,
    complexity_score,
    ivmf_scores,
    minmax_normalize,
    rank_average,
    rank_competition,
    tm_scores,
)
from .stats import (
    HistogramSpec,
    SensitivityRow,
    histogram,
    p_two_sided,
    pearson,
    rank_correlation,
    sensitivity_table,
    t_statistic,
)
from .trustexpr import (
    LintFinding,
    TrustAtom,
    TrustExpression,
    TrustExprError,
    UnmappedCombinationError,
    format_trust_expr,
    lint_assignment,
    lint_dataset,
    parse_trust_expr,
    tier_of,
)
from .dataio import (
    load_bundled_dataset,
    load_bundled_weights,
    load_dataset,
    load_weights,
    write_report,
)

__all__ = [
    "ComplexityClass",
    "ComponentSpec",
    "Dataset",
    "DegenerateColumnWarning",
    "HistogramSpec",
    "LintFinding",
    "ProtocolRecord",
    "ScoreRow",
    "ScoreTable",
    "SecurityProperty",
    "SensitivityRow",
    "TrustAssignment",
    "TrustAtom",
    "TrustExprError",
    "TrustExpression",
    "UnmappedCombinationError",
    "ValidationFinding",
    "WeightScheme",
    "complexity_score",
    "format_trust_expr",
    "histogram",
    "ivmf_scores",
    "lint_assignment",
    "lint_dataset",
    "load_bundled_dataset",
    "load_bundled_weights",
    "load_dataset",
    "load_weights",
    "minmax_normalize",
    "p_two_sided",
    "parse_trust_expr",
    "pearson",
    "rank_average",
    "rank_competition",
    "rank_correlation",
    "sensitivity_table",
    "t_statistic",
    "tier_of",
    "tm_scores",
    "validate_dataset",
    "write_report",
]
