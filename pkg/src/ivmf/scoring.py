"""Numeric core: complexity sums, min-max normalization, composites, ranking.

All scoring is pure computation over an immutable dataset. Output ordering
always follows dataset order; ranks are competition-style ("1224") for
display, while :func:`rank_average` provides the fractional ranks used by
the correlation estimators in :mod:`ivmf.stats`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .model import ComponentSpec, Dataset, SecurityProperty, WeightScheme

# Scores are grouped as tied when equal after rounding to this many decimal
# places. Published score gaps sit at >= 1e-4 while float summation noise
# sits at ~1e-15, so any cutoff between the two works.
TIE_DECIMALS = 9


class DegenerateColumnWarning(UserWarning):
    """A normalization column was constant and collapsed to all zeros."""


def complexity_score(components: list[ComponentSpec] | tuple[ComponentSpec, ...]) -> int:
    """Sum of per-component complexity classes; order-independent."""
    if not components:
        raise ValueError("protocol has no components")
    return sum(int(c.complexity_class) for c in components)


def _check_finite(values) -> None:
    for v in values:
        if not math.isfinite(v):
            raise ValueError(f"non-finite value {v!r} in normalization input")


def _minmax(values) -> tuple[list[float], bool]:
    """(normalized values, column-was-degenerate)."""
    _check_finite(values)
    lo, hi = min(values), max(values)
    if lo == hi:
        return [0.0] * len(values), True
    span = hi - lo
    return [(v - lo) / span for v in values], False


def minmax_normalize(values) -> list[float]:
    """Map values onto [0, 1] by (x - min) / (max - min).

    A constant column cannot be spread: it normalizes to all zeros and a
    :class:`DegenerateColumnWarning` is emitted instead of failing.
    """
    if not values:
        raise ValueError("cannot normalize an empty list")
    normalized, degenerate = _minmax(values)
    if degenerate:
        warnings.warn(
            f"degenerate column: all {len(values)} values equal {values[0]!r}",
            DegenerateColumnWarning,
            stacklevel=2,
        )
    return normalized


def _tie_key(value: float) -> float:
    return round(value, TIE_DECIMALS)


def rank_competition(values, descending: bool = True) -> list[int]:
    """Competition ("1224") ranking: ties share the best rank of their group."""
    _check_finite(values)
    keyed = [_tie_key(v) for v in values]
    ranks = []
    for v in keyed:
        if descending:
            better = sum(1 for w in keyed if w > v)
        else:
            better = sum(1 for w in keyed if w < v)
        ranks.append(better + 1)
    return ranks


def rank_average(values, descending: bool = False) -> list[float]:
    """Fractional ranking: ties get the mean of the positions they span."""
    _check_finite(values)
    keyed = [_tie_key(v) for v in values]
    order = sorted(range(len(keyed)), key=lambda i: keyed[i], reverse=descending)
    ranks = [0.0] * len(keyed)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and keyed[order[j + 1]] == keyed[order[i]]:
            j += 1
        mean_rank = (i + j) / 2 + 1
        for k in range(i, j + 1):
            ranks[order[k]] = mean_rank
        i = j + 1
    return ranks


@dataclass(frozen=True)
class PropertyScore:
    """Raw and normalized value of one security property, with its annotation."""

    raw: int
    norm: float
    expression: str | None
    expression_tier: int | None
    mismatch: bool


@dataclass(frozen=True)
class ScoreRow:
    name: str
    cmpx_raw: int
    cmpx_norm: float
    pu_raw: int
    pu_norm: float
    properties: dict[SecurityProperty, PropertyScore]
    tm_raw: float
    tm_norm: float
    tm_rank: int
    ivmf_raw: float
    ivmf_norm: float
    rank: int


@dataclass(frozen=True)
class ScoreTable:
    """Full per-protocol scoring result under one weight scheme.

    Rows are in dataset order; ``warnings`` lists any columns that were
    constant and therefore normalized to zeros.
    """

    scheme: str
    rows: tuple[ScoreRow, ...]
    warnings: tuple[str, ...] = ()

    def row(self, name: str) -> ScoreRow:
        for r in self.rows:
            if r.name == name:
                return r
        raise KeyError(name)

    def by_rank(self) -> list[ScoreRow]:
        return sorted(self.rows, key=lambda r: (r.rank, r.name))

    def by_tm_rank(self) -> list[ScoreRow]:
        return sorted(self.rows, key=lambda r: (r.tm_rank, r.name))


def _property_columns(dataset: Dataset) -> dict[SecurityProperty, list[int]]:
    return {
        prop: [p.assignments[prop].score for p in dataset.protocols]
        for prop in SecurityProperty
    }


def tm_scores(dataset: Dataset, scheme: WeightScheme) -> list[float]:
    """Raw trust-model composite per protocol, in dataset order.

    Each property column is min-max normalized over the *observed* dataset
    values (not the theoretical scale bounds) before the weighted sum.
    """
    if len(dataset.protocols) < 2:
        raise ValueError("trust-model scoring needs at least 2 protocols")
    tm_weights = scheme.tm_weights()
    norm_columns = {}
    for prop, column in _property_columns(dataset).items():
        norm_columns[prop], _ = _minmax(column)
    return [
        sum(tm_weights[prop] * norm_columns[prop][i] for prop in SecurityProperty)
        for i in range(len(dataset.protocols))
    ]


def ivmf_scores(dataset: Dataset, scheme: WeightScheme) -> ScoreTable:
    """Score and rank the whole dataset under one weight scheme."""
    if len(dataset.protocols) < 2:
        raise ValueError("scoring needs at least 2 protocols")

    degenerate: list[str] = []

    def norm(label: str, column) -> list[float]:
        values, was_degenerate = _minmax(column)
        if was_degenerate:
            degenerate.append(label)
        return values

    cmpx_raw = [complexity_score(p.components) for p in dataset.protocols]
    pu_raw = [p.pu for p in dataset.protocols]
    cmpx_norm = norm("CMPX", cmpx_raw)
    pu_norm = norm("PU", pu_raw)

    tm_weights = scheme.tm_weights()
    prop_norm: dict[SecurityProperty, list[float]] = {}
    prop_columns = _property_columns(dataset)
    for prop, column in prop_columns.items():
        prop_norm[prop] = norm(prop.value, column)

    tm_raw = [
        sum(tm_weights[prop] * prop_norm[prop][i] for prop in SecurityProperty)
        for i in range(len(dataset.protocols))
    ]
    tm_norm = norm("TM", tm_raw)
    tm_rank = rank_competition(tm_norm, descending=True)

    ivmf_raw = [
        scheme.w_cmpx * cmpx_norm[i] + scheme.w_pu * pu_norm[i] + scheme.w_tm * tm_norm[i]
        for i in range(len(dataset.protocols))
    ]
    ivmf_norm = norm("IVMF", ivmf_raw)
    ranks = rank_competition(ivmf_norm, descending=True)

    rows = []
    for i, protocol in enumerate(dataset.protocols):
        properties = {}
        for prop in SecurityProperty:
            assignment = protocol.assignments[prop]
            tier, mismatch = _expression_tier(assignment)
            properties[prop] = PropertyScore(
                raw=assignment.score,
                norm=prop_norm[prop][i],
                expression=assignment.expression,
                expression_tier=tier,
                mismatch=mismatch,
            )
        rows.append(
            ScoreRow(
                name=protocol.name,
                cmpx_raw=cmpx_raw[i],
                cmpx_norm=cmpx_norm[i],
                pu_raw=pu_raw[i],
                pu_norm=pu_norm[i],
                properties=properties,
                tm_raw=tm_raw[i],
                tm_norm=tm_norm[i],
                tm_rank=tm_rank[i],
                ivmf_raw=ivmf_raw[i],
                ivmf_norm=ivmf_norm[i],
                rank=ranks[i],
            )
        )
    return ScoreTable(scheme=scheme.name, rows=tuple(rows), warnings=tuple(degenerate))


def _expression_tier(assignment) -> tuple[int | None, bool]:
    # Import here: trustexpr depends on model only, scoring stays parser-free
    # apart from this annotation pass-through.
    from .trustexpr import lint_assignment, parse_trust_expr, tier_of
    from .trustexpr import TrustExprError, UnmappedCombinationError

    if assignment.expression is None:
        return None, False
    mismatch = bool(lint_assignment(assignment))
    try:
        tier = tier_of(parse_trust_expr(assignment.expression))
    except (TrustExprError, UnmappedCombinationError):
        tier = None
    return tier, mismatch
