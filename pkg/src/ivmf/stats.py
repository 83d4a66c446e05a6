"""Sensitivity machinery: rank correlation, t-test significance, histograms.

The p-value path evaluates the regularized incomplete beta function with a
Lentz continued fraction rather than calling out to a stats library, so the
whole significance chain (r -> t -> p) is self-contained and testable against
an independent quadrature oracle.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass

from .model import Dataset, WeightScheme
from .scoring import ivmf_scores, rank_average, tm_scores

# Treat |r| at or beyond this as a degenerate (perfectly monotone) ranking.
_DEGENERATE_EPS = 1e-12


def pearson(x, y) -> float:
    """Product-moment correlation coefficient of two equal-length vectors."""
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")
    n = len(x)
    if n < 3:
        raise ValueError(f"need at least 3 observations, got {n}")
    mean_x = sum(x) / n
    mean_y = sum(y) / n
    dx = [v - mean_x for v in x]
    dy = [v - mean_y for v in y]
    var_x = sum(d * d for d in dx)
    var_y = sum(d * d for d in dy)
    if var_x == 0 or var_y == 0:
        raise ValueError("zero variance: correlation undefined for a constant vector")
    r = sum(a * b for a, b in zip(dx, dy)) / math.sqrt(var_x * var_y)
    # Guard against float drift past the mathematical bound.
    return max(-1.0, min(1.0, r))


def rank_correlation(x, y) -> float:
    """Spearman's rho with tie correction: Pearson on fractional ranks."""
    return pearson(rank_average(x), rank_average(y))


def t_statistic(r: float, n: int) -> float:
    """t = r * sqrt((n - 2) / (1 - r^2)) for a correlation on n observations."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if abs(r) >= 1:
        raise ValueError(f"degenerate (infinite t) for |r| = {abs(r)}")
    return r * math.sqrt((n - 2) / (1.0 - r * r))


# ---------------------------------------------------------------------------
# Student's t two-sided p-value via the regularized incomplete beta function.

_BETACF_TOL = 1e-14
_BETACF_MAX_ITER = 300
_TINY = 1e-300


def _betacf(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta function (modified Lentz)."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _BETACF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) <= _BETACF_TOL:
            return h
    raise ArithmeticError(f"incomplete beta did not converge for a={a}, b={b}, x={x}")


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b), accurate to ~1e-14 relative via symmetry + continued fraction."""
    if a <= 0 or b <= 0:
        raise ValueError("a and b must be positive")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x = {x} outside [0, 1]")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    ln_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def p_two_sided(t: float, df: int) -> float:
    """Two-sided p-value 2*P(T >= |t|) for Student's t with df degrees of freedom."""
    if df < 1:
        raise ValueError(f"need df >= 1, got {df}")
    if not math.isfinite(t):
        raise ValueError(f"non-finite t statistic {t!r}")
    if t == 0.0:
        return 1.0
    x = df / (df + t * t)
    return regularized_incomplete_beta(df / 2.0, 0.5, x)


# ---------------------------------------------------------------------------
# Sensitivity rows.

FLAG_IDENTICAL = "identical ranking"
FLAG_REVERSED = "reversed ranking"

LEVELS = ("IVMF", "TM")


@dataclass(frozen=True)
class SensitivityRow:
    """Rank-correlation comparison of one variant scheme against a baseline.

    ``t`` and ``p`` are None for degenerate rows (|r| = 1), which are marked
    in ``flags`` instead.
    """

    baseline_scheme: str
    variant_scheme: str
    level: str
    n: int
    r: float
    r_squared: float
    t: float | None
    p: float | None
    flags: tuple[str, ...] = ()


def _composite(dataset: Dataset, scheme: WeightScheme, level: str) -> list[float]:
    if level == "IVMF":
        return [row.ivmf_raw for row in ivmf_scores(dataset, scheme).rows]
    if level == "TM":
        return tm_scores(dataset, scheme)
    raise ValueError(f"unknown level {level!r}; expected one of {LEVELS}")


def sensitivity_table(
    dataset: Dataset,
    baseline: WeightScheme,
    variants: list[WeightScheme] | tuple[WeightScheme, ...],
    level: str = "IVMF",
) -> list[SensitivityRow]:
    """Correlate the ranking under each variant scheme with the baseline's.

    Both score vectors are converted to fractional (average) ranks before the
    Pearson coefficient is taken, making this a tie-corrected Spearman rho.
    """
    if len(dataset.protocols) < 3:
        raise ValueError("sensitivity analysis needs at least 3 protocols")
    level = level.upper()
    base_ranks = rank_average(_composite(dataset, baseline, level), descending=True)
    n = len(dataset.protocols)

    rows = []
    for variant in variants:
        variant_ranks = rank_average(
            _composite(dataset, variant, level), descending=True
        )
        r = pearson(base_ranks, variant_ranks)
        flags: tuple[str, ...] = ()
        t = p = None
        if r >= 1.0 - _DEGENERATE_EPS:
            r = 1.0
            flags = (FLAG_IDENTICAL,)
        elif r <= -1.0 + _DEGENERATE_EPS:
            r = -1.0
            flags = (FLAG_REVERSED,)
        else:
            t = t_statistic(r, n)
            p = p_two_sided(t, n - 2)
        rows.append(
            SensitivityRow(
                baseline_scheme=baseline.name,
                variant_scheme=variant.name,
                level=level,
                n=n,
                r=r,
                r_squared=r * r,
                t=t,
                p=p,
                flags=flags,
            )
        )
    return rows


# ---------------------------------------------------------------------------
# Histogram binning.


@dataclass(frozen=True)
class HistogramSpec:
    """Counts over equal-width bins; left-closed, right-open, last bin closed."""

    bin_count: int
    lo: float
    hi: float
    counts: tuple[int, ...]

    def edges(self) -> list[float]:
        return [
            self.lo + (self.hi - self.lo) * i / self.bin_count
            for i in range(self.bin_count + 1)
        ]


def histogram(values, bin_count: int, lo: float, hi: float) -> HistogramSpec:
    if bin_count < 1:
        raise ValueError(f"need at least 1 bin, got {bin_count}")
    if not lo < hi:
        raise ValueError(f"invalid range [{lo}, {hi}]")
    edges = [lo + (hi - lo) * i / bin_count for i in range(bin_count + 1)]
    counts = [0] * bin_count
    for v in values:
        if not lo <= v <= hi:
            raise ValueError(f"value {v} outside histogram range [{lo}, {hi}]")
        if v == hi:
            idx = bin_count - 1
        else:
            idx = bisect_right(edges, v) - 1
        counts[idx] += 1
    return HistogramSpec(bin_count=bin_count, lo=lo, hi=hi, counts=tuple(counts))
