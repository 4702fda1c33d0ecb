"""Exact moments, cumulants, closed-form formulas, and the rational
Laurent-polynomial fit.

Everything here is exact rational arithmetic.  Cumulants are computed from
raw moments by the set-partition sum

    C_k = sum over partitions p of [k] of (|p|-1)! (-1)^(|p|-1)
          prod over blocks B of m_{|B|}

which is guarded at k <= 8 (Bell(8) = 4140 partitions).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .distributions import CrossingDistribution
from .errors import GuardError, SingularSystemError
from .geometry import PointConfig, rectilinear_crossing_number
from .trees import num_trees

CUMULANT_GUARD = 8


def raw_moment(dist: CrossingDistribution, j: int) -> Fraction:
    """E[X^j] of the distribution, exactly."""
    if j < 0:
        raise ValueError("moment order must be >= 0")
    total = num_trees(dist.n)
    return Fraction(sum(k ** j * c for k, c in dist.counts.items()), total)


@dataclass(frozen=True)
class SetPartition:
    """A partition of {1..k} into disjoint non-empty covering blocks."""

    k: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        flat = [x for b in self.blocks for x in b]
        if sorted(flat) != list(range(1, self.k + 1)):
            raise ValueError("blocks must partition 1..k")


def set_partitions(k: int, guard: int = CUMULANT_GUARD) -> list[SetPartition]:
    """All partitions of {1..k}; there are Bell(k) of them."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > guard:
        raise GuardError(f"k={k} exceeds the partition guard {guard} "
                         "(Bell numbers grow too fast)")

    def rec(items: list[int]) -> list[list[list[int]]]:
        if not items:
            return [[]]
        first, rest = items[0], items[1:]
        out = []
        for part in rec(rest):
            for i in range(len(part)):
                out.append(part[:i] + [[first] + part[i]] + part[i + 1:])
            out.append([[first]] + part)
        return out

    return [
        SetPartition(k, tuple(tuple(b) for b in part))
        for part in rec(list(range(1, k + 1)))
    ]


def moments_to_cumulants(moments: Sequence[Fraction | int]) -> list[Fraction]:
    """Cumulants C_1..C_K from raw moments m_1..m_K via the partition sum."""
    K = len(moments)
    if K < 1:
        raise ValueError("need at least one moment")
    if K > CUMULANT_GUARD:
        raise GuardError(f"K={K} exceeds the cumulant guard {CUMULANT_GUARD}")
    m = [Fraction(v) for v in moments]
    out = []
    for k in range(1, K + 1):
        acc = Fraction(0)
        for part in set_partitions(k):
            r = len(part.blocks)
            term = Fraction(math.factorial(r - 1) * (-1) ** (r - 1))
            for block in part.blocks:
                term *= m[len(block) - 1]
            acc += term
        out.append(acc)
    return out


def distribution_cumulants(dist: CrossingDistribution, k_max: int) -> list[Fraction]:
    moments = [raw_moment(dist, j) for j in range(1, k_max + 1)]
    return moments_to_cumulants(moments)


def closed_form_mean(n: int) -> Fraction:
    """Exact mean crossing count on convex position: (n-1)(n-2)(n-3)/(6n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return Fraction((n - 1) * (n - 2) * (n - 3), 6 * n)


def closed_form_second_moment(n: int) -> Fraction:
    """Exact second moment on convex position, as a Laurent polynomial:
    n^4/36 - 14n^3/45 + 553n^2/360 - 305n/72 + 491/72 - 2323/(360n)
    + 217/(60n^2) - 1/n^3."""
    if n == 0:
        raise ZeroDivisionError("n must be nonzero")
    x = Fraction(n)
    return (x ** 4 / 36 - 14 * x ** 3 / 45 + 553 * x ** 2 / 360 - 305 * x / 72
            + Fraction(491, 72) - Fraction(2323, 360) / x + Fraction(217, 60) / x ** 2
            - 1 / x ** 3)


def closed_form_variance(n: int) -> Fraction:
    """Exact variance on convex position: n^3/45 - 3n^2/40 - 17n/72 + 35/24
    - 1003/(360n) + 157/(60n^2) - 1/n^3.  Equals the second moment minus
    the squared mean."""
    if n == 0:
        raise ZeroDivisionError("n must be nonzero")
    x = Fraction(n)
    return (x ** 3 / 45 - 3 * x ** 2 / 40 - 17 * x / 72 + Fraction(35, 24)
            - Fraction(1003, 360) / x + Fraction(157, 60) / x ** 2 - 1 / x ** 3)


@dataclass(frozen=True)
class FitResult:
    """Solution of the square exact linear system sum_i a_i n^i = value."""

    exponents: tuple[int, ...]
    coefficients: tuple[Fraction, ...]
    residuals: tuple[Fraction, ...]

    def coefficient(self, exponent: int) -> Fraction:
        return self.coefficients[self.exponents.index(exponent)]


def fit_laurent_polynomial(
    points: Sequence[tuple[int, Fraction]],
    exponents: Sequence[int],
) -> FitResult:
    """Solve for Laurent coefficients a_i with sum_i a_i n^i = value at every
    data point, by exact Gaussian elimination over the rationals."""
    exps = tuple(int(e) for e in exponents)
    pts = [(int(n), Fraction(v)) for n, v in points]
    if len(pts) != len(exps):
        raise ValueError(
            f"need exactly one data point per exponent ({len(exps)}), got {len(pts)}")
    ns = [n for n, _ in pts]
    if len(set(ns)) != len(ns):
        raise ValueError("duplicate n values")
    if any(n <= 0 for n in ns):
        raise ValueError("all n must be positive")

    size = len(exps)
    matrix = [[Fraction(n) ** e for e in exps] for n in ns]
    rhs = [v for _, v in pts]

    # exact elimination; any nonzero pivot is fine over the rationals
    for col in range(size):
        pivot = next((r for r in range(col, size) if matrix[r][col] != 0), None)
        if pivot is None:
            raise SingularSystemError(
                f"rank-deficient system: no pivot in column for exponent {exps[col]}")
        if pivot != col:
            matrix[col], matrix[pivot] = matrix[pivot], matrix[col]
            rhs[col], rhs[pivot] = rhs[pivot], rhs[col]
        inv = 1 / matrix[col][col]
        matrix[col] = [x * inv for x in matrix[col]]
        rhs[col] *= inv
        for r in range(size):
            if r != col and matrix[r][col] != 0:
                factor = matrix[r][col]
                matrix[r] = [x - factor * y for x, y in zip(matrix[r], matrix[col])]
                rhs[r] -= factor * rhs[col]

    coeffs = tuple(rhs)
    residuals = tuple(
        v - sum(c * Fraction(n) ** e for c, e in zip(coeffs, exps))
        for n, v in pts
    )
    return FitResult(exps, coeffs, residuals)


def general_position_mean(config: PointConfig) -> Fraction:
    """Exact mean crossing count of a uniform tree on the configuration:
    4 times the rectilinear crossing number over n^2."""
    n = config.n
    return Fraction(4 * rectilinear_crossing_number(config), n * n)


@dataclass(frozen=True)
class ScalingRow:
    n: int
    cumulants: tuple[Fraction, ...]
    # |C_k| / n^(3k/2), the normalization under which the cumulants of the
    # standardized count must vanish for k >= 3
    normalized: tuple[float, ...]


@dataclass(frozen=True)
class ScalingReport:
    k_max: int
    rows: tuple[ScalingRow, ...]
    # least-squares slope of log |C_k| against log n, per k (None if any
    # cumulant in the column vanishes)
    slopes: tuple[float | None, ...]


def cumulant_scaling_report(
    n_min: int,
    n_max: int,
    k_max: int,
    config_kind: str = "convex",
    *,
    num_shards: int = 4,
    force: bool = False,
    progress=None,
) -> ScalingReport:
    """Exact cumulants C_1..C_k for each n in range, with the n^(3k/2)
    normalization and per-k log-log growth slopes.

    Only convex configurations are supported: the report needs an exact
    enumerable drawing for every n in the range.
    """
    from .distributions import exact_distribution
    from .geometry import ConvexConfig

    if config_kind != "convex":
        raise ValueError("scaling reports are defined for convex configurations")
    if n_min < 1 or n_min > n_max:
        raise ValueError("need 1 <= n_min <= n_max")
    rows = []
    for n in range(n_min, n_max + 1):
        dist = exact_distribution(ConvexConfig(n), num_shards, force=force,
                                  progress=progress)
        cums = tuple(distribution_cumulants(dist, k_max))
        norm = tuple(abs(float(c)) / n ** (1.5 * k)
                     for k, c in enumerate(cums, start=1))
        rows.append(ScalingRow(n, cums, norm))

    slopes: list[float | None] = []
    for k in range(k_max):
        series = [(row.n, row.cumulants[k]) for row in rows if row.cumulants[k] != 0]
        if len(series) < 2:
            slopes.append(None)
            continue
        xs = [math.log(n) for n, _ in series]
        ys = [math.log(abs(float(c))) for _, c in series]
        xbar = sum(xs) / len(xs)
        ybar = sum(ys) / len(ys)
        denom = sum((x - xbar) ** 2 for x in xs)
        slopes.append(sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys)) / denom)
    return ScalingReport(k_max, tuple(rows), tuple(slopes))


def rationals_csv(entries: Sequence[tuple[str, Fraction]]) -> str:
    """Normative export for exact quantities: 'name,numerator,denominator'."""
    lines = ["name,numerator,denominator"]
    for name, value in entries:
        value = Fraction(value)
        lines.append(f"{name},{value.numerator},{value.denominator}")
    return "\n".join(lines) + "\n"
