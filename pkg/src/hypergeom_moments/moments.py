"""Closed-form moments of the multivariate hypergeometric distribution.

Factorial moments have the product form

    E[prod X_i^(a_i)] = n^(|a|) / N^(|a|) * prod N_i^(a_i)

where ``x^(j)`` is the falling factorial and ``|a|`` the sum of the exponents.
Plain powers are expanded into falling factorials with Stirling numbers of the
second kind, and central moments follow from the binomial expansion around the
mean ``n N_i / N``.

The exponent vector may be any nonnegative multi-index, not only points of
the support: terms whose falling factorials vanish drop out on their own.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .combinatorics import binomial, falling_factorial, shared_stirling_table, stirling2
from .distribution import (
    DistributionParams,
    ParameterError,
    as_multi_index,
    params_from_probs,
    probability_vector,
)
from .kinds import MomentKind

__all__ = [
    "MomentResult",
    "alpha_grid",
    "central_moment",
    "central_moment_from_probs",
    "compute_moment",
    "correction_factor",
    "covariance_matrix",
    "factorial_moment",
    "mean_vector",
    "multinomial_factorial_moment",
    "multinomial_noncentral_moment",
    "noncentral_moment",
    "noncentral_moment_from_probs",
]


def _ratio(params: DistributionParams, order: int) -> Fraction:
    # n^(m) / N^(m); zero once m > n, which also sidesteps 0/0 when m > N.
    if order > params.n:
        return Fraction(0)
    return Fraction(falling_factorial(params.n, order), falling_factorial(params.N, order))


def _box(alpha: Sequence[int]) -> Iterator[tuple[int, ...]]:
    return itertools.product(*(range(a + 1) for a in alpha))


def factorial_moment(params: DistributionParams, alpha: Iterable[int]) -> Fraction:
    """Joint factorial moment ``E[prod X_i^(alpha_i)]``."""
    alpha = as_multi_index(alpha, params.d)
    value = _ratio(params, sum(alpha))
    if value == 0:
        return value
    for c, a in zip(params.counts, alpha):
        value *= falling_factorial(c, a)
    return value


def noncentral_moment(params: DistributionParams, alpha: Iterable[int]) -> Fraction:
    """Joint raw moment ``E[prod X_i^alpha_i]`` via the Stirling expansion."""
    alpha = as_multi_index(alpha, params.d)
    # S(a_i, k_i) N_i^(k_i) per coordinate, indexed by k_i.
    factors = _stirling_factors(params, alpha)
    # Integer coefficients grouped by |k|, since the rational factor only depends on it.
    by_order: dict[int, int] = defaultdict(int)
    for k in _box(alpha):
        term = 1
        for f, ki in zip(factors, k):
            term *= f[ki]
            if term == 0:
                break
        if term:
            by_order[sum(k)] += term
    return sum((coef * _ratio(params, m) for m, coef in by_order.items()), Fraction(0))


def _stirling_factors(params: DistributionParams, top: Sequence[int]) -> list[list[int]]:
    table = shared_stirling_table(max(top, default=0))
    return [
        [table[a][j] * falling_factorial(c, j) for j in range(a + 1)]
        for c, a in zip(params.counts, top)
    ]


def _mean_ratio(params: DistributionParams) -> Fraction:
    # n/N, with the empty population (N = n = 0) mapped to 0.
    return Fraction(params.n, params.N) if params.N else Fraction(0)


def central_moment(params: DistributionParams, alpha: Iterable[int]) -> Fraction:
    """Joint central moment ``E[prod (X_i - E X_i)^alpha_i]``.

    Double sum over ``0 <= l <= alpha`` and ``0 <= k <= l`` of
    ``n^(|k|)/N^(|k|) (-n/N)^(|alpha|-|l|) prod C(alpha_i, l_i) S(l_i, k_i)
    N_i^(alpha_i - l_i) N_i^(k_i)``.
    """
    alpha = as_multi_index(alpha, params.d)
    total = sum(alpha)
    table = shared_stirling_table(max(alpha, default=0))
    # weights[i][l][k] = C(a_i, l) S(l, k) N_i^(a_i - l) N_i^(k)
    weights = [
        [
            [binomial(a, li) * c ** (a - li) * table[li][ki] * falling_factorial(c, ki) for ki in range(li + 1)]
            for li in range(a + 1)
        ]
        for c, a in zip(params.counts, alpha)
    ]
    by_orders: dict[tuple[int, int], int] = defaultdict(int)
    for ell in _box(alpha):
        shift = total - sum(ell)
        rows = [w[li] for w, li in zip(weights, ell)]
        for k in _box(ell):
            term = 1
            for row, ki in zip(rows, k):
                term *= row[ki]
                if term == 0:
                    break
            if term:
                by_orders[sum(k), shift] += term
    neg_mean_ratio = -_mean_ratio(params)
    value = Fraction(0)
    for (m, shift), coef in by_orders.items():
        value += coef * _ratio(params, m) * neg_mean_ratio**shift
    return value


def mean_vector(params: DistributionParams) -> list[Fraction]:
    """``E[X_i] = n N_i / N`` for each explicit category."""
    r = _mean_ratio(params)
    return [r * c for c in params.counts]


def covariance_matrix(params: DistributionParams) -> list[list[Fraction]]:
    """Second central moments ``E[(X_i - EX_i)(X_j - EX_j)]`` as a nested list."""
    d = params.d
    cov = [[Fraction(0)] * d for _ in range(d)]
    for i in range(d):
        for j in range(i, d):
            alpha = [0] * d
            alpha[i] += 1
            alpha[j] += 1
            cov[i][j] = cov[j][i] = central_moment(params, alpha)
    return cov


def _positive_probs(params: DistributionParams) -> tuple[Fraction, ...]:
    if any(c == 0 for c in params.counts):
        raise ParameterError(
            "correction factor needs every explicit category nonempty (p_i > 0); "
            "drop zero-count categories first"
        )
    return tuple(Fraction(c, params.N) for c in params.counts)


def correction_factor(params: DistributionParams, k: Iterable[int]) -> Fraction:
    """Finite-population factor ``prod (N p_i)^(k_i) / (N^(|k|) prod p_i^k_i)``.

    Multiplying the with-replacement factorial moment by this gives the
    without-replacement one. When ``|k| > N`` the numerator vanishes before
    the denominator does and the factor is reported as 0.
    """
    probs = _positive_probs(params)
    k = as_multi_index(k, params.d)
    order = sum(k)
    num = Fraction(1)
    den = Fraction(1)
    for p, ki in zip(probs, k):
        num *= falling_factorial(params.N * p, ki)
        den *= p**ki
    if num == 0:
        return num
    return num / (falling_factorial(params.N, order) * den)


def multinomial_factorial_moment(n: int, probs: Iterable, alpha: Iterable[int]) -> Fraction:
    """Factorial moment of the multinomial limit: ``n^(|alpha|) prod p_i^alpha_i``."""
    probs = probability_vector(probs)
    alpha = as_multi_index(alpha, len(probs))
    value = Fraction(falling_factorial(n, sum(alpha)))
    for p, a in zip(probs, alpha):
        value *= p**a
    return value


def multinomial_noncentral_moment(n: int, probs: Iterable, alpha: Iterable[int]) -> Fraction:
    """Raw moment ``E[prod Y_i^alpha_i]`` of a Multinomial(n, p) vector."""
    probs = probability_vector(probs)
    alpha = as_multi_index(alpha, len(probs))
    value = Fraction(0)
    for k in _box(alpha):
        term = Fraction(falling_factorial(n, sum(k)))
        for p, a, ki in zip(probs, alpha, k):
            term *= stirling2(a, ki) * p**ki
        value += term
    return value


def noncentral_moment_from_probs(N: int, n: int, probs: Iterable, alpha: Iterable[int]) -> Fraction:
    """Raw moment written in the ``(N, n, p)`` parametrization.

    Each term is the multinomial term times the finite-population correction.
    Requires every ``p_i > 0``.
    """
    probs = probability_vector(probs)
    params = params_from_probs(N, n, probs)
    alpha = as_multi_index(alpha, params.d)
    value = Fraction(0)
    for k in _box(alpha):
        term = Fraction(falling_factorial(n, sum(k)))
        if term == 0:
            continue
        for p, a, ki in zip(probs, alpha, k):
            term *= stirling2(a, ki) * p**ki
        if term:
            value += correction_factor(params, k) * term
    return value


def central_moment_from_probs(N: int, n: int, probs: Iterable, alpha: Iterable[int]) -> Fraction:
    """Central moment in the ``(N, n, p)`` parametrization. Requires every ``p_i > 0``."""
    probs = probability_vector(probs)
    params = params_from_probs(N, n, probs)
    alpha = as_multi_index(alpha, params.d)
    total = sum(alpha)
    value = Fraction(0)
    for ell in _box(alpha):
        outer = Fraction((-n) ** (total - sum(ell)))
        for a, li in zip(alpha, ell):
            outer *= binomial(a, li)
        for k in _box(ell):
            term = outer * falling_factorial(n, sum(k))
            if term == 0:
                continue
            for p, a, li, ki in zip(probs, alpha, ell, k):
                term *= stirling2(li, ki) * p ** (a - li + ki)
            if term:
                value += correction_factor(params, k) * term
    return value


_FORMULAS = {
    MomentKind.FACTORIAL: factorial_moment,
    MomentKind.NONCENTRAL: noncentral_moment,
    MomentKind.CENTRAL: central_moment,
}


@dataclass(frozen=True)
class MomentResult:
    params: DistributionParams
    alpha: tuple[int, ...]
    kind: MomentKind
    value: Fraction


def compute_moment(params: DistributionParams, alpha: Iterable[int], kind) -> MomentResult:
    kind = MomentKind.parse(kind)
    alpha = as_multi_index(alpha, params.d)
    return MomentResult(params, alpha, kind, _FORMULAS[kind](params, alpha))


def alpha_grid(d: int, max_order: int, max_entry: int | None = None) -> Iterator[tuple[int, ...]]:
    """All ``alpha`` of length ``d`` with ``|alpha| <= max_order``, lexicographic."""
    if max_order < 0:
        raise ParameterError(f"max-order must be nonnegative, got {max_order}")
    top = max_order if max_entry is None else min(max_entry, max_order)
    for alpha in itertools.product(range(top + 1), repeat=d):
        if sum(alpha) <= max_order:
            yield alpha
