"""Parameters, support and exact pmf of the multivariate hypergeometric law.

A population of ``N`` units is split into ``d + 1`` categories. The first
``d`` category sizes are stored explicitly in ``counts``; the last one is
implied as ``N - sum(counts)`` and never stored. Sample vectors likewise hold
only the first ``d`` coordinates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .combinatorics import binomial

__all__ = [
    "DimensionError",
    "DistributionParams",
    "NonIntegralPopulationError",
    "ParameterError",
    "as_multi_index",
    "enumerate_support",
    "params_from_counts",
    "params_from_probs",
    "parse_rational",
    "pmf",
    "probability_vector",
    "probs_of",
]

MultiIndex = tuple[int, ...]


class ParameterError(ValueError):
    """Invalid distribution parameters or arguments."""


class NonIntegralPopulationError(ParameterError):
    """``N * p_i`` is not an integer, so (N, p) does not describe a population."""


class DimensionError(ParameterError):
    """A multi-index does not match the dimension of the distribution."""


@dataclass(frozen=True)
class DistributionParams:
    """Validated ``(N, n, counts)`` triple. Build it with :func:`params_from_counts`."""

    N: int
    n: int
    counts: tuple[int, ...]

    @property
    def d(self) -> int:
        return len(self.counts)

    @property
    def last_count(self) -> int:
        """Size of the implied ``(d+1)``-th category."""
        return self.N - sum(self.counts)

    @property
    def all_counts(self) -> tuple[int, ...]:
        return self.counts + (self.last_count,)


def _as_int(value, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        if isinstance(value, Fraction) and value.denominator == 1:
            return int(value)
        raise ParameterError(f"{name} must be an integer, got {value!r}")
    return value


def params_from_counts(N: int, n: int, counts: Iterable[int]) -> DistributionParams:
    """Validate and build parameters from the subpopulation counts."""
    N = _as_int(N, "N")
    n = _as_int(n, "n")
    counts = tuple(_as_int(c, "count") for c in counts)
    if not counts:
        raise ParameterError("dimension must be >= 1")
    if N < 0:
        raise ParameterError(f"population N must be nonnegative, got {N}")
    if n < 0:
        raise ParameterError(f"sample size n must be nonnegative, got {n}")
    if any(c < 0 for c in counts):
        raise ParameterError(f"subpopulation counts must be nonnegative, got {list(counts)}")
    if n > N:
        raise ParameterError(f"sample size exceeds population: n={n} > N={N}")
    if sum(counts) > N:
        raise ParameterError(
            f"subpopulation counts exceed population: sum={sum(counts)} > N={N}"
        )
    return DistributionParams(N, n, counts)


def parse_rational(text: str) -> Fraction:
    """Parse ``"1/2"``, ``"3"`` or ``"0.25"`` into an exact fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParameterError(f"not a rational number: {text!r}") from exc


def probability_vector(probs: Iterable) -> tuple[Fraction, ...]:
    """Validate ``p_1..p_d`` as a point of the simplex and return exact fractions."""
    out = []
    for p in probs:
        if isinstance(p, str):
            p = parse_rational(p)
        elif isinstance(p, float):
            raise ParameterError(f"probabilities must be exact, got float {p!r}")
        out.append(Fraction(p))
    if not out:
        raise ParameterError("dimension must be >= 1")
    if any(p < 0 for p in out):
        raise ParameterError("probabilities must be nonnegative")
    if sum(out) > 1:
        raise ParameterError(f"probabilities sum to {sum(out)} > 1")
    return tuple(out)


def params_from_probs(N: int, n: int, probs: Iterable) -> DistributionParams:
    """Build parameters from ``N``, ``n`` and proportions ``p_i = N_i / N``."""
    probs = probability_vector(probs)
    N = _as_int(N, "N")
    counts = []
    for i, p in enumerate(probs, start=1):
        c = N * p
        if c.denominator != 1:
            raise NonIntegralPopulationError(
                f"N*p_{i} non-integral: {N}*{p} = {c} is not an integer"
            )
        counts.append(int(c))
    return params_from_counts(N, n, counts)


def probs_of(params: DistributionParams) -> tuple[Fraction, ...]:
    """Proportions ``N_i / N`` of the explicit categories."""
    if params.N == 0:
        raise ParameterError("proportions are undefined for an empty population")
    return tuple(Fraction(c, params.N) for c in params.counts)


def as_multi_index(values: Iterable[int], d: int | None = None) -> MultiIndex:
    """Coerce to a tuple of nonnegative ints, checking the dimension if given."""
    index = tuple(_as_int(v, "multi-index entry") for v in values)
    if any(v < 0 for v in index):
        raise ParameterError(f"multi-index entries must be nonnegative, got {list(index)}")
    if d is not None and len(index) != d:
        raise DimensionError(f"multi-index has dimension {len(index)}, expected {d}")
    return index


def enumerate_support(params: DistributionParams) -> Iterator[MultiIndex]:
    """Yield the support points in lexicographic order.

    A point ``k`` is in the support when ``0 <= k_i <= N_i``, ``sum(k) <= n``
    and the implied last coordinate ``n - sum(k)`` fits in the last category.
    """
    n = params.n
    low = n - params.last_count
    for k in itertools.product(*(range(min(c, n) + 1) for c in params.counts)):
        s = sum(k)
        if low <= s <= n:
            yield k


def pmf(params: DistributionParams, k: Sequence[int]) -> Fraction:
    """Probability of observing the first ``d`` sample counts ``k``."""
    if len(k) != params.d:
        raise DimensionError(f"point has dimension {len(k)}, expected {params.d}")
    rest = params.n - sum(k)
    if rest < 0 or any(ki < 0 for ki in k):
        return Fraction(0)
    weight = binomial(params.last_count, rest)
    for c, ki in zip(params.counts, k):
        weight *= binomial(c, ki)
    return Fraction(weight, binomial(params.N, params.n))
