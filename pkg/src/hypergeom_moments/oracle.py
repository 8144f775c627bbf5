"""Brute-force moments by pmf enumeration, and a without-replacement sampler.

Nothing in this module touches the closed-form moment formulas; it only uses
the pmf and the support, so it can serve as an independent check on them.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .combinatorics import binomial, falling_factorial
from .distribution import DistributionParams, as_multi_index, enumerate_support
from .kinds import MomentKind

__all__ = [
    "MonteCarloEstimate",
    "SampleDraw",
    "brute_force_moment",
    "mc_moment_estimate",
    "sample",
    "sample_many",
]


@lru_cache(maxsize=256)
def _weighted_support(params: DistributionParams):
    # Support points with their integer pmf numerators; the common
    # denominator is C(N, n). Means are kept as integer numerators too.
    points = []
    for k in enumerate_support(params):
        w = binomial(params.last_count, params.n - sum(k))
        for c, ki in zip(params.counts, k):
            w *= binomial(c, ki)
        points.append((k, w))
    total = binomial(params.N, params.n)
    mean_num = tuple(sum(w * k[i] for k, w in points) for i in range(params.d))
    return tuple(points), total, mean_num


def brute_force_moment(params: DistributionParams, alpha: Iterable[int], kind) -> Fraction:
    """``sum_k g(k) pmf(k)`` over the support, with ``g`` picked by ``kind``."""
    kind = MomentKind.parse(kind)
    alpha = as_multi_index(alpha, params.d)
    points, total, mean_num = _weighted_support(params)
    acc = 0
    if kind is MomentKind.CENTRAL:
        # (k_i - m_i/T) = (k_i T - m_i) / T, so scale everything by T^|alpha|.
        for k, w in points:
            g = w
            for ki, mi, a in zip(k, mean_num, alpha):
                g *= (ki * total - mi) ** a
            acc += g
        return Fraction(acc, total ** (sum(alpha) + 1))
    for k, w in points:
        g = w
        for ki, a in zip(k, alpha):
            g *= falling_factorial(ki, a) if kind is MomentKind.FACTORIAL else ki**a
        acc += g
    return Fraction(acc, total)


@dataclass(frozen=True)
class SampleDraw:
    counts_drawn: tuple[int, ...]


def _draw(params: DistributionParams, rng: random.Random) -> tuple[int, ...]:
    # Pool of category labels 0..d (d is the implied last one); a partial
    # Fisher-Yates shuffle moves n uniformly chosen units to the front.
    pool = [i for i, c in enumerate(params.all_counts) for _ in range(c)]
    drawn = [0] * (params.d + 1)
    for j in range(params.n):
        r = rng.randrange(j, len(pool))
        pool[j], pool[r] = pool[r], pool[j]
        drawn[pool[j]] += 1
    return tuple(drawn[:-1])


def sample(params: DistributionParams, rng_seed: int) -> SampleDraw:
    """One draw of ``n`` units without replacement, reproducible from the seed.

    Uses :class:`random.Random` (Mersenne Twister) seeded with ``rng_seed``.
    """
    return SampleDraw(_draw(params, random.Random(rng_seed)))


def sample_many(params: DistributionParams, num_samples: int, rng_seed: int) -> list[tuple[int, ...]]:
    """``num_samples`` independent draws from one seeded generator."""
    rng = random.Random(rng_seed)
    return [_draw(params, rng) for _ in range(num_samples)]


@dataclass(frozen=True)
class MonteCarloEstimate:
    estimate: float
    std_error: float
    num_samples: int


def _statistic(kind: MomentKind, alpha: Sequence[int], means: Sequence[float]):
    if kind is MomentKind.FACTORIAL:
        return lambda k: math.prod(falling_factorial(ki, a) for ki, a in zip(k, alpha))
    if kind is MomentKind.NONCENTRAL:
        return lambda k: math.prod(ki**a for ki, a in zip(k, alpha))
    return lambda k: math.prod((ki - m) ** a for ki, m, a in zip(k, means, alpha))


def mc_moment_estimate(
    params: DistributionParams,
    alpha: Iterable[int],
    kind,
    num_samples: int,
    rng_seed: int,
) -> MonteCarloEstimate:
    """Sample mean of the moment statistic over seeded draws, with its standard error.

    Central moments are taken around the known mean ``n N_i / N``. This is the
    only floating point code in the package.
    """
    if num_samples < 1:
        raise ValueError(f"num_samples must be >= 1, got {num_samples}")
    kind = MomentKind.parse(kind)
    alpha = as_multi_index(alpha, params.d)
    means = [params.n * c / params.N if params.N else 0.0 for c in params.counts]
    g = _statistic(kind, alpha, means)
    values = [float(g(k)) for k in sample_many(params, num_samples, rng_seed)]
    mean = math.fsum(values) / num_samples
    if num_samples == 1:
        return MonteCarloEstimate(mean, 0.0, 1)
    var = math.fsum((v - mean) ** 2 for v in values) / (num_samples - 1)
    return MonteCarloEstimate(mean, math.sqrt(var / num_samples), num_samples)
