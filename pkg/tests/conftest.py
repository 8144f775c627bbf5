import itertools
from fractions import Fraction
from math import comb

import pytest

from hypergeom_moments import params_from_counts


@pytest.fixture
def small():
    """N=6, n=3, counts=(3, 2): implied third category of size 1."""
    return params_from_counts(6, 3, [3, 2])


def naive_expectation(N, n, counts, g):
    """Expectation of g over all (N choose n) unordered samples of labelled units.

    Deliberately avoids the package: it walks every subset of the population.
    """
    labels = [i for i, c in enumerate(list(counts) + [N - sum(counts)]) for _ in range(c)]
    total = Fraction(0)
    subsets = 0
    for chosen in itertools.combinations(range(N), n):
        k = [0] * len(counts)
        for u in chosen:
            if labels[u] < len(counts):
                k[labels[u]] += 1
        total += g(tuple(k))
        subsets += 1
    assert subsets == comb(N, n)
    return total / subsets
