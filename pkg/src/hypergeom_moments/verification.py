"""Compare closed-form moments against the brute-force oracle."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Optional

from .distribution import DistributionParams, as_multi_index, params_from_counts
from .kinds import MomentKind
from .moments import alpha_grid, central_moment, factorial_moment, noncentral_moment
from .oracle import brute_force_moment

__all__ = ["OracleReport", "grid_params", "verify", "verify_grid", "verify_params"]

Formula = Callable[[DistributionParams, tuple[int, ...]], Fraction]

FORMULAS: dict[MomentKind, Formula] = {
    MomentKind.FACTORIAL: factorial_moment,
    MomentKind.NONCENTRAL: noncentral_moment,
    MomentKind.CENTRAL: central_moment,
}


@dataclass(frozen=True)
class OracleReport:
    params: DistributionParams
    alpha: tuple[int, ...]
    kind: MomentKind
    formula_value: Fraction
    oracle_value: Fraction

    @property
    def match(self) -> bool:
        return self.formula_value == self.oracle_value


def verify(
    params: DistributionParams,
    alpha: Iterable[int],
    kind,
    formula: Optional[Formula] = None,
) -> OracleReport:
    """Evaluate one moment both ways. ``formula`` overrides the closed form (for mutation tests)."""
    kind = MomentKind.parse(kind)
    alpha = as_multi_index(alpha, params.d)
    fn = formula or FORMULAS[kind]
    return OracleReport(params, alpha, kind, fn(params, alpha), brute_force_moment(params, alpha, kind))


def verify_params(
    params: DistributionParams,
    max_order: int,
    max_entry: int | None = None,
    kinds: Iterable[MomentKind] = tuple(MomentKind),
) -> list[OracleReport]:
    """Reports for every alpha of the grid and every requested kind, in order."""
    kinds = tuple(kinds)
    return [
        verify(params, alpha, kind)
        for alpha in alpha_grid(params.d, max_order, max_entry)
        for kind in kinds
    ]


def grid_params(dims: Iterable[int] = (1, 2, 3), populations: Iterable[int] = range(1, 10)) -> Iterator[DistributionParams]:
    """Every valid ``(N, n, counts)`` with ``d`` in ``dims`` and ``N`` in ``populations``."""
    for d in dims:
        for N in populations:
            for counts in itertools.product(range(N + 1), repeat=d):
                if sum(counts) > N:
                    continue
                for n in range(N + 1):
                    yield params_from_counts(N, n, counts)


def _mismatches(args) -> list[OracleReport]:
    params, max_order, max_entry, kinds = args
    return [r for r in verify_params(params, max_order, max_entry, kinds) if not r.match]


def verify_grid(
    params_list: Iterable[DistributionParams],
    max_order: int,
    max_entry: int | None = None,
    kinds: Iterable[MomentKind] = tuple(MomentKind),
    workers: int = 1,
) -> tuple[int, list[OracleReport]]:
    """Check many parameter sets; returns ``(number checked, mismatches)``.

    With ``workers > 1`` the parameter sets are spread over processes; the
    mismatch list keeps the input order either way.
    """
    kinds = tuple(kinds)
    jobs = [(p, max_order, max_entry, kinds) for p in params_list]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_mismatches, jobs, chunksize=64))
    else:
        results = [_mismatches(job) for job in jobs]
    return len(jobs), [r for batch in results for r in batch]
