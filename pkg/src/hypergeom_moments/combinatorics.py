"""Exact combinatorial kernel: falling factorials, binomials, Stirling numbers.

Everything here is integer or :class:`fractions.Fraction` arithmetic. Out of
range arguments to :func:`binomial` and :func:`stirling2` give 0 so callers can
sum over rectangular index boxes without guarding the edges.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Sequence, Union

Exact = Union[int, Fraction]

__all__ = [
    "StirlingTable",
    "binomial",
    "build_stirling_table",
    "falling_factorial",
    "stirling2",
]


def falling_factorial(x: Exact, order: int) -> Exact:
    """Return ``x (x - 1) ... (x - order + 1)``, with ``x**(0) == 1``.

    The result has the same numeric kind as ``x`` (int stays int).
    """
    if order < 0:
        raise ValueError(f"order must be nonnegative, got {order}")
    result = x - x + 1  # keeps the numeric kind of x
    for j in range(order):
        term = x - j
        if term == 0:
            return result * 0
        result *= term
    return result


def binomial(a: int, b: int) -> int:
    """Binomial coefficient, zero when ``b < 0`` or ``b > a``."""
    if a < 0:
        raise ValueError(f"binomial requires a >= 0, got {a}")
    if b < 0 or b > a:
        return 0
    b = min(b, a - b)
    num = 1
    den = 1
    for j in range(1, b + 1):
        num *= a - b + j
        den *= j
    return num // den


class StirlingTable:
    """Immutable triangular table of Stirling numbers of the second kind.

    ``table[n][k]`` holds S(n, k) for ``0 <= k <= n <= max_n``.
    """

    __slots__ = ("_rows",)

    def __init__(self, rows: Sequence[Sequence[int]]):
        self._rows = tuple(tuple(r) for r in rows)

    @property
    def max_n(self) -> int:
        return len(self._rows) - 1

    def row(self, n: int) -> tuple[int, ...]:
        return self._rows[n]

    def __getitem__(self, n: int) -> tuple[int, ...]:
        return self._rows[n]

    def __len__(self) -> int:
        return len(self._rows)

    def lookup(self, n: int, k: int) -> int:
        if n < 0 or k < 0:
            raise ValueError("Stirling indices must be nonnegative")
        if n > self.max_n:
            raise IndexError(f"table built to {self.max_n}, asked for row {n}")
        if k > n:
            return 0
        return self._rows[n][k]

    def extended(self, max_n: int) -> "StirlingTable":
        """Return a new table grown to ``max_n`` rows (self if already big enough)."""
        if max_n <= self.max_n:
            return self
        rows = list(self._rows)
        for n in range(len(rows), max_n + 1):
            prev = rows[n - 1]
            row = [0] * (n + 1)
            row[n] = 1
            for k in range(1, n):
                row[k] = k * prev[k] + prev[k - 1]
            rows.append(tuple(row))
        return StirlingTable(rows)

    def __repr__(self) -> str:
        return f"StirlingTable(max_n={self.max_n})"


def build_stirling_table(max_n: int) -> StirlingTable:
    """Build the table of S(n, k) for all ``0 <= k <= n <= max_n``."""
    if max_n < 0:
        raise ValueError(f"max_n must be nonnegative, got {max_n}")
    return StirlingTable([(1,)]).extended(max_n)


# Process-wide table; replaced wholesale under the lock so readers never see a
# half-built row.
_table = build_stirling_table(16)
_table_lock = threading.Lock()


def shared_stirling_table(max_n: int) -> StirlingTable:
    global _table
    table = _table
    if max_n <= table.max_n:
        return table
    with _table_lock:
        if max_n > _table.max_n:
            _table = _table.extended(max(max_n, 2 * _table.max_n))
        return _table


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind S(n, k); 0 when ``k > n``."""
    if n < 0 or k < 0:
        raise ValueError("Stirling indices must be nonnegative")
    if k > n:
        return 0
    return shared_stirling_table(n).lookup(n, k)
