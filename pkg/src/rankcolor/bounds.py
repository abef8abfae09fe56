"""Analytic and tabulated bounds on psi_c(n), the connected-pseudoachromatic index of K_n.

The approximate upper bound comes from balancing two caps on the number of
colors ``k`` given the size ``x`` of the smallest class:

* ``f_n(x) = n(n-1) / (2x)``: the classes partition the edges;
* ``g_n(x) = (n(x+1)^2 - x^3 - 2x^2 - 2x - 1) / (2x)``: classes that can meet a
  connected class of ``x`` edges, under an average-degree assumption.

``f_n`` and ``g_n`` cross at ``x0 = (sqrt(4n-3) - 1)/2`` and ``x1 = n - 1``;
``min(f_n, g_n)`` peaks at ``x0``, giving ``k ~ n(n-1)/(sqrt(4n-3) - 1)``.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from rankcolor.errors import DomainError

# n -> value; n = 2..31
KNOWN_UPPER = dict(zip(range(2, 32), (
    1, 3, 4, 6, 7, 10, 14, 18, 22, 25, 28, 31, 34, 37, 40,
    45, 51, 57, 63, 70, 74, 78, 82, 86, 90, 94, 98, 102, 106, 116,
)))
KNOWN_LOWER = dict(zip(range(2, 32), (
    1, 3, 4, 6, 7, 10, 11, 12, 13, 14, 19, 26, 27, 28, 29,
    30, 31, 32, 33, 42, 43, 44, 45, 46, 47, 48, 49, 50, 51, 93,
)))
# lower bounds found with the Rank GA
IMPROVED_LOWER = {
    9: 13, 10: 16, 11: 18, 12: 21,
    17: 32, 18: 35, 19: 37, 20: 39, 21: 43, 22: 46, 23: 50, 24: 52,
    25: 54, 26: 55, 27: 59, 28: 62, 29: 64, 30: 66,
}
EXACT = {n: KNOWN_UPPER[n] for n in range(2, 8)}


def f_n(x, n):
    """Works elementwise on numpy arrays as well as on scalars."""
    if np.any(np.asarray(x) <= 0):
        raise DomainError("x must be positive")
    if np.any(np.asarray(n) < 2):
        raise DomainError("n must be >= 2")
    return n * (n - 1) / (2 * x)


def g_n(x, n):
    if np.any(np.asarray(x) <= 0):
        raise DomainError("x must be positive")
    return (n * (x * x + 2 * x + 1) - x**3 - 2 * x * x - 2 * x - 1) / (2 * x)


def crossing_x0(n: int) -> float:
    """First positive crossing of ``f_n`` and ``g_n`` (solves ``n = x^2 + x + 1``)."""
    if n < 2:
        raise DomainError("n must be >= 2")
    m = 4 * n - 3
    r = math.isqrt(m)
    root = float(r) if r * r == m else math.sqrt(m)
    return (root - 1) / 2


def crossing_x1(n: int) -> float:
    """Second crossing; ``f_n <= g_n`` on ``[x0, x1]``."""
    if n < 2:
        raise DomainError("n must be >= 2")
    return float(n - 1)


def approx_upper(n: int) -> int:
    """``floor(n(n-1) / (sqrt(4n-3) - 1))``, computed exactly in integers."""
    if n < 8:
        raise DomainError("the approximate upper bound is stated for n >= 8")
    m = 4 * n - 3
    num = n * (n - 1)
    k = math.floor(num / (math.sqrt(m) - 1))
    # k is the floor iff k*(s-1) <= num < (k+1)*(s-1) with s = sqrt(m),
    # i.e. k^2 m <= (num + k)^2 and (k+1)^2 m > (num + k + 1)^2
    while k > 0 and k * k * m > (num + k) ** 2:
        k -= 1
    while (k + 1) ** 2 * m <= (num + k + 1) ** 2:
        k += 1
    return k


def classic_lower(n: int) -> float:
    if n < 2:
        raise DomainError("n must be >= 2")
    return (n - 1) ** 1.5 / 2


def classic_upper(n: int) -> float:
    if n < 2:
        raise DomainError("n must be >= 2")
    return (n - 1) * (math.sqrt(n / 2 + 1 / 16) + 1 / 4)


def prime_power(q: int) -> tuple[int, int] | None:
    """``(p, e)`` with ``q = p**e`` for a prime ``p``, or None."""
    if q < 2:
        return None
    p = next((d for d in range(2, math.isqrt(q) + 1) if q % d == 0), q)
    e = 0
    while q % p == 0:
        q //= p
        e += 1
    return (p, e) if q == 1 else None


def projective_lower(q: int) -> tuple[int, int]:
    """``(n, ceil(q/2) * n)`` for ``n = q^2 + q + 1``, ``q`` an odd prime power."""
    if q < 3 or q % 2 == 0 or prime_power(q) is None:
        raise DomainError(f"q must be an odd prime power >= 3, got {q}")
    n = q * q + q + 1
    return n, (q + 1) // 2 * n


@dataclass(frozen=True)
class BoundsRecord:
    n: int
    known_lower: int | None
    known_upper: int | None
    improved_lower: int | None
    approx_upper: int | None
    exact: int | None


def table_lookup(n: int) -> BoundsRecord:
    if n not in KNOWN_UPPER:
        raise KeyError(f"no tabulated bounds for n = {n} (range 2..31)")
    return BoundsRecord(
        n=n,
        known_lower=KNOWN_LOWER[n],
        known_upper=KNOWN_UPPER[n],
        improved_lower=IMPROVED_LOWER.get(n),
        approx_upper=approx_upper(n) if n >= 8 else None,
        exact=EXACT.get(n),
    )


def bounds_record(n: int) -> BoundsRecord:
    """Tabulated record when available, otherwise just the analytic bound."""
    if n < 2:
        raise DomainError("n must be >= 2")
    try:
        return table_lookup(n)
    except KeyError:
        return BoundsRecord(n, None, None, None, approx_upper(n), None)


CSV_COLUMNS = (
    "n", "exact", "known_lower", "improved_lower", "approx_upper",
    "known_upper", "classic_lower", "classic_upper",
)


def bounds_csv(n_min: int, n_max: int) -> str:
    if not 2 <= n_min <= n_max:
        raise DomainError(f"need 2 <= n_min <= n_max, got {n_min}, {n_max}")
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for n in range(n_min, n_max + 1):
        r = bounds_record(n)
        writer.writerow([
            n,
            *("" if v is None else v for v in (
                r.exact, r.known_lower, r.improved_lower, r.approx_upper, r.known_upper
            )),
            f"{classic_lower(n):.4f}",
            f"{classic_upper(n):.4f}",
        ])
    return out.getvalue()
