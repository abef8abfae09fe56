"""Complete graph K_n with a fixed lexicographic edge order.

Edge ``e`` of K_n is the pair ``(u, v)``, ``u < v``, at position ``e`` in the
lexicographic listing ``(0,1), (0,2), ..., (0,n-1), (1,2), ...``. Every
genotype, solution file and export in this package uses that order.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from rankcolor.errors import DomainError


def edge_count(n: int) -> int:
    if n < 2:
        raise DomainError(f"K_n needs n >= 2, got {n}")
    return n * (n - 1) // 2


def edge_index(u: int, v: int, n: int) -> int:
    """Position of edge ``(u, v)`` in the lexicographic order of K_n."""
    if not 0 <= u < v < n:
        raise DomainError(f"need 0 <= u < v < n, got u={u}, v={v}, n={n}")
    # edges before row u: (n-1) + (n-2) + ... + (n-u)
    return u * n - u * (u + 1) // 2 + (v - u - 1)


@lru_cache(maxsize=None)
def _endpoint_table(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(combinations(range(n), 2))


def edge_endpoints(e: int, n: int) -> tuple[int, int]:
    table = _endpoint_table(n) if n >= 2 else ()
    if not 0 <= e < len(table):
        raise DomainError(f"edge index {e} out of range for K_{n}")
    return table[e]


@lru_cache(maxsize=None)
def endpoint_arrays(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Read-only arrays ``(us, vs)`` with ``(us[e], vs[e]) = edge_endpoints(e, n)``."""
    pairs = np.array(_endpoint_table(n), dtype=np.intp).reshape(-1, 2)
    us, vs = pairs[:, 0].copy(), pairs[:, 1].copy()
    us.flags.writeable = False
    vs.flags.writeable = False
    return us, vs


@dataclass(frozen=True)
class CompleteGraph:
    n: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise DomainError(f"K_n needs n >= 2, got {self.n}")

    @property
    def edge_count(self) -> int:
        return edge_count(self.n)

    def edge_index(self, u: int, v: int) -> int:
        return edge_index(u, v, self.n)

    def edge_endpoints(self, e: int) -> tuple[int, int]:
        return edge_endpoints(e, self.n)

    def edges(self) -> tuple[tuple[int, int], ...]:
        return _endpoint_table(self.n)
