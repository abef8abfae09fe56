"""Exact psi_c(n) for small n by exhaustive search.

Colorings are enumerated up to relabelling as restricted-growth strings over
the lexicographically ordered edges: edge 0 gets color 0 and every later edge
gets a color at most one above the largest used so far. The search is a
depth-first branch and bound on the number of colors. A branch is cut when

* it cannot end with more colors than the best witness so far;
* some used color pair has no common vertex and cannot get one, because
  every vertex that could host both colors is out of reach of the undecided
  edges;
* some class has components that no undecided edge could join;
* the undecided edges must all open new colors (no slack), yet an existing
  class is already disconnected or an existing pair is uncovered.

All rules are monotone, so the search is exact when it finishes. Witnesses
are re-checked with :func:`rankcolor.coloring.verify` before being accepted.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from rankcolor.coloring import EdgeColoring, UnionFind, verify
from rankcolor.errors import DomainError
from rankcolor.graph import edge_count, edge_endpoints

MAX_EXACT_N = 5
MAX_BUDGETED_N = 6


@dataclass(frozen=True)
class OracleResult:
    n: int
    psi_c: int
    witness: EdgeColoring
    explored: int
    nodes: int
    status: str  # "optimal" or "incomplete"

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "psi_c": self.psi_c,
            "status": self.status,
            "explored": self.explored,
            "nodes": self.nodes,
            "witness": {
                "n": self.witness.n,
                "palette_size": self.witness.palette_size,
                "colors": list(self.witness.colors),
            },
        }


def restricted_growth_strings(length: int) -> Iterator[tuple[int, ...]]:
    """All restricted-growth strings of ``length`` in lexicographic order."""
    if length < 1:
        return
    s = [0] * length

    def rec(i: int, top: int) -> Iterator[tuple[int, ...]]:
        if i == length:
            yield tuple(s)
            return
        for c in range(top + 2):
            s[i] = c
            yield from rec(i + 1, max(top, c))

    s[0] = 0
    yield from rec(1, 0)


class _BudgetExhausted(Exception):
    pass


class _Search:
    def __init__(self, n: int, budget: int | None, prune: bool):
        self.n = n
        self.E = edge_count(n)
        self.ends = [edge_endpoints(e, n) for e in range(self.E)]
        # vertices touched by edges e..E-1, as bitmasks
        self.reach = [0] * (self.E + 1)
        for e in range(self.E - 1, -1, -1):
            u, v = self.ends[e]
            self.reach[e] = self.reach[e + 1] | (1 << u) | (1 << v)
        self.budget = budget
        self.prune = prune
        self.colors = [0] * self.E
        self.class_vertices: list[int] = []  # bitmask per color
        self.best = 0
        self.witness: tuple[int, ...] | None = None
        self.nodes = 0
        self.leaves = 0

    def run(self) -> bool:
        try:
            self._extend(0)
        except _BudgetExhausted:
            return False
        return True

    def _class_split(self, color: int, upto: int, joinable_from: int | None) -> bool:
        """True if class ``color`` stays disconnected even using edges ``joinable_from..``."""
        uf = UnionFind()
        for e in range(upto):
            if self.colors[e] == color:
                u, v = self.ends[e]
                uf.add(u)
                uf.add(v)
                uf.union(u, v)
        members = list(uf.parent)
        if uf.count() == 1:
            return False
        if joinable_from is not None:
            for e in range(joinable_from, self.E):
                u, v = self.ends[e]
                uf.add(u)
                uf.add(v)
                uf.union(u, v)
        root = uf.find(members[0])
        return any(uf.find(x) != root for x in members)

    def _doomed(self, e: int) -> bool:
        """Can the partial coloring of edges ``0..e-1`` still beat ``self.best``?"""
        used = len(self.class_vertices)
        remaining = self.E - e
        if used + remaining <= self.best:
            return True
        frozen = remaining - (self.best + 1 - used) <= 0
        reach = 0 if frozen else self.reach[e]
        cv = self.class_vertices
        for a in range(used):
            for b in range(a + 1, used):
                if cv[a] & cv[b]:
                    continue
                if not ((cv[a] | reach) & (cv[b] | reach)):
                    return True
        for c in range(used):
            if self._class_split(c, e, None if frozen else e):
                return True
        return False

    def _extend(self, e: int) -> None:
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise _BudgetExhausted
        if e == self.E:
            self.leaves += 1
            self._leaf()
            return
        if self.prune and e > 0 and self._doomed(e):
            return
        u, v = self.ends[e]
        mask = (1 << u) | (1 << v)
        used = len(self.class_vertices)
        for c in range(used + 1):
            self.colors[e] = c
            if c == used:
                self.class_vertices.append(mask)
                self._extend(e + 1)
                self.class_vertices.pop()
            else:
                old = self.class_vertices[c]
                self.class_vertices[c] = old | mask
                self._extend(e + 1)
                self.class_vertices[c] = old

    def _leaf(self) -> None:
        k = len(self.class_vertices)
        if k <= self.best:
            return
        candidate = EdgeColoring(self.n, tuple(self.colors), k)
        if verify(candidate).is_valid:
            self.best = k
            self.witness = candidate.colors


def exact_psi_c(n: int, budget: int | None = None) -> OracleResult:
    """Maximum number of colors of a complete connected edge-coloring of K_n.

    ``budget`` caps the number of search nodes. When it runs out the result
    has ``status == "incomplete"`` and ``psi_c`` is only a lower bound.
    n = 6 is accepted only together with a budget.
    """
    if n < 2:
        raise DomainError("n must be >= 2")
    if n > MAX_BUDGETED_N or (n > MAX_EXACT_N and budget is None):
        raise DomainError(f"exhaustive search is limited to n <= {MAX_EXACT_N} (n = 6 needs a budget)")
    if budget is not None and budget < 1:
        raise DomainError("budget must be positive")
    search = _Search(n, budget, prune=True)
    finished = search.run()
    if search.witness is None:
        # budget ran out before the first leaf; the single-color coloring always qualifies
        search.best, search.witness = 1, (0,) * search.E
    witness = EdgeColoring(n, search.witness, search.best)
    assert verify(witness).is_valid
    return OracleResult(
        n=n,
        psi_c=search.best,
        witness=witness,
        explored=search.leaves,
        nodes=search.nodes,
        status="optimal" if finished else "incomplete",
    )


def count_canonical_colorings(n: int) -> int:
    """Leaves of the unpruned search, i.e. the Bell number B(n(n-1)/2)."""
    search = _Search(n, None, prune=False)
    search._leaf = lambda: None  # type: ignore[method-assign]
    search.run()
    return search.leaves
