"""Edge-colorings of K_n and the exact completeness/connectedness verifier."""
from __future__ import annotations

import json
import operator
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

from rankcolor.errors import DomainError, ValidationError
from rankcolor.graph import edge_count, edge_endpoints, edge_index


class UnionFind:
    def __init__(self, items: Iterable[int] = ()):
        self.parent: dict[int, int] = {}
        for x in items:
            self.add(x)

    def add(self, x: int) -> None:
        self.parent.setdefault(x, x)

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if ry < rx:
            rx, ry = ry, rx
        self.parent[ry] = rx
        return True

    def count(self) -> int:
        return sum(1 for x in self.parent if self.parent[x] == x)


@dataclass(frozen=True)
class EdgeColoring:
    """One color per edge of K_n, in lexicographic edge order."""

    n: int
    colors: tuple[int, ...]
    palette_size: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 2:
            raise ValidationError(f"n must be an integer >= 2, got {self.n!r}")
        if (
            not isinstance(self.palette_size, int)
            or isinstance(self.palette_size, bool)
            or self.palette_size < 1
        ):
            raise ValidationError(f"palette_size must be a positive integer, got {self.palette_size!r}")
        colors = tuple(self.colors)
        expected = edge_count(self.n)
        if len(colors) != expected:
            raise ValidationError(f"colors has length {len(colors)}, K_{self.n} has {expected} edges")
        normalised = []
        for i, c in enumerate(colors):
            try:
                if isinstance(c, bool):
                    raise TypeError
                c = operator.index(c)
            except TypeError:
                raise ValidationError(f"colors[{i}] = {c!r} is not an integer") from None
            if not 0 <= c < self.palette_size:
                raise ValidationError(f"colors[{i}] = {c} outside palette [0, {self.palette_size})")
            normalised.append(c)
        object.__setattr__(self, "colors", tuple(normalised))

    @classmethod
    def from_classes(
        cls, n: int, classes: Sequence[Iterable[tuple[int, int]]], palette_size: int | None = None
    ) -> "EdgeColoring":
        """Build a coloring where ``classes[c]`` lists the edges ``(u, v)`` of color ``c``."""
        colors: list[int | None] = [None] * edge_count(n)
        for c, edges in enumerate(classes):
            for u, v in edges:
                u, v = min(u, v), max(u, v)
                e = edge_index(u, v, n)
                if colors[e] is not None:
                    raise ValidationError(f"edge ({u},{v}) assigned twice")
                colors[e] = c
        missing = [edge_endpoints(e, n) for e, c in enumerate(colors) if c is None]
        if missing:
            raise ValidationError(f"edges without a color: {missing}")
        return cls(n, tuple(colors), palette_size or len(classes))  # type: ignore[arg-type]

    def classes(self) -> dict[int, list[tuple[int, int]]]:
        """Edges of every used color, keyed by color in ascending order."""
        out: dict[int, list[tuple[int, int]]] = {}
        for e, c in enumerate(self.colors):
            out.setdefault(c, []).append(edge_endpoints(e, self.n))
        return dict(sorted(out.items()))


@dataclass(frozen=True)
class VerificationReport:
    used_colors: frozenset[int]
    class_sizes: Mapping[int, int]
    class_components: Mapping[int, int]
    uncovered_pairs: tuple[tuple[int, int], ...]
    is_connected: bool = field(init=False)
    is_complete: bool = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "is_connected", all(k == 1 for k in self.class_components.values()))
        object.__setattr__(self, "is_complete", not self.uncovered_pairs)

    @property
    def is_valid(self) -> bool:
        return self.is_complete and self.is_connected

    @property
    def color_count(self) -> int:
        return len(self.used_colors)

    def to_dict(self) -> dict[str, Any]:
        return {
            "colors_used": self.color_count,
            "is_complete": self.is_complete,
            "is_connected": self.is_connected,
            "uncovered_pairs": [list(p) for p in self.uncovered_pairs],
            "class_sizes": {str(c): s for c, s in sorted(self.class_sizes.items())},
            "class_components": {str(c): k for c, k in sorted(self.class_components.items())},
        }


def _class_component_counts(c: EdgeColoring) -> dict[int, int]:
    forests: dict[int, UnionFind] = {}
    for e, color in enumerate(c.colors):
        u, v = edge_endpoints(e, c.n)
        uf = forests.setdefault(color, UnionFind())
        uf.add(u)
        uf.add(v)
        uf.union(u, v)
    return {color: uf.count() for color, uf in sorted(forests.items())}


def verify(c: EdgeColoring) -> VerificationReport:
    """Decide whether ``c`` is complete and connected, with diagnostics.

    A pair of used colors is covered when some vertex is incident to edges
    of both colors; every chromatic class must induce a connected subgraph.
    """
    sizes = Counter(c.colors)
    incident: list[set[int]] = [set() for _ in range(c.n)]
    for e, color in enumerate(c.colors):
        u, v = edge_endpoints(e, c.n)
        incident[u].add(color)
        incident[v].add(color)
    covered: set[tuple[int, int]] = set()
    for at_vertex in incident:
        covered.update(combinations(sorted(at_vertex), 2))
    used = sorted(sizes)
    uncovered = tuple(p for p in combinations(used, 2) if p not in covered)
    return VerificationReport(
        used_colors=frozenset(used),
        class_sizes=dict(sorted(sizes.items())),
        class_components=_class_component_counts(c),
        uncovered_pairs=uncovered,
    )


def count_colors(c: EdgeColoring) -> int:
    return len(set(c.colors))


def class_components(c: EdgeColoring, color: int) -> int:
    """Number of connected components of the subgraph induced by one color class."""
    uf = UnionFind()
    for e, col in enumerate(c.colors):
        if col == color:
            u, v = edge_endpoints(e, c.n)
            uf.add(u)
            uf.add(v)
            uf.union(u, v)
    if not uf.parent:
        raise DomainError(f"color {color} is not used")
    return uf.count()


# -- solution file format ----------------------------------------------------


def dumps_coloring(c: EdgeColoring, meta: Mapping[str, Any] | None = None) -> str:
    doc: dict[str, Any] = {"n": c.n, "palette_size": c.palette_size, "colors": list(c.colors)}
    if meta is not None:
        doc["meta"] = dict(meta)
    return json.dumps(doc) + "\n"


def loads_coloring(text: str) -> tuple[EdgeColoring, dict[str, Any] | None]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ValidationError("top-level JSON value must be an object")
    for key in ("n", "palette_size", "colors"):
        if key not in doc:
            raise ValidationError(f"missing field '{key}'")
    if not isinstance(doc["colors"], list):
        raise ValidationError("field 'colors' must be an array")
    meta = doc.get("meta")
    if meta is not None and not isinstance(meta, dict):
        raise ValidationError("field 'meta' must be an object")
    try:
        coloring = EdgeColoring(doc["n"], tuple(doc["colors"]), doc["palette_size"])
    except ValidationError as exc:
        raise ValidationError(f"field error: {exc}") from exc
    return coloring, meta


def read_coloring(path: str | Path) -> tuple[EdgeColoring, dict[str, Any] | None]:
    return loads_coloring(Path(path).read_text())


def write_coloring(path: str | Path, c: EdgeColoring, meta: Mapping[str, Any] | None = None) -> Path:
    path = Path(path)
    path.write_text(dumps_coloring(c, meta))
    return path
