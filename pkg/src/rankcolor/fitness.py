"""Scalar fitness of an edge-coloring.

    value = alpha - beta*w_pairs - gamma*w_colors - std*w_std - avg*w_avg

alpha counts used colors, beta the used color pairs with no common vertex,
gamma the excess components summed over classes (components - 1), and std/avg
are the population standard deviation and mean of the used class sizes.

Two independent code paths compute it: :func:`evaluate` reads everything off
the verifier report, :class:`PopulationEvaluator` works on a whole population
of integer genotypes at once with numpy/scipy and is what the GA calls.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from rankcolor.coloring import EdgeColoring, verify
from rankcolor.errors import DomainError, ValidationError
from rankcolor.graph import edge_count, endpoint_arrays


@dataclass(frozen=True)
class FitnessWeights:
    weight_pairs: float = 0.5
    weight_colors: float = 0.5
    weight_std: float = 0.1
    weight_avg: float = 0.05

    def __post_init__(self) -> None:
        for name in ("weight_pairs", "weight_colors", "weight_std", "weight_avg"):
            w = getattr(self, name)
            if not (isinstance(w, (int, float)) and math.isfinite(w) and w >= 0):
                raise DomainError(f"{name} must be a finite nonnegative number, got {w!r}")

    def combine(self, alpha, beta, gamma, std, avg):
        # array-friendly; keep the term order fixed so both evaluators round alike
        return (
            alpha
            - beta * self.weight_pairs
            - gamma * self.weight_colors
            - std * self.weight_std
            - avg * self.weight_avg
        )


@dataclass(frozen=True)
class FitnessBreakdown:
    alpha: int
    beta: int
    gamma: int
    std: float
    avg: float
    value: float

    @property
    def feasible(self) -> bool:
        return self.beta == 0 and self.gamma == 0


def evaluate(c: EdgeColoring, w: FitnessWeights | None = None) -> FitnessBreakdown:
    w = w or FitnessWeights()
    report = verify(c)
    sizes = [report.class_sizes[col] for col in sorted(report.used_colors)]
    alpha = len(sizes)
    avg = sum(sizes) / alpha
    std = math.sqrt(sum((s - avg) ** 2 for s in sizes) / alpha)
    beta = len(report.uncovered_pairs)
    gamma = sum(k - 1 for k in report.class_components.values())
    value = float(w.combine(alpha, beta, gamma, std, avg))
    return FitnessBreakdown(alpha, beta, gamma, std, avg, value)


@dataclass(frozen=True)
class BatchBreakdown:
    """Column-wise :class:`FitnessBreakdown` for a population."""

    alpha: np.ndarray
    beta: np.ndarray
    gamma: np.ndarray
    std: np.ndarray
    avg: np.ndarray
    value: np.ndarray

    @property
    def feasible(self) -> np.ndarray:
        return (self.beta == 0) & (self.gamma == 0)

    def row(self, i: int) -> FitnessBreakdown:
        return FitnessBreakdown(
            int(self.alpha[i]),
            int(self.beta[i]),
            int(self.gamma[i]),
            float(self.std[i]),
            float(self.avg[i]),
            float(self.value[i]),
        )


class PopulationEvaluator:
    """Vectorised fitness for genotypes of shape ``(P, n(n-1)/2)``."""

    def __init__(self, n: int, palette_size: int, weights: FitnessWeights | None = None):
        if palette_size < 1:
            raise DomainError("palette_size must be >= 1")
        self.n = n
        self.palette_size = palette_size
        self.weights = weights or FitnessWeights()
        self.edges = edge_count(n)
        self._us, self._vs = endpoint_arrays(n)

    def _check(self, genotypes) -> np.ndarray:
        g = np.asarray(genotypes)
        if g.ndim == 1:
            g = g[None, :]
        if g.ndim != 2 or g.shape[1] != self.edges:
            raise ValidationError(f"genotypes must have shape (P, {self.edges}), got {g.shape}")
        if not np.issubdtype(g.dtype, np.integer):
            raise ValidationError("genotypes must be integer arrays")
        bad = np.argwhere((g < 0) | (g >= self.palette_size))
        if len(bad):
            p, e = bad[0]
            raise ValidationError(
                f"individual {p}: colors[{e}] = {g[p, e]} outside palette [0, {self.palette_size})"
            )
        return g.astype(np.intp, copy=False)

    def breakdown(self, genotypes) -> BatchBreakdown:
        g = self._check(genotypes)
        P, E = g.shape
        n, k = self.n, self.palette_size
        rows = np.arange(P)[:, None]

        sizes = np.bincount((g + rows * k).ravel(), minlength=P * k).reshape(P, k)
        used = sizes > 0
        alpha = used.sum(axis=1)

        # presence[p, v, c]: vertex v meets an edge of color c
        presence = np.zeros((P, n, k), dtype=np.float32)
        presence[rows, self._us[None, :], g] = 1.0
        presence[rows, self._vs[None, :], g] = 1.0
        shared = np.matmul(presence.transpose(0, 2, 1), presence) > 0
        both_used = used[:, :, None] & used[:, None, :]
        beta = (both_used & ~shared).sum(axis=(1, 2)) // 2

        # one node per (individual, color, vertex); class edges only join nodes
        # inside the same (individual, color) block
        block = (rows * k + g) * n
        src = (block + self._us[None, :]).ravel()
        dst = (block + self._vs[None, :]).ravel()
        total = P * k * n
        adj = coo_matrix((np.ones(src.size, dtype=np.int8), (src, dst)), shape=(total, total)).tocsr()
        _, labels = connected_components(adj, directed=False)
        present = np.flatnonzero(presence.transpose(0, 2, 1).reshape(-1))
        # each component lies inside one block, so any member names its individual
        _, first = np.unique(labels[present], return_index=True)
        owner = present[first] // (k * n)
        components = np.bincount(owner, minlength=P)
        gamma = components - alpha

        avg = E / alpha
        dev = np.where(used, sizes - avg[:, None], 0.0)
        std = np.sqrt((dev**2).sum(axis=1) / alpha)
        value = self.weights.combine(
            alpha.astype(float), beta.astype(float), gamma.astype(float), std, avg
        )
        return BatchBreakdown(alpha, beta, gamma, std, avg, value)

    def __call__(self, genotypes) -> np.ndarray:
        return self.breakdown(genotypes).value
