"""K_n edge-coloring as a Rank GA problem: one gene per edge, value = color."""
from __future__ import annotations

import numpy as np

from rankcolor.coloring import EdgeColoring
from rankcolor.errors import DomainError
from rankcolor.fitness import FitnessWeights, PopulationEvaluator
from rankcolor.graph import edge_count


class ColoringProblem:
    def __init__(self, n: int, palette_size: int, weights: FitnessWeights | None = None):
        if not 1 <= palette_size <= edge_count(n):
            raise DomainError(f"palette_size must lie in [1, {edge_count(n)}] for K_{n}")
        self.n = n
        self.palette_size = palette_size
        self.genotype_size = edge_count(n)
        self.evaluator = PopulationEvaluator(n, palette_size, weights)

    def random_genotypes(self, rng: np.random.Generator, count: int) -> np.ndarray:
        return rng.integers(0, self.palette_size, size=(count, self.genotype_size))

    def evaluate(self, genotypes: np.ndarray) -> np.ndarray:
        return self.evaluator(genotypes)

    def mutate_genes(self, rng: np.random.Generator, values: np.ndarray) -> np.ndarray:
        # uniform over the whole palette, the current color included
        return rng.integers(0, self.palette_size, size=values.shape)

    def feasible(self, genotypes: np.ndarray) -> np.ndarray:
        return self.evaluator.breakdown(genotypes).feasible

    def describe(self, genotype: np.ndarray) -> dict[str, int]:
        b = self.evaluator.breakdown(genotype[None, :]).row(0)
        return {"alpha": b.alpha, "beta": b.beta, "gamma": b.gamma}

    def to_coloring(self, genotype) -> EdgeColoring:
        return EdgeColoring(self.n, tuple(int(x) for x in genotype), self.palette_size)
