"""Rank Genetic Algorithm.

Every operator acts on a population sorted best-first, and each individual's
treatment depends only on its position ``i`` in that order through its rank
``r_i = i / (N - 1)``:

* selection clones individual ``i`` ``S * (1 - r_i) ** (S - 1)`` times in
  expectation (integer part deterministically, fractional part by a cyclic
  Bernoulli pass);
* recombination mates neighbours ``(0, 1), (2, 3), ...``;
* mutation resamples each gene with probability
  ``p_max * r_i ** (ln(p_max * G) / ln(N - 1))``, so the best individual is
  never mutated, the second best mutates one gene on average and the worst
  mutates at ``p_max``.

The engine is generic. A problem supplies ``genotype_size``,
``random_genotypes(rng, count)``, ``evaluate(genotypes) -> fitness`` (higher
is better) and ``mutate_genes(rng, values) -> values``. It may also supply
``feasible(genotypes) -> bool array`` so the best constraint-satisfying
individual is tracked separately, and ``describe(genotype) -> dict`` whose
entries are appended to each history row.

Random draws all come from one ``numpy.random.Generator`` in a fixed order:
initialisation, then per generation selection, crossover, mutation.
Fitness evaluation draws nothing, so results depend only on the seed.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Callable, Protocol, Sequence

import numpy as np

from rankcolor.errors import DomainError


class Problem(Protocol):
    genotype_size: int

    def random_genotypes(self, rng: np.random.Generator, count: int) -> np.ndarray: ...

    def evaluate(self, genotypes: np.ndarray) -> np.ndarray: ...

    def mutate_genes(self, rng: np.random.Generator, values: np.ndarray) -> np.ndarray: ...


@dataclass(frozen=True)
class RankGaParams:
    population_size: int = 200
    selective_pressure: float = 3.0
    p_max: float = 0.5
    genotype_size: int = 1
    max_generations: int = 5000
    stagnation_window: int = 1000
    seed: int = 0

    def __post_init__(self) -> None:
        if self.population_size < 2:
            raise DomainError("population_size must be >= 2")
        if self.genotype_size < 1:
            raise DomainError("genotype_size must be >= 1")
        if not self.selective_pressure > 1:
            raise DomainError("selective_pressure must be > 1")
        if not 0 < self.p_max <= 1:
            raise DomainError("p_max must lie in (0, 1]")
        if not self.p_max * self.genotype_size > 1:
            raise DomainError("p_max * genotype_size must exceed 1")
        if self.max_generations < 0 or self.stagnation_window < 0:
            raise DomainError("max_generations and stagnation_window must be >= 0")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must be a 64-bit unsigned integer")


@dataclass
class Population:
    """Genotypes ``(N, G)`` with their fitness; NaN marks a stale evaluation."""

    genotypes: np.ndarray
    fitness: np.ndarray

    def __len__(self) -> int:
        return len(self.fitness)

    def sorted(self) -> "Population":
        # stable: equal fitness keeps the previous order
        order = np.argsort(-self.fitness, kind="stable")
        return Population(self.genotypes[order], self.fitness[order])

    def take(self, indices) -> "Population":
        idx = np.asarray(indices, dtype=np.intp)
        return Population(self.genotypes[idx].copy(), self.fitness[idx].copy())


def rank(i: int, N: int) -> float:
    if N < 2:
        raise DomainError("rank needs N >= 2")
    if not 0 <= i <= N - 1:
        raise DomainError(f"index {i} outside [0, {N - 1}]")
    return i / (N - 1)


def ranks(N: int) -> np.ndarray:
    if N < 2:
        raise DomainError("rank needs N >= 2")
    return np.arange(N) / (N - 1)


def clone_number(r, S: float):
    """Expected number of clones of an individual with rank ``r``."""
    return S * (1 - r) ** (S - 1)


def selection_indices(N: int, S: float, rng: np.random.Generator) -> np.ndarray:
    """Indices (into a best-first population) of the ``N`` clones, in creation order."""
    expected = clone_number(ranks(N), S)
    whole = np.floor(expected).astype(np.intp)
    frac = expected - whole

    chosen = np.repeat(np.arange(N), whole)[:N]
    missing = N - len(chosen)
    extra: list[np.ndarray] = []
    if missing > 0 and not frac.any():
        # no fractional mass left to cycle on; top up from the best down
        extra.append(np.arange(missing) % N)
        missing = 0
    # one uniform per individual per cycle, starting again at i = 0
    while missing > 0:
        hits = np.flatnonzero(rng.random(N) < frac)[:missing]
        extra.append(hits)
        missing -= len(hits)
    return np.concatenate([chosen, *extra]) if extra else chosen


def select(p: Population, params: RankGaParams, rng: np.random.Generator) -> Population:
    return p.take(selection_indices(len(p), params.selective_pressure, rng))


def recombine(p: Population, rng: np.random.Generator) -> Population:
    """Complementary uniform crossover of neighbours ``(0,1), (2,3), ...``.

    Offspring replace their parents in place; an odd last individual is kept.
    """
    genotypes = p.genotypes.copy()
    fitness = p.fitness.copy()
    pairs = len(p) // 2
    if pairs:
        mask = rng.random((pairs, genotypes.shape[1])) < 0.5
        first = genotypes[0 : 2 * pairs : 2]
        second = genotypes[1 : 2 * pairs : 2]
        genotypes[0 : 2 * pairs : 2], genotypes[1 : 2 * pairs : 2] = (
            np.where(mask, first, second),
            np.where(mask, second, first),
        )
        fitness[: 2 * pairs] = np.nan
    return Population(genotypes, fitness)


def mutation_exponent(params: RankGaParams) -> float:
    N, G, p_max = params.population_size, params.genotype_size, params.p_max
    if N < 3:
        raise DomainError("rank mutation needs N >= 3 (ln(N - 1) must be positive)")
    if p_max * G <= 1:
        raise DomainError("rank mutation needs p_max * G > 1")
    return math.log(p_max * G) / math.log(N - 1)


def mutation_probability(r, params: RankGaParams):
    exponent = mutation_exponent(params)
    r = np.asarray(r, dtype=float)
    if ((r < 0) | (r > 1)).any():
        raise DomainError("rank must lie in [0, 1]")
    p = params.p_max * r**exponent
    return float(p) if p.ndim == 0 else p


def mutate(
    p: Population,
    params: RankGaParams,
    rng: np.random.Generator,
    gene_mutator: Callable[[np.random.Generator, np.ndarray], np.ndarray],
) -> Population:
    probs = mutation_probability(ranks(len(p)), params)
    mask = rng.random(p.genotypes.shape) < probs[:, None]
    genotypes = p.genotypes.copy()
    if mask.any():
        genotypes[mask] = gene_mutator(rng, genotypes[mask])
    fitness = np.where(mask.any(axis=1), np.nan, p.fitness)
    return Population(genotypes, fitness)


@dataclass(frozen=True)
class GenerationRecord:
    generation: int
    best_fitness: float
    mean_fitness: float
    extra: dict[str, Any] = field(default_factory=dict)


@dataclass
class RunResult:
    best_genotype: np.ndarray
    best_fitness: float
    final_population: Population
    history: list[GenerationRecord]
    generations: int
    stop_reason: str
    best_feasible_genotype: np.ndarray | None = None
    best_feasible_fitness: float | None = None

    @property
    def final_best_genotype(self) -> np.ndarray:
        return self.final_population.genotypes[0]


class _Tracker:
    """Best-ever and best-feasible-ever records across the whole run."""

    def __init__(self, problem: Problem):
        self.problem = problem
        self.check_feasible = callable(getattr(problem, "feasible", None))
        self.best: np.ndarray | None = None
        self.best_fitness = -math.inf
        self.feasible: np.ndarray | None = None
        self.feasible_fitness = -math.inf

    def observe(self, p: Population) -> bool:
        improved = False
        if p.fitness[0] > self.best_fitness:
            self.best, self.best_fitness = p.genotypes[0].copy(), float(p.fitness[0])
            improved = True
        if self.check_feasible:
            candidates = np.flatnonzero(p.fitness > self.feasible_fitness)
            if len(candidates):
                ok = np.asarray(self.problem.feasible(p.genotypes[candidates]), dtype=bool)
                if ok.any():
                    i = candidates[np.argmax(ok)]  # population is sorted best-first
                    self.feasible, self.feasible_fitness = p.genotypes[i].copy(), float(p.fitness[i])
        return improved


def _evaluated(problem: Problem, p: Population) -> Population:
    stale = np.isnan(p.fitness)
    if stale.any():
        fitness = p.fitness.copy()
        fitness[stale] = np.asarray(problem.evaluate(p.genotypes[stale]), dtype=float)
        p = Population(p.genotypes, fitness)
    return p.sorted()


def run(
    problem: Problem,
    params: RankGaParams,
    on_generation: Callable[[GenerationRecord], None] | None = None,
) -> RunResult:
    if params.genotype_size != problem.genotype_size:
        params = replace(params, genotype_size=problem.genotype_size)
    mutation_exponent(params)  # fail fast on N < 3

    describe = getattr(problem, "describe", None)
    rng = np.random.default_rng(params.seed)
    N = params.population_size
    genotypes = np.asarray(problem.random_genotypes(rng, N))
    pop = _evaluated(problem, Population(genotypes, np.full(N, np.nan)))
    tracker = _Tracker(problem)
    tracker.observe(pop)

    def record(gen: int) -> None:
        extra = dict(describe(pop.genotypes[0])) if callable(describe) else {}
        rec = GenerationRecord(gen, float(pop.fitness[0]), float(pop.fitness.mean()), extra)
        history.append(rec)
        if on_generation is not None:
            on_generation(rec)

    history: list[GenerationRecord] = []
    record(0)
    since_improvement = 0
    generation = 0
    stop_reason = "max_generations"
    while generation < params.max_generations:
        if params.stagnation_window and since_improvement >= params.stagnation_window:
            stop_reason = "stagnation"
            break
        generation += 1
        # clones inherit fitness, so sorting the selected population needs no evaluation
        pop = select(pop, params, rng).sorted()
        pop = _evaluated(problem, recombine(pop, rng))
        improved = tracker.observe(pop)
        pop = _evaluated(problem, mutate(pop, params, rng, problem.mutate_genes))
        improved = tracker.observe(pop) or improved
        since_improvement = 0 if improved else since_improvement + 1
        record(generation)

    return RunResult(
        best_genotype=tracker.best,
        best_fitness=tracker.best_fitness,
        final_population=pop,
        history=history,
        generations=generation,
        stop_reason=stop_reason,
        best_feasible_genotype=tracker.feasible,
        best_feasible_fitness=None if tracker.feasible is None else tracker.feasible_fitness,
    )


HISTORY_COLUMNS = ("generation", "best_fitness", "mean_fitness", "best_alpha", "best_beta", "best_gamma")


def write_history(path: str | Path, history: Sequence[GenerationRecord]) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(HISTORY_COLUMNS)
        for rec in history:
            writer.writerow(
                [
                    rec.generation,
                    repr(rec.best_fitness),
                    repr(rec.mean_fitness),
                    rec.extra.get("alpha", ""),
                    rec.extra.get("beta", ""),
                    rec.extra.get("gamma", ""),
                ]
            )
    return path
