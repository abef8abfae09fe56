import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rankcolor.errors import DomainError
from rankcolor.rankga import (
    HISTORY_COLUMNS,
    Population,
    RankGaParams,
    clone_number,
    mutate,
    mutation_probability,
    rank,
    ranks,
    recombine,
    run,
    select,
    selection_indices,
    write_history,
)


class OneMax:
    """Maximise the number of 1-genes; optimum is the genotype size."""

    def __init__(self, size=32):
        self.genotype_size = size

    def random_genotypes(self, rng, count):
        return rng.integers(0, 2, size=(count, self.genotype_size))

    def evaluate(self, genotypes):
        return genotypes.sum(axis=1).astype(float)

    def mutate_genes(self, rng, values):
        return 1 - values


def population(N, G=4, seed=0):
    rng = np.random.default_rng(seed)
    genotypes = rng.integers(0, 5, size=(N, G))
    return Population(genotypes, np.sort(rng.random(N))[::-1].copy())


def test_rank_examples():
    assert rank(0, 100) == 0.0
    assert rank(99, 100) == 1.0
    assert rank(1, 5) == 0.25
    with pytest.raises(DomainError):
        rank(0, 1)
    with pytest.raises(DomainError):
        rank(5, 5)


def test_clone_number_examples():
    assert clone_number(0.0, 3) == 3.0
    assert clone_number(1.0, 3) == 0.0
    assert clone_number(0.5, 3) == 0.75


def test_params_validation():
    RankGaParams(population_size=2, genotype_size=3)
    for bad in (
        dict(population_size=1, genotype_size=10),
        dict(genotype_size=0),
        dict(genotype_size=10, selective_pressure=1.0),
        dict(genotype_size=10, p_max=0.0),
        dict(genotype_size=10, p_max=1.5),
        dict(genotype_size=2, p_max=0.5),  # p_max * G must exceed 1
        dict(genotype_size=10, max_generations=-1),
        dict(genotype_size=10, seed=-1),
    ):
        with pytest.raises(DomainError):
            RankGaParams(**bad)


def test_selection_two_individuals_keeps_two_copies_of_the_best():
    p = population(2)
    out = select(p, RankGaParams(population_size=2, genotype_size=4), np.random.default_rng(0))
    assert len(out) == 2
    assert (out.genotypes == p.genotypes[0]).all()


def test_selection_near_identity_for_weak_pressure():
    # clone numbers tend to 1 except the worst, whose clone number is 0 for every S
    idx = selection_indices(10, 1.0001, np.random.default_rng(1))
    assert list(idx[:9]) == list(range(9))
    assert len(idx) == 10


def test_selection_order_integer_pass_then_fractional():
    # S = 3, N = 5: clone numbers 3, 1.6875, 0.75, 0.1875, 0
    idx = selection_indices(5, 3.0, np.random.default_rng(0))
    assert list(idx[:4]) == [0, 0, 0, 1]
    assert len(idx) == 5 and idx[4] in (1, 2, 3)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 300), st.floats(1.01, 6), st.integers(0, 2**32))
def test_selection_preserves_population_size(N, S, seed):
    idx = selection_indices(N, S, np.random.default_rng(seed))
    assert len(idx) == N
    assert idx.min() >= 0 and idx.max() < N


def test_selection_mean_copies_of_the_best():
    rng = np.random.default_rng(2024)
    N, S = 100, 3.0
    counts = np.zeros(N)
    for _ in range(10_000):
        idx = selection_indices(N, S, rng)
        assert len(idx) == N
        counts += np.bincount(idx, minlength=N)
    counts /= 10_000
    assert counts[0] == pytest.approx(3.0, rel=0.05)


def test_clone_numbers_average_to_one():
    N = 1000
    assert np.mean(clone_number(ranks(N), 3.0)) == pytest.approx(1.0, rel=0.02)


def test_recombine_identical_parents_is_a_fixed_point():
    g = np.tile(np.arange(6), (4, 1))
    out = recombine(Population(g, np.zeros(4)), np.random.default_rng(0))
    assert (out.genotypes == g).all()


def test_recombine_offspring_are_complementary():
    g = np.array([[0, 0, 0, 0], [1, 1, 1, 1]])
    out = recombine(Population(g, np.array([1.0, 0.0])), np.random.default_rng(7))
    a, b = out.genotypes
    assert ((a + b) == 1).all()
    assert np.isnan(out.fitness).all()


def test_recombine_odd_population_keeps_last():
    p = population(3, G=16)
    out = recombine(p, np.random.default_rng(3))
    assert (out.genotypes[2] == p.genotypes[2]).all()
    assert out.fitness[2] == p.fitness[2]
    pair = np.sort(out.genotypes[:2], axis=0)
    assert (pair == np.sort(p.genotypes[:2], axis=0)).all()


def test_mutation_probability_landmarks():
    params = RankGaParams(population_size=50, genotype_size=40, p_max=0.5)
    assert mutation_probability(0.0, params) == 0.0
    assert mutation_probability(1 / 49, params) == pytest.approx(1 / 40, abs=1e-12)
    assert mutation_probability(1.0, params) == pytest.approx(0.5, abs=1e-12)


def test_mutation_probability_domain():
    with pytest.raises(DomainError):
        mutation_probability(0.5, RankGaParams(population_size=2, genotype_size=10))
    with pytest.raises(DomainError):
        mutation_probability(1.5, RankGaParams(population_size=10, genotype_size=10))


def test_best_individual_is_never_mutated():
    params = RankGaParams(population_size=20, genotype_size=30, p_max=1.0)
    p = population(20, G=30)
    for seed in range(20):
        out = mutate(p, params, np.random.default_rng(seed), lambda rng, v: np.full_like(v, -1))
        assert (out.genotypes[0] == p.genotypes[0]).all()
        assert out.fitness[0] == p.fitness[0]
        # p_max = 1: the worst individual is entirely resampled
        assert (out.genotypes[-1] == -1).all()


def test_second_best_mutates_one_gene_on_average():
    G = 40
    params = RankGaParams(population_size=30, genotype_size=G, p_max=0.5)
    p = population(30, G=G)
    rng = np.random.default_rng(11)
    flips = [
        (mutate(p, params, rng, lambda r, v: np.full_like(v, -1)).genotypes[1] == -1).sum()
        for _ in range(4000)
    ]
    assert np.mean(flips) == pytest.approx(1.0, rel=0.10)


def test_onemax_reaches_the_optimum():
    solved = 0
    for seed in range(10):
        params = RankGaParams(population_size=50, genotype_size=32, max_generations=200, seed=seed)
        result = run(OneMax(32), params)
        solved += result.best_fitness == 32
    assert solved >= 9


def test_zero_generations_returns_best_initial():
    params = RankGaParams(population_size=40, genotype_size=32, max_generations=0, seed=5)
    result = run(OneMax(32), params)
    initial = np.random.default_rng(5).integers(0, 2, size=(40, 32))
    assert result.generations == 0
    assert result.best_fitness == initial.sum(axis=1).max()
    assert len(result.history) == 1


def test_runs_are_deterministic():
    params = RankGaParams(population_size=30, genotype_size=32, max_generations=40, seed=99)
    a, b = run(OneMax(32), params), run(OneMax(32), params)
    assert a.history == b.history
    assert (a.best_genotype == b.best_genotype).all()
    assert (a.final_population.genotypes == b.final_population.genotypes).all()
    c = run(OneMax(32), RankGaParams(population_size=30, genotype_size=32, max_generations=40, seed=100))
    assert c.history != a.history


def test_population_size_and_order_after_every_generation():
    seen = []
    params = RankGaParams(population_size=21, genotype_size=16, max_generations=15, seed=1)
    result = run(OneMax(16), params, on_generation=seen.append)
    assert len(seen) == 16
    assert len(result.final_population) == 21
    assert (np.diff(result.final_population.fitness) <= 0).all()


def test_best_ever_never_decreases_and_bounds_history():
    params = RankGaParams(population_size=30, genotype_size=64, max_generations=60, seed=4)
    result = run(OneMax(64), params)
    assert result.best_fitness >= max(h.best_fitness for h in result.history)
    assert result.best_fitness == OneMax(64).evaluate(result.best_genotype[None])[0]


def test_stagnation_stops_early():
    class Flat(OneMax):
        def evaluate(self, genotypes):
            return np.zeros(len(genotypes))

    params = RankGaParams(population_size=10, genotype_size=8, max_generations=500, stagnation_window=7)
    result = run(Flat(8), params)
    assert result.stop_reason == "stagnation"
    assert result.generations == 7


def test_feasible_tracking():
    class EvenOnly(OneMax):
        def feasible(self, genotypes):
            return genotypes.sum(axis=1) % 2 == 0

    result = run(EvenOnly(15), RankGaParams(population_size=30, genotype_size=15, max_generations=30, seed=2))
    assert result.best_feasible_genotype.sum() % 2 == 0
    assert result.best_feasible_fitness <= result.best_fitness


def test_history_csv(tmp_path):
    result = run(OneMax(8), RankGaParams(population_size=10, genotype_size=8, max_generations=3, seed=0))
    path = write_history(tmp_path / "h.csv", result.history)
    lines = path.read_text().splitlines()
    assert lines[0] == ",".join(HISTORY_COLUMNS)
    assert len(lines) == 5
    assert float(lines[-1].split(",")[1]) == result.history[-1].best_fitness
    assert not math.isnan(float(lines[1].split(",")[2]))
