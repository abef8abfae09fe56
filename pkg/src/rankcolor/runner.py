"""Configured GA runs: one Rank GA run per seed, every reported bound re-verified."""
from __future__ import annotations

import json
import logging
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

import tomli
import tomli_w

from rankcolor.bounds import EXACT, IMPROVED_LOWER, KNOWN_UPPER, approx_upper
from rankcolor.coloring import read_coloring, verify, write_coloring
from rankcolor.errors import DomainError
from rankcolor.fitness import FitnessWeights
from rankcolor.graph import edge_count
from rankcolor.problem import ColoringProblem
from rankcolor.rankga import RankGaParams, run, write_history

log = logging.getLogger(__name__)

GA_KEYS = ("population_size", "selective_pressure", "p_max", "max_generations", "stagnation_window")
WEIGHT_KEYS = ("weight_pairs", "weight_colors", "weight_std", "weight_avg")


def default_palette(n: int) -> int:
    """Approximate upper bound, at least one above the best tabulated lower bound."""
    if n < 8:
        palette = EXACT.get(n, KNOWN_UPPER.get(n, 1))
    else:
        palette = approx_upper(n)
        if n in IMPROVED_LOWER:
            palette = max(palette, IMPROVED_LOWER[n] + 1)
    return min(palette, edge_count(n))


@dataclass(frozen=True)
class RunConfig:
    n: int
    palette_size: int | None = None
    population_size: int = 200
    selective_pressure: float = 3.0
    p_max: float = 0.5
    max_generations: int = 5000
    stagnation_window: int = 1000
    weights: FitnessWeights = field(default_factory=FitnessWeights)
    seeds: tuple[int, ...] = (0,)
    output_dir: Path = Path("runs")
    ladder: bool = False

    def __post_init__(self) -> None:
        edges = edge_count(self.n)
        if self.palette_size is None:
            object.__setattr__(self, "palette_size", default_palette(self.n))
        if not 1 <= self.palette_size <= edges:
            raise DomainError(f"palette_size must lie in [1, {edges}] for K_{self.n}")
        if not self.seeds:
            raise DomainError("at least one seed is required")
        object.__setattr__(self, "seeds", tuple(int(s) for s in self.seeds))
        object.__setattr__(self, "output_dir", Path(self.output_dir))
        self.params(self.seeds[0])  # validate GA parameters up front

    def params(self, seed: int) -> RankGaParams:
        return RankGaParams(
            population_size=self.population_size,
            selective_pressure=self.selective_pressure,
            p_max=self.p_max,
            genotype_size=edge_count(self.n),
            max_generations=self.max_generations,
            stagnation_window=self.stagnation_window,
            seed=seed,
        )

    @classmethod
    def from_mapping(cls, doc: dict[str, Any]) -> "RunConfig":
        known = {"n", "palette_size", "seeds", "output_dir", "ladder", *GA_KEYS, *WEIGHT_KEYS}
        unknown = sorted(set(doc) - known)
        if unknown:
            raise DomainError(f"unknown config keys: {', '.join(unknown)}")
        if "n" not in doc:
            raise DomainError("config needs 'n'")
        kwargs = {k: doc[k] for k in ("n", "palette_size", "output_dir", "ladder", *GA_KEYS) if k in doc}
        if "seeds" in doc:
            kwargs["seeds"] = tuple(doc["seeds"])
        kwargs["weights"] = FitnessWeights(**{k: float(doc[k]) for k in WEIGHT_KEYS if k in doc})
        return cls(**kwargs)

    def to_mapping(self) -> dict[str, Any]:
        doc = {k: getattr(self, k) for k in ("n", "palette_size", *GA_KEYS)}
        doc.update(asdict(self.weights))
        doc.update(seeds=list(self.seeds), output_dir=str(self.output_dir), ladder=self.ladder)
        return doc


def load_config(path: str | Path) -> RunConfig:
    with open(path, "rb") as fh:
        try:
            doc = tomli.load(fh)
        except tomli.TOMLDecodeError as exc:
            raise DomainError(f"{path}: {exc}") from exc
    return RunConfig.from_mapping(doc)


@dataclass
class SeedResult:
    seed: int
    palette_size: int
    verified_colors: int | None
    solution: str | None
    history: str
    generations: int
    stop_reason: str
    wall_time_s: float


@dataclass
class RunSummary:
    n: int
    runs: list[SeedResult]

    @property
    def best_verified(self) -> int | None:
        found = [r.verified_colors for r in self.runs if r.verified_colors is not None]
        return max(found) if found else None

    def to_dict(self) -> dict[str, Any]:
        return {"n": self.n, "best_verified_colors": self.best_verified, "runs": [asdict(r) for r in self.runs]}


def solution_name(n: int, colors: int, seed: int) -> str:
    return f"K{n}_c{colors}_seed{seed}.json"


def _run_seed(config: RunConfig, seed: int, palette: int) -> SeedResult:
    out = config.output_dir
    problem = ColoringProblem(config.n, palette, config.weights)
    started = time.perf_counter()
    result = run(problem, config.params(seed))
    elapsed = time.perf_counter() - started
    history = write_history(out / f"K{config.n}_p{palette}_seed{seed}_history.csv", result.history)

    verified = solution = None
    if result.best_feasible_genotype is not None:
        coloring = problem.to_coloring(result.best_feasible_genotype)
        report = verify(coloring)
        # the engine's feasibility flag comes from the batch evaluator; only the verifier counts
        if report.is_valid:
            verified = report.color_count
            meta = {
                "seed": seed,
                "generations": result.generations,
                "fitness": result.best_feasible_fitness,
                "stop_reason": result.stop_reason,
            }
            path = write_coloring(out / solution_name(config.n, verified, seed), coloring, meta)
            # re-read from disk so the reported bound is what a later `verify` will see
            on_disk, _ = read_coloring(path)
            if verify(on_disk).is_valid and on_disk == coloring:
                solution = path.name
            else:
                verified = None
    log.info("n=%d seed=%d palette=%d verified=%s gens=%d (%.1fs)",
             config.n, seed, palette, verified, result.generations, elapsed)
    return SeedResult(seed, palette, verified, solution, history.name, result.generations,
                      result.stop_reason, round(elapsed, 3))


def solve(config: RunConfig) -> RunSummary:
    try:
        config.output_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create output directory {config.output_dir}: {exc}") from exc
    runs: list[SeedResult] = []
    edges = edge_count(config.n)
    for seed in config.seeds:
        palette = config.palette_size
        while True:
            res = _run_seed(config, seed, palette)
            runs.append(res)
            # ladder: every palette color was used, so try one more
            if not (config.ladder and res.verified_colors == palette and palette < edges):
                break
            palette += 1
    summary = RunSummary(config.n, runs)
    (config.output_dir / "summary.json").write_text(json.dumps(summary.to_dict(), indent=2) + "\n")
    (config.output_dir / "config.toml").write_text(tomli_w.dumps(config.to_mapping()))
    return summary

