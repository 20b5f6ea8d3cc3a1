"""(mu + lambda) evolutionary search over a box, maximizing a batch objective"""
import logging
from dataclasses import dataclass, field

import numpy as np

from core.exceptions import InvalidArgument

from .operators import binary_tournament, polynomial_mutation, sbx_crossover

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EaConfig:
    population_size: int = 100
    generations: int = 50
    eta_c: float = 15.0
    eta_m: float = 20.0
    p_c: float = 0.9
    p_m: float = 0.9
    seed: int = 0

    def __post_init__(self):
        if self.population_size < 2:
            raise InvalidArgument(f"population_size must be >= 2, got {self.population_size}")
        if self.generations < 1:
            raise InvalidArgument(f"generations must be >= 1, got {self.generations}")
        if not (0.0 <= self.p_c <= 1.0 and 0.0 <= self.p_m <= 1.0):
            raise InvalidArgument("crossover and mutation probabilities must lie in [0, 1]")
        if not (self.eta_c > 0 and self.eta_m > 0):
            raise InvalidArgument("distribution indices must be positive")

    def with_seed(self, seed):
        return EaConfig(self.population_size, self.generations, self.eta_c, self.eta_m, self.p_c, self.p_m, seed)

    def with_generations(self, generations):
        return EaConfig(self.population_size, generations, self.eta_c, self.eta_m, self.p_c, self.p_m, self.seed)


@dataclass
class EvolutionResult:
    best: np.ndarray
    best_score: float
    population: np.ndarray
    scores: np.ndarray
    history: list = field(default_factory=list)
    evaluations: int = 0


def _offspring(population, scores, bounds, cfg, rng):
    children = []
    while len(children) < cfg.population_size:
        a = population[binary_tournament(scores, rng)]
        b = population[binary_tournament(scores, rng)]
        child_a, child_b = sbx_crossover(a, b, bounds, cfg.eta_c, cfg.p_c, rng)
        children.append(polynomial_mutation(child_a, bounds, cfg.eta_m, cfg.p_m, rng))
        children.append(polynomial_mutation(child_b, bounds, cfg.eta_m, cfg.p_m, rng))
    return np.vstack(children[:cfg.population_size])


def evolve(objective, bounds, cfg, initial_population=None):
    """Run ``cfg.generations`` generations and return the best individual.

    ``objective`` maps an (n, d) array to n scores (higher is better).
    Parents and offspring compete for survival, so ``history`` (best score per
    generation, starting with the initial population) is non-decreasing.
    """
    rng = np.random.default_rng(cfg.seed)
    if initial_population is None:
        population = bounds.from_unit(rng.random((cfg.population_size, bounds.dim)))
    else:
        population = bounds.clip(np.atleast_2d(np.asarray(initial_population, dtype=float)))
        if population.shape != (cfg.population_size, bounds.dim):
            raise InvalidArgument(f"initial population must have shape {(cfg.population_size, bounds.dim)}")
    scores = np.asarray(objective(population), dtype=float)
    evaluations = len(population)
    history = [float(scores.max())]

    for generation in range(cfg.generations):
        children = _offspring(population, scores, bounds, cfg, rng)
        child_scores = np.asarray(objective(children), dtype=float)
        evaluations += len(children)

        merged = np.vstack([population, children])
        merged_scores = np.concatenate([scores, child_scores])
        keep = np.argsort(-merged_scores, kind='stable')[:cfg.population_size]
        population, scores = merged[keep], merged_scores[keep]
        history.append(float(scores[0]))
        logger.debug("generation %d: best %.6g", generation + 1, scores[0])

    best = int(np.argmax(scores))
    return EvolutionResult(population[best].copy(), float(scores[best]), population, scores, history, evaluations)
