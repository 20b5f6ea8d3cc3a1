"""Robust design: designs act as tasks and processing errors as solutions"""
import logging
from dataclasses import dataclass, field

import numpy as np

from benchmarks.problems import negated
from core.exceptions import InvalidConfig
from core.space import derive_seed
from evolution.engine import evolve

from .algorithms import run_pmto

logger = logging.getLogger(__name__)

# seed streams, continuing those in .algorithms
OUTER_SEARCH = 5
NOMINAL_SEARCH = 6


@dataclass
class MinimaxResult:
    theta: np.ndarray
    value: float
    pmto_evaluations: int
    outer_evaluations: int
    task_model: object = None
    history: list = field(default_factory=list)
    population: np.ndarray = None


def search_configs(ea, seed):
    """Outer and nominal EA settings with their own seed streams"""
    return ea.with_seed(derive_seed(seed, OUTER_SEARCH)), ea.with_seed(derive_seed(seed, NOMINAL_SEARCH))


def _outer_generations(cfg, budget):
    if budget < 2 * cfg.population_size:
        raise InvalidConfig(
            f"minimax.budget: {budget} evaluations cannot pay for one generation of {cfg.population_size}")
    return min(cfg.generations, budget // cfg.population_size - 1)


def _search(objective, bounds, cfg, budget):
    """Minimize a true objective with the EA, charging every call to ``budget``"""
    generations = _outer_generations(cfg, budget)
    return evolve(lambda thetas: -np.array([objective(t) for t in thetas]), bounds,
                  cfg.with_generations(generations))


def solve_minimax(problem, pmto_cfg, outer_cfg, outer_budget):
    """Return the design minimizing the objective at its predicted worst-case error"""
    generations = _outer_generations(outer_cfg, outer_budget)
    inner = run_pmto(negated(problem), pmto_cfg)
    model = inner.task_model
    logger.info("minimax: worst-case model fitted with %d evaluations; outer search runs %d generations",
                len(inner.trace), generations)

    def worst_case(theta):
        x = model.predict_solutions(theta[None, :])[0]
        return problem(x, theta)

    result = _search(worst_case, problem.task_bounds, outer_cfg, outer_budget)
    return MinimaxResult(result.best, -result.best_score, len(inner.trace), result.evaluations, model,
                         [-s for s in result.history], result.population)


def nominal_design(problem, cfg, budget):
    """Design minimizing the objective with zero processing error (non-robust comparison)"""
    center = np.zeros(problem.solution_dim)
    result = _search(lambda theta: problem(center, theta), problem.task_bounds, cfg, budget)
    return MinimaxResult(result.best, -result.best_score, 0, result.evaluations, None,
                         [-s for s in result.history], result.population)
