"""Online scoring of task models by quantiles over sampled tasks"""
import logging
from dataclasses import dataclass

import numpy as np

from core.exceptions import InvalidArgument
from core.space import sobol_points

logger = logging.getLogger(__name__)

DEFAULT_ALPHAS = (0.05, 0.25, 0.50, 0.75, 0.95)


@dataclass(frozen=True, eq=False)
class EvalGrid:
    thetas: np.ndarray
    scheme: str = 'sobol'
    seed: int = 0

    @property
    def size(self):
        return self.thetas.shape[0]


def make_grid(task_bounds, size, seed):
    """Quasi-random task sample shared by every algorithm and trial"""
    return EvalGrid(sobol_points(task_bounds, size, seed), 'sobol', seed)


def grid_size_for(task_dim, sizes, default):
    return int(sizes.get(task_dim, sizes.get(str(task_dim), default)))


def evaluate_task_model(model, problem, grid):
    """``f(M(theta_k), theta_k)`` for every grid task; these calls are not charged to any budget"""
    if model.solution_dim != problem.solution_dim or model.task_dim != problem.task_dim:
        raise InvalidArgument(f"task model does not match {problem.name}")
    solutions = model.predict_solutions(grid.thetas)
    values = problem.evaluate_many(solutions, grid.thetas)
    logger.debug("scored task model on %d grid tasks", grid.size)
    return values


def quantiles(values, alphas=DEFAULT_ALPHAS):
    values = np.asarray(values, dtype=float).ravel()
    if values.size == 0:
        raise InvalidArgument("quantiles of an empty vector")
    return np.quantile(values, np.asarray(alphas, dtype=float), method='linear')


@dataclass(frozen=True, eq=False)
class QuantileReport:
    alphas: tuple
    per_trial: np.ndarray
    means: np.ndarray
    stds: np.ndarray
    sample_count: int

    @property
    def trial_count(self):
        return self.per_trial.shape[0]

    def rows(self):
        for i, alpha in enumerate(self.alphas):
            yield alpha, float(self.means[i]), float(self.stds[i])


def aggregate_trials(per_trial, alphas=DEFAULT_ALPHAS, sample_count=0):
    """Cross-trial mean and sample standard deviation for each quantile level"""
    table = np.atleast_2d(np.asarray(per_trial, dtype=float))
    if table.shape[0] < 1:
        raise InvalidArgument("need at least one trial")
    means = table.mean(axis=0)
    stds = table.std(axis=0, ddof=1) if table.shape[0] > 1 else np.zeros(table.shape[1])
    return QuantileReport(tuple(alphas), table, means, stds, sample_count)


@dataclass(frozen=True, eq=False)
class RobustnessSummary:
    theta: np.ndarray
    errors: np.ndarray
    values: np.ndarray

    @property
    def worst(self):
        return float(self.values.max())

    def summary(self):
        q = quantiles(self.values)
        return {
            'min': float(self.values.min()),
            'mean': float(self.values.mean()),
            'max': float(self.values.max()),
            **{f"q{int(round(a * 100)):02d}": float(v) for a, v in zip(DEFAULT_ALPHAS, q)},
        }


def assess_robustness(theta, problem, n_errors=800, seed=0):
    """Objective of one design under ``n_errors`` uniform random processing errors"""
    if n_errors < 1:
        raise InvalidArgument(f"n_errors must be >= 1, got {n_errors}")
    theta = np.asarray(theta, dtype=float)
    rng = np.random.default_rng(seed)
    errors = problem.solution_bounds.from_unit(rng.random((n_errors, problem.solution_dim)))
    values = np.array([problem(x, theta) for x in errors])
    return RobustnessSummary(theta, errors, values)
