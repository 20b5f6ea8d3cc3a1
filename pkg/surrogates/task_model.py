"""Task-to-solution model: one GP per solution dimension over the task space"""
import logging
import math
from dataclasses import dataclass

import numpy as np

from core.exceptions import InsufficientData, InvalidArgument
from core.space import Box

from .gp import GpHyperparams, TrainingSet, fit_hyperparams, fit_posterior

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class EliteRecord:
    theta: np.ndarray
    best_x: np.ndarray
    best_y: float
    task_id: int = -1

    def to_dict(self):
        return {
            'task_id': self.task_id,
            'theta': self.theta.tolist(),
            'best_x': self.best_x.tolist(),
            'best_y': self.best_y,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            np.asarray(data['theta'], dtype=float),
            np.asarray(data['best_x'], dtype=float),
            float(data['best_y']),
            int(data.get('task_id', -1)),
        )


def build_elite_set(dataset, pool):
    """One record per pool task, holding its lowest-y sample (earliest on ties)"""
    records = []
    for task_id, theta in enumerate(pool.thetas):
        best = dataset.best_for_task(task_id)
        records.append(EliteRecord(np.asarray(theta, dtype=float).copy(), best.x.copy(), best.y, task_id))
    return records


def filter_top_p(records, p):
    """The ceil(p% of M) records with lowest ``best_y``, in ascending order"""
    if not 0 < p <= 100:
        raise InvalidArgument(f"p must be in (0, 100], got {p}")
    if not records:
        return []
    keep = math.ceil(p * len(records) / 100.0 - 1e-9)
    ranked = sorted(records, key=lambda r: r.best_y)
    return ranked[:keep]


class TaskModel:
    """Maps task parameters to predicted optimal solutions.

    Each solution coordinate has its own GP over the task space; all of them
    share the same training tasks. Predictions are posterior means clamped to
    the solution box.
    """

    def __init__(self, per_dim_gps, solution_bounds, task_bounds, trained_on):
        if len(per_dim_gps) != solution_bounds.dim:
            raise InvalidArgument(f"expected {solution_bounds.dim} component models, got {len(per_dim_gps)}")
        self.per_dim_gps = list(per_dim_gps)
        self.solution_bounds = solution_bounds
        self.task_bounds = task_bounds
        self.trained_on = list(trained_on)

    @property
    def solution_dim(self):
        return self.solution_bounds.dim

    @property
    def task_dim(self):
        return self.task_bounds.dim

    @property
    def hyperparams(self):
        return [gp.hyperparams for gp in self.per_dim_gps]

    def normalize_tasks(self, thetas):
        return self.task_bounds.to_unit(thetas)

    def _check_thetas(self, thetas):
        thetas = np.atleast_2d(np.asarray(thetas, dtype=float))
        if thetas.shape[1] != self.task_dim:
            raise InvalidArgument(f"task dimension {thetas.shape[1]} does not match model dimension {self.task_dim}")
        return thetas

    def predict_with_variance(self, thetas):
        """Unclamped per-dimension means and variances, each of shape (n, V)"""
        thetas = self._check_thetas(thetas)
        means = np.empty((thetas.shape[0], self.solution_dim))
        variances = np.empty_like(means)
        for v, gp in enumerate(self.per_dim_gps):
            means[:, v], variances[:, v] = gp.predict_many(thetas)
        return means, variances

    def predict_solutions(self, thetas):
        means, _ = self.predict_with_variance(thetas)
        return self.solution_bounds.clip(means)

    def to_dict(self):
        return {
            'solution_bounds': self.solution_bounds.to_dict(),
            'task_bounds': self.task_bounds.to_dict(),
            'hyperparams': [h.to_dict() for h in self.hyperparams],
            'records': [r.to_dict() for r in self.trained_on],
        }

    @classmethod
    def from_dict(cls, data):
        """Rebuild from stored hyperparameters without re-optimizing them"""
        return fit_task_model(
            [EliteRecord.from_dict(r) for r in data['records']],
            Box.from_dict(data['solution_bounds']),
            Box.from_dict(data['task_bounds']),
            hyperparams=[GpHyperparams.from_dict(h) for h in data['hyperparams']],
            epochs=0,
        )


def predict_solution(model, theta):
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    if theta.ndim != 1:
        raise InvalidArgument("predict_solution takes a single task parameter")
    return model.predict_solutions(theta[None, :])[0]


def fit_task_model(records, solution_bounds, task_bounds, hyperparams=None, epochs=500, lr=0.01):
    """Fit one GP per solution dimension on ``(theta, best_x[v])`` pairs.

    ``hyperparams`` (one per dimension) seeds the optimizer, or is used as-is
    when ``epochs == 0``.
    """
    if len(records) < 2:
        raise InsufficientData(f"task model needs at least 2 elite records, got {len(records)}")
    thetas = np.array([r.theta for r in records], dtype=float)
    solutions = np.array([r.best_x for r in records], dtype=float)
    if thetas.shape[1] != task_bounds.dim or solutions.shape[1] != solution_bounds.dim:
        raise InvalidArgument("elite records do not match the solution/task bounds")
    if hyperparams is not None and len(hyperparams) != solution_bounds.dim:
        raise InvalidArgument(f"expected {solution_bounds.dim} hyperparameter sets, got {len(hyperparams)}")

    gps = []
    for v in range(solution_bounds.dim):
        training = TrainingSet(thetas, solutions[:, v], bounds=task_bounds)
        h = hyperparams[v] if hyperparams is not None else GpHyperparams.default(task_bounds.dim)
        if epochs > 0:
            h = fit_hyperparams(training, h, epochs, lr)
        gps.append(fit_posterior(training, h))
    logger.debug("fitted task model on %d records (%d dimensions, %d epochs)", len(records), len(gps), epochs)
    return TaskModel(gps, solution_bounds, task_bounds, records)
