"""Evaluated samples shared by every optimization procedure"""
from dataclasses import dataclass

import numpy as np

from core.exceptions import InvalidArgument, InvalidState

from .gp import TrainingSet


@dataclass(frozen=True, eq=False)
class EvaluatedSample:
    x: np.ndarray
    theta: np.ndarray
    y: float
    task_id: int
    order: int


class UnifiedDataset:
    """Append-only (x, theta, y) evaluations tagged by task index; ``order`` breaks ties"""

    def __init__(self, solution_bounds, task_bounds):
        self.solution_bounds = solution_bounds
        self.task_bounds = task_bounds
        self.samples = []

    def __len__(self):
        return len(self.samples)

    def add(self, x, theta, y, task_id):
        x = np.atleast_1d(np.asarray(x, dtype=float)).copy()
        theta = np.atleast_1d(np.asarray(theta, dtype=float)).copy()
        if x.shape[0] != self.solution_bounds.dim or theta.shape[0] != self.task_bounds.dim:
            raise InvalidArgument(f"sample dimensions {x.shape}/{theta.shape} do not match the dataset")
        y = float(y)
        if not np.isfinite(y):
            raise InvalidArgument(f"objective value must be finite, got {y}")
        sample = EvaluatedSample(x, theta, y, int(task_id), len(self.samples))
        self.samples.append(sample)
        return sample

    def for_task(self, task_id):
        return [s for s in self.samples if s.task_id == task_id]

    def count_for_task(self, task_id):
        return sum(1 for s in self.samples if s.task_id == task_id)

    def best_for_task(self, task_id):
        """Lowest-y sample of a task; the earliest one wins ties"""
        best = None
        for sample in self.for_task(task_id):
            if best is None or sample.y < best.y:
                best = sample
        if best is None:
            raise InvalidState(f"task {task_id} has no evaluated samples")
        return best

    def unified_training_set(self):
        """Training set over concatenated ``[x, theta]`` inputs"""
        bounds = self.solution_bounds.concat(self.task_bounds)
        if not self.samples:
            return TrainingSet(np.empty((0, bounds.dim)), np.empty(0), bounds=bounds)
        inputs = np.array([np.concatenate([s.x, s.theta]) for s in self.samples])
        targets = np.array([s.y for s in self.samples])
        return TrainingSet(inputs, targets, bounds=bounds)

    def task_training_set(self, task_id):
        """Training set over ``x`` alone for one task"""
        samples = self.for_task(task_id)
        dim = self.solution_bounds.dim
        if not samples:
            return TrainingSet(np.empty((0, dim)), np.empty(0), bounds=self.solution_bounds)
        return TrainingSet(
            np.array([s.x for s in samples]),
            np.array([s.y for s in samples]),
            bounds=self.solution_bounds,
        )
