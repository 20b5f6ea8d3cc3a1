"""Per-evaluation run log and regret bookkeeping"""
from dataclasses import dataclass

import numpy as np

from core.exceptions import ConsistencyError

REGRET_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class TraceRow:
    iteration: int
    task_id: int
    theta: np.ndarray
    x: np.ndarray
    y: float
    best_so_far: float
    cum_evals: int


class RunTrace:
    """Every true-objective evaluation of a run, in evaluation order"""

    def __init__(self):
        self.rows = []
        self._best = {}

    def __len__(self):
        return len(self.rows)

    def record(self, iteration, task_id, theta, x, y):
        best = min(self._best.get(task_id, np.inf), y)
        self._best[task_id] = best
        row = TraceRow(iteration, task_id, np.asarray(theta, dtype=float).copy(),
                       np.asarray(x, dtype=float).copy(), float(y), best, len(self.rows) + 1)
        self.rows.append(row)
        return row

    @property
    def task_ids(self):
        return sorted(self._best)

    def for_task(self, task_id):
        return [r for r in self.rows if r.task_id == task_id]

    def best_so_far(self, task_id):
        return np.array([r.best_so_far for r in self.for_task(task_id)])

    def final_best(self):
        return dict(self._best)

    def evaluations_per_task(self):
        counts = {}
        for row in self.rows:
            counts[row.task_id] = counts.get(row.task_id, 0) + 1
        return counts


@dataclass(frozen=True, eq=False)
class RegretCurve:
    task_id: int
    instantaneous: np.ndarray

    @property
    def cumulative(self):
        return np.cumsum(self.instantaneous)

    @property
    def total(self):
        return float(self.cumulative[-1]) if self.instantaneous.size else 0.0


def compute_regret(trace, optima):
    """Instantaneous and cumulative regret per task; ``optima`` maps task id to f*"""
    curves = {}
    for task_id, optimum in optima.items():
        values = np.array([r.y for r in trace.for_task(task_id)])
        regret = values - optimum
        if regret.size and regret.min() < -REGRET_TOL:
            raise ConsistencyError(
                f"task {task_id}: objective {values.min():.6g} below its stated optimum {optimum:.6g}")
        curves[task_id] = RegretCurve(task_id, np.maximum(regret, 0.0))
    return curves
