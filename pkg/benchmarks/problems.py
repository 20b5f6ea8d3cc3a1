"""Uniform interface over every benchmark: ``f(x, theta) -> float``"""
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from core.exceptions import InvalidArgument, Unsupported
from core.space import Box


@dataclass(frozen=True, eq=False)
class ProblemSpec:
    name: str
    solution_bounds: Box
    task_bounds: Box
    evaluate: Callable
    known_optimum: Optional[Callable] = None
    description: str = ''
    constants: dict = field(default_factory=dict)

    @property
    def solution_dim(self):
        return self.solution_bounds.dim

    @property
    def task_dim(self):
        return self.task_bounds.dim

    def __call__(self, x, theta):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        if x.shape != (self.solution_dim,) or theta.shape != (self.task_dim,):
            raise InvalidArgument(
                f"{self.name} expects x of dimension {self.solution_dim} and theta of dimension {self.task_dim}")
        return float(self.evaluate(x, theta))

    def evaluate_many(self, xs, thetas):
        return np.array([self(x, theta) for x, theta in zip(xs, thetas)])

    def to_dict(self):
        return {
            'name': self.name,
            'description': self.description,
            'solution_bounds': self.solution_bounds.to_dict(),
            'task_bounds': self.task_bounds.to_dict(),
            'has_known_optimum': self.known_optimum is not None,
            'constants': self.constants,
        }


def known_optimum(problem, theta):
    """``(x*, f*)`` for problems whose optimum is known in closed form"""
    if problem.known_optimum is None:
        raise Unsupported(f"{problem.name} has no known optimum")
    return problem.known_optimum(np.atleast_1d(np.asarray(theta, dtype=float)))


def negated(problem):
    """Same problem with the objective sign flipped (maximization as minimization)"""
    evaluate = problem.evaluate
    return ProblemSpec(
        name=f"{problem.name}-negated",
        solution_bounds=problem.solution_bounds,
        task_bounds=problem.task_bounds,
        evaluate=lambda x, theta: -evaluate(x, theta),
        description=f"negated {problem.name}",
        constants=problem.constants,
    )
