"""Plane truss: weighted volume plus joint-displacement term under processing errors.

The design ``theta`` is (bar-1 area, bar-2 area, height); the error ``x`` is a
fraction of each design range added to the design.
"""
from dataclasses import dataclass

import numpy as np

from core.exceptions import InvalidArgument
from core.space import Box

from .problems import ProblemSpec

OPERATING_FLOOR = 1e-3


@dataclass(frozen=True, eq=False)
class TrussSpec:
    alpha1: float = 10.0
    alpha2: float = 1e-5
    design_lower: tuple = (2.0, 2.0, 1.0)
    design_upper: tuple = (100.0, 100.0, 3.0)
    error_fraction: float = 0.05

    @property
    def design_bounds(self):
        return Box(np.array(self.design_lower), np.array(self.design_upper))

    @property
    def error_bounds(self):
        return Box(np.full(3, -self.error_fraction), np.full(3, self.error_fraction))

    def operating(self, x, theta):
        return np.asarray(theta, dtype=float) + np.asarray(x, dtype=float) * self.design_bounds.width


def volume(p):
    return p[0] * np.sqrt(16.0 + p[2] ** 2) + p[1] * np.sqrt(1.0 + p[2] ** 2)


def displacement(p):
    return 20.0 * np.sqrt(16.0 + p[2] ** 2) / (p[0] * p[2])


def truss_value(p, spec):
    if p[0] * p[2] <= 0:
        raise InvalidArgument(f"operating parameters {p} leave the truss undefined")
    return float(spec.alpha1 * volume(p) + spec.alpha2 * displacement(p))


def truss_evaluate(x, theta, spec=None):
    spec = spec or TrussSpec()
    return truss_value(spec.operating(x, theta), spec)


def truss_problem(alpha1=10.0, alpha2=1e-5, error_fraction=0.05):
    spec = TrussSpec(alpha1=float(alpha1), alpha2=float(alpha2), error_fraction=float(error_fraction))

    def evaluate(x, theta):
        # thin bars near the lower design bound can be pushed through zero
        return truss_value(np.maximum(spec.operating(x, theta), OPERATING_FLOOR), spec)

    return ProblemSpec(
        name='truss',
        solution_bounds=spec.error_bounds,
        task_bounds=spec.design_bounds,
        evaluate=evaluate,
        description='plane truss; solution = processing errors, task = design',
        constants={'alpha1': spec.alpha1, 'alpha2': spec.alpha2, 'error_fraction': spec.error_fraction},
    )
