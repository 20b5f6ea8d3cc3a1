"""Parameterized synthetic suite: ``f(x, theta) = g(lam * (x - sigma(L theta)))``.

Solutions live in [0, 1]^4 and task parameters in [0, 1]^5. The optimum of
every task is ``x* = sigma(L theta)`` with value 0.
"""
from dataclasses import dataclass
from typing import Callable

import numpy as np

from core.space import Box

from .problems import ProblemSpec

SOLUTION_DIM = 4
TASK_DIM = 5

MIXING_MATRIX = np.array([
    [1.0, 0.0, 0.0, 0.0, 0.0],
    [0.0, 2.0 / 3.0, 1.0 / 3.0, 0.0, 0.0],
    [0.0, 0.0, 1.0 / 3.0, 2.0 / 3.0, 0.0],
    [0.0, 0.0, 0.0, 0.0, 1.0],
])


def sigma_smooth(z):
    return (np.sin(5.0 * (z + 0.5)) + 1.0) / 2.0


def sigma_oscillating(z):
    return 0.3 * (1.0 + np.sin(5.0 * np.pi * z - np.pi / 2.0)) + 0.3 * (z - 0.2) ** 2


def sphere(z):
    return float(np.sum(z ** 2))


def ackley(z):
    n = z.shape[0]
    return float(20.0 + np.e
                 - 20.0 * np.exp(-0.2 * np.sqrt(np.sum(z ** 2) / n))
                 - np.exp(np.sum(np.cos(2.0 * np.pi * z)) / n))


def rastrigin(z):
    return float(np.sum(z ** 2 - 10.0 * np.cos(2.0 * np.pi * z) + 10.0))


def griewank(z):
    i = np.arange(1, z.shape[0] + 1)
    return float(np.sum(z ** 2) / 4000.0 - np.prod(np.cos(z / np.sqrt(i))) + 1.0)


BASES = {'sphere': sphere, 'ackley': ackley, 'rastrigin': rastrigin, 'griewank': griewank}
SIGMAS = {'I': sigma_smooth, 'II': sigma_oscillating}
DEFAULT_SCALE = {'sphere': 4.0, 'ackley': 4.0, 'rastrigin': 20.0, 'griewank': 600.0}


@dataclass(frozen=True, eq=False)
class SyntheticSpec:
    base: Callable
    lam: float
    sigma: Callable
    matrix: np.ndarray = MIXING_MATRIX

    def shift(self, theta):
        return self.sigma(self.matrix @ np.asarray(theta, dtype=float))


def synthetic_evaluate(spec, x, theta):
    z = spec.lam * (np.asarray(x, dtype=float) - spec.shift(theta))
    # ackley's exponent rounds to a value a hair off zero at z = 0
    return max(spec.base(z), 0.0)


def synthetic_problem(base, variant, lam=None):
    spec = SyntheticSpec(BASES[base], DEFAULT_SCALE[base] if lam is None else float(lam), SIGMAS[variant])
    return ProblemSpec(
        name=f"{base}-{variant.lower()}",
        solution_bounds=Box.unit(SOLUTION_DIM),
        task_bounds=Box.unit(TASK_DIM),
        evaluate=lambda x, theta: synthetic_evaluate(spec, x, theta),
        known_optimum=lambda theta: (spec.shift(theta), 0.0),
        description=f"{base.capitalize()}-{variant}: shifted {base}, scale {spec.lam:g}",
        constants={'lam': spec.lam},
    )
