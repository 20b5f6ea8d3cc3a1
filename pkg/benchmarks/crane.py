"""Crane-load acceleration control.

Three switching intervals ``t = (t1, t2, t3)`` drive the crane; the objective
adds a penalty on residual load oscillation (terminal energy) to the
normalized control time. Variant I perturbs the intervals by task-given
delays; variant II varies suspension length, load mass and resistance.
"""
import logging
from dataclasses import dataclass, replace

import numpy as np

from core.exceptions import InvalidArgument, NumericalFailure
from core.space import Box

from .problems import ProblemSpec

logger = logging.getLogger(__name__)

GRAVITY = 9.81


@dataclass(frozen=True)
class CraneParams:
    m1: float = 4.2e4
    m2: float = 1.0e4
    v: float = 0.7
    l: float = 6.5
    resistance_coeff: float = 0.01
    w: float = 1.0e6
    delta: float = 0.01
    f_min: float = 0.0
    f_max: float = 2.41e4
    g: float = GRAVITY

    def __post_init__(self):
        if min(self.m1, self.m2, self.l, self.v) <= 0:
            raise InvalidArgument("crane masses, length and velocity must be positive")

    @property
    def resistance(self):
        return self.resistance_coeff * self.g * (self.m1 + self.m2)

    @property
    def omega(self):
        return np.sqrt(self.g * (self.m1 + self.m2) / (self.m1 * self.l))

    @property
    def omega0(self):
        return np.sqrt(self.g / self.l)


def terminal_energy(t, params):
    t1, t2, t3 = (float(v) for v in t)
    total = t1 + t2 + t3
    om, om0 = params.omega, params.omega0
    f_min, f_max, w_res = params.f_min, params.f_max, params.resistance

    cos_part = (f_max - w_res
                - (f_max - f_min) * (np.cos(t3 * om) - np.cos((t2 + t3) * om))
                + (w_res - f_max) * np.cos(total * om))
    sin_part = ((f_max - f_min) * (np.sin(t3 * om) - np.sin((t2 + t3) * om))
                + (f_max - w_res) * np.sin(total * om))
    te2 = (params.m1 * params.v * om ** 3
           - om * om0 ** 2 * (f_min * t2 + f_max * (t1 + t3) - total * w_res)
           + om0 ** 2 * sin_part)
    scale = params.m2 / (2.0 * params.m1 ** 2 * om ** 6)
    return scale * (om ** 2 * om0 ** 4 * cos_part ** 2 + te2 ** 2)


def crane_objective(t, params):
    """Penalized energy term plus ``sum(t) * omega / (2 pi)``"""
    te = terminal_energy(t, params)
    energy = params.w * te if te >= params.delta else 0.0
    value = 2.0 * energy / (params.m2 * params.v ** 2) + float(np.sum(t)) * params.omega / (2.0 * np.pi)
    if not np.isfinite(value):
        raise NumericalFailure(f"crane objective is not finite for t={list(t)}", inputs={'t': list(t), 'params': params})
    return float(value)


def crane_evaluate(t, theta, variant, params=None):
    params = params or CraneParams()
    t = np.asarray(t, dtype=float)
    theta = np.asarray(theta, dtype=float)
    if variant == 'I':
        return crane_objective(t + theta, params)
    if variant == 'II':
        length, load, coeff = (float(v) for v in theta)
        return crane_objective(t, replace(params, l=length, m2=load, resistance_coeff=coeff))
    raise InvalidArgument(f"unknown crane variant {variant!r}")


def crane_problem(variant, **constants):
    params = CraneParams(**constants)
    if variant == 'I':
        solution_bounds = Box(np.zeros(3), np.full(3, 2.0))
        task_bounds = Box(np.zeros(3), np.ones(3))
        description = 'crane-load control under switching delays; task = (dt1, dt2, dt3)'
    else:
        solution_bounds = Box(np.zeros(3), np.full(3, 3.0))
        task_bounds = Box(np.array([5.0, 8.0e2, 0.005]), np.array([8.0, 1.2e4, 0.015]))
        description = 'crane-load control across operating conditions; task = (l, m2, resistance coefficient)'
    return ProblemSpec(
        name=f"crane-load-{variant.lower()}",
        solution_bounds=solution_bounds,
        task_bounds=task_bounds,
        evaluate=lambda x, theta: crane_evaluate(x, theta, variant, params),
        description=description,
        constants={k: getattr(params, k) for k in params.__dataclass_fields__},
    )
