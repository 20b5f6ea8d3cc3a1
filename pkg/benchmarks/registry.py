"""Benchmarks addressable by name, with constant overrides"""
import inspect
import logging

from core.exceptions import InvalidConfig

from .crane import CraneParams, crane_problem
from .robot_arm import robot_arm_problem
from .synthetic import BASES, synthetic_problem
from .truss import truss_problem

logger = logging.getLogger(__name__)


def _synthetic_factory(base, variant):
    def factory(lam=None):
        return synthetic_problem(base, variant, lam)
    return factory


def _crane_factory(variant):
    def factory(**constants):
        return crane_problem(variant, **constants)
    factory.accepted = set(CraneParams.__dataclass_fields__)
    return factory


PROBLEMS = {}
for _base in BASES:
    for _variant in ('I', 'II'):
        PROBLEMS[f"{_base}-{_variant.lower()}"] = _synthetic_factory(_base, _variant)
PROBLEMS['robot-arm'] = robot_arm_problem
PROBLEMS['crane-load-i'] = _crane_factory('I')
PROBLEMS['crane-load-ii'] = _crane_factory('II')
PROBLEMS['truss'] = truss_problem


def _accepted(factory):
    if hasattr(factory, 'accepted'):
        return factory.accepted
    return set(inspect.signature(factory).parameters)


def problem_names():
    return sorted(PROBLEMS)


def get_problem(name, overrides=None):
    """Build the named problem, applying constant overrides"""
    key = str(name).lower()
    if key not in PROBLEMS:
        raise InvalidConfig(f"problem: unknown benchmark {name!r}; choose one of {', '.join(problem_names())}")
    factory = PROBLEMS[key]
    overrides = dict(overrides or {})
    unknown = set(overrides) - _accepted(factory)
    if unknown:
        raise InvalidConfig(f"problem_overrides: {key} does not accept {', '.join(sorted(unknown))}")
    if overrides:
        logger.info("building %s with overrides %s", key, overrides)
    return factory(**overrides)
