"""Choosing the next task parameter to add to the pool"""
import logging

import numpy as np

from .diversity import diversity_scores
from .engine import evolve

logger = logging.getLogger(__name__)


def evolve_task(pool, model, theta_bounds, cfg, initial_population=None):
    """Evolve candidates toward maximal pool diversity and return the best one"""
    result = evolve(lambda thetas: diversity_scores(thetas, pool, model), theta_bounds, cfg, initial_population)
    logger.debug("evolved task %s with diversity %.6g", np.round(result.best, 4), result.best_score)
    return result.best


def random_task(theta_bounds, rng):
    """Uniform draw from the task box"""
    return theta_bounds.from_unit(rng.random(theta_bounds.dim))
