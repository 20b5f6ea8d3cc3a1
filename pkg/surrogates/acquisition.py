"""UCB acquisition and its maximization over the solution box"""
from dataclasses import dataclass

import numpy as np

from core.exceptions import InvalidArgument
from core.space import sobol_points

GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0
SECTION_EVALUATIONS = 12


@dataclass(frozen=True)
class AcquisitionConfig:
    beta: float = 1.0
    candidate_count: int = 1024
    refine_steps: int = 16
    seed: int = 0

    def __post_init__(self):
        if self.beta < 0:
            raise InvalidArgument(f"beta must be >= 0, got {self.beta}")
        if self.candidate_count < 1:
            raise InvalidArgument(f"candidate_count must be >= 1, got {self.candidate_count}")
        if self.refine_steps < 0:
            raise InvalidArgument(f"refine_steps must be >= 0, got {self.refine_steps}")


def _queries(x, theta):
    x = np.atleast_2d(np.asarray(x, dtype=float))
    if theta is None:
        return x
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    return np.hstack([x, np.broadcast_to(theta, (x.shape[0], theta.shape[0]))])


def ucb_scores(model, xs, theta=None, beta=1.0):
    """Vectorized ``-mu + beta * sigma`` over rows of ``xs``"""
    mean, variance = model.predict_many(_queries(xs, theta))
    return -mean + beta * np.sqrt(variance)


def ucb_score(model, x, theta=None, beta=1.0):
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.ndim != 1:
        raise InvalidArgument("ucb_score takes a single solution vector")
    return float(ucb_scores(model, x[None, :], theta, beta)[0])


def _section_search(score_at, low, high):
    """Golden-section maximization of a scalar function on ``[low, high]``"""
    a, b = low, high
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = score_at(c), score_at(d)
    for _ in range(SECTION_EVALUATIONS):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = score_at(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = score_at(d)
    return (c, fc) if fc >= fd else (d, fd)


def maximize_ucb(model, theta, bounds, cfg):
    """Best of a Sobol candidate pool, then coordinate-wise golden-section refinement.

    Ties keep the earliest candidate; refinement only accepts strict
    improvements, so the result never scores below any raw candidate.
    """
    if np.any(bounds.width <= 0):
        raise InvalidArgument("acquisition bounds are degenerate")
    candidates = sobol_points(bounds, cfg.candidate_count, cfg.seed)
    scores = ucb_scores(model, candidates, theta, cfg.beta)
    best_index = int(np.argmax(scores))
    best = candidates[best_index].copy()
    best_score = scores[best_index]

    dim = bounds.dim
    for step in range(cfg.refine_steps):
        j = step % dim
        radius = 0.25 * bounds.width[j] / 2 ** (step // dim)
        low = max(bounds.lower[j], best[j] - radius)
        high = min(bounds.upper[j], best[j] + radius)
        if high <= low:
            continue

        def score_at(value, j=j):
            trial = best.copy()
            trial[j] = value
            return float(ucb_scores(model, trial[None, :], theta, cfg.beta)[0])

        value, score = _section_search(score_at, low, high)
        if score > best_score:
            best[j] = value
            best_score = score
    return bounds.clip(best)
