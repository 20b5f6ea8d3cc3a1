"""Bounded real-coded variation operators (SBX and polynomial mutation)"""
import numpy as np

PARENT_EPS = 1e-14


def _spread(beta, eta, u):
    alpha = 2.0 - beta ** -(eta + 1.0)
    return np.where(
        u <= 1.0 / alpha,
        (u * alpha) ** (1.0 / (eta + 1.0)),
        (1.0 / (2.0 - u * alpha)) ** (1.0 / (eta + 1.0)),
    )


def sbx_crossover(parent_a, parent_b, bounds, eta_c, p_c, rng):
    """Simulated binary crossover with bound-aware spread factors.

    When crossover fires, each variable is recombined with probability 0.5
    and the two children swap that variable with probability 0.5.
    """
    a = np.asarray(parent_a, dtype=float).copy()
    b = np.asarray(parent_b, dtype=float).copy()
    if rng.random() >= p_c:
        return a, b

    lower, upper = bounds.lower, bounds.upper
    active = (rng.random(a.shape[0]) <= 0.5) & (np.abs(a - b) > PARENT_EPS)
    u = rng.random(a.shape[0])
    swap = rng.random(a.shape[0]) <= 0.5
    if not active.any():
        return a, b

    y1 = np.minimum(a, b)
    y2 = np.maximum(a, b)
    gap = np.where(active, y2 - y1, 1.0)

    beta_low = 1.0 + 2.0 * (y1 - lower) / gap
    beta_high = 1.0 + 2.0 * (upper - y2) / gap
    c1 = 0.5 * ((y1 + y2) - _spread(beta_low, eta_c, u) * gap)
    c2 = 0.5 * ((y1 + y2) + _spread(beta_high, eta_c, u) * gap)
    c1 = np.clip(c1, lower, upper)
    c2 = np.clip(c2, lower, upper)

    first = np.where(swap, c2, c1)
    second = np.where(swap, c1, c2)
    child_a = np.where(active, first, a)
    child_b = np.where(active, second, b)
    return child_a, child_b


def polynomial_mutation(individual, bounds, eta_m, p_m, rng):
    """Bounded polynomial mutation applied per variable with probability ``p_m``"""
    y = np.asarray(individual, dtype=float).copy()
    lower, upper = bounds.lower, bounds.upper
    width = upper - lower
    mutate = (rng.random(y.shape[0]) < p_m) & (width > 0)
    u = rng.random(y.shape[0])
    if not mutate.any():
        return y

    safe_width = np.where(width > 0, width, 1.0)
    delta_low = (y - lower) / safe_width
    delta_high = (upper - y) / safe_width
    power = 1.0 / (eta_m + 1.0)

    below = u < 0.5
    val_low = 2.0 * u + (1.0 - 2.0 * u) * (1.0 - delta_low) ** (eta_m + 1.0)
    val_high = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * (1.0 - delta_high) ** (eta_m + 1.0)
    with np.errstate(invalid='ignore'):
        delta_q = np.where(below, val_low ** power - 1.0, 1.0 - val_high ** power)

    mutated = np.clip(y + delta_q * width, lower, upper)
    return np.where(mutate, mutated, y)


def binary_tournament(scores, rng):
    """Index of the better of two uniformly drawn individuals (higher score wins)"""
    i, j = rng.integers(len(scores), size=2)
    return int(i) if scores[i] >= scores[j] else int(j)
