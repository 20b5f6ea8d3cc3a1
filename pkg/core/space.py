"""Box-bounded search spaces and space-filling designs"""
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.stats import qmc

from .exceptions import InvalidArgument


@dataclass(frozen=True, eq=False)
class Box:
    """Axis-aligned box ``[lower, upper]`` in R^d"""
    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = np.atleast_1d(np.asarray(self.lower, dtype=float))
        upper = np.atleast_1d(np.asarray(self.upper, dtype=float))
        if lower.shape != upper.shape or lower.ndim != 1:
            raise InvalidArgument(f"box bounds must be matching vectors, got {lower.shape} and {upper.shape}")
        if np.any(upper < lower):
            raise InvalidArgument("box upper bound below lower bound")
        object.__setattr__(self, 'lower', lower)
        object.__setattr__(self, 'upper', upper)

    @classmethod
    def unit(cls, dim):
        return cls(np.zeros(dim), np.ones(dim))

    @property
    def dim(self):
        return self.lower.shape[0]

    @property
    def width(self):
        return self.upper - self.lower

    def concat(self, other):
        return Box(np.concatenate([self.lower, other.lower]), np.concatenate([self.upper, other.upper]))

    def contains(self, point, tol=0.0):
        point = np.asarray(point, dtype=float)
        return bool(np.all(point >= self.lower - tol) and np.all(point <= self.upper + tol))

    def clip(self, points):
        return np.clip(points, self.lower, self.upper)

    def to_unit(self, points):
        """Affine map onto [0, 1]^d; degenerate dimensions map to 0"""
        width = np.where(self.width > 0, self.width, 1.0)
        return (np.asarray(points, dtype=float) - self.lower) / width

    def from_unit(self, points):
        return self.lower + np.asarray(points, dtype=float) * self.width

    def to_dict(self):
        return {'lower': self.lower.tolist(), 'upper': self.upper.tolist()}

    @classmethod
    def from_dict(cls, data):
        return cls(np.asarray(data['lower'], dtype=float), np.asarray(data['upper'], dtype=float))


def latin_hypercube(box, n, seed):
    """``n`` Latin hypercube points inside ``box``"""
    if n < 1:
        raise InvalidArgument(f"need at least one sample, got {n}")
    sampler = qmc.LatinHypercube(d=box.dim, seed=seed)
    return box.from_unit(sampler.random(n))


def sobol_points(box, n, seed):
    """``n`` scrambled Sobol points inside ``box``, in generation order"""
    if n < 1:
        raise InvalidArgument(f"need at least one sample, got {n}")
    sampler = qmc.Sobol(d=box.dim, scramble=True, seed=seed)
    if n & (n - 1) == 0:
        unit = sampler.random_base2(int(np.log2(n)))
    else:
        with warnings.catch_warnings():
            # balance properties only hold for powers of two
            warnings.simplefilter('ignore', UserWarning)
            unit = sampler.random(n)
    return box.from_unit(unit)


def derive_seed(*parts):
    """Deterministic 32-bit seed from a tuple of non-negative ints"""
    return int(np.random.SeedSequence([int(p) for p in parts]).generate_state(1)[0])
