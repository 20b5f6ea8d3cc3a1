"""Exact Gaussian-process regression with ARD-RBF kernels.

Inputs are affinely mapped to [0, 1] per dimension using known box bounds
and targets are standardized per fit. A model over concatenated (x, theta)
inputs uses the same ARD kernel; an ARD-RBF over the concatenation is the
product of the x-block and theta-block RBFs, so kernel values between two
points with equal theta depend on x alone.
"""
import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg
from scipy.spatial.distance import cdist

from core.exceptions import InvalidArgument, NumericalFailure
from core.space import Box

logger = logging.getLogger(__name__)

JITTER_START = 1e-6
JITTER_MAX = 1e-2
NOISE_FLOOR = 1e-8
STD_FLOOR = 1e-8
NEGATIVE_VARIANCE_TOL = 1e-9

DEFAULT_LENGTHSCALE = 0.5
DEFAULT_SIGNAL_VARIANCE = 1.0
DEFAULT_NOISE_VARIANCE = 1e-2


@dataclass(frozen=True, eq=False)
class GpHyperparams:
    lengthscales: np.ndarray
    signal_variance: float
    noise_variance: float

    def __post_init__(self):
        lengthscales = np.atleast_1d(np.asarray(self.lengthscales, dtype=float))
        if lengthscales.ndim != 1 or np.any(~np.isfinite(lengthscales)) or np.any(lengthscales <= 0):
            raise InvalidArgument(f"lengthscales must be positive, got {lengthscales}")
        if not self.signal_variance > 0:
            raise InvalidArgument(f"signal_variance must be positive, got {self.signal_variance}")
        if not self.noise_variance >= 0:
            raise InvalidArgument(f"noise_variance must be non-negative, got {self.noise_variance}")
        object.__setattr__(self, 'lengthscales', lengthscales)
        object.__setattr__(self, 'signal_variance', float(self.signal_variance))
        object.__setattr__(self, 'noise_variance', float(self.noise_variance))

    @classmethod
    def default(cls, dim):
        return cls(np.full(dim, DEFAULT_LENGTHSCALE), DEFAULT_SIGNAL_VARIANCE, DEFAULT_NOISE_VARIANCE)

    @property
    def dim(self):
        return self.lengthscales.shape[0]

    def to_log(self):
        """Log-space parameter vector ``[log l_1..l_d, log sv, log noise]``"""
        return np.concatenate([
            np.log(self.lengthscales),
            [np.log(self.signal_variance), np.log(max(self.noise_variance, NOISE_FLOOR))],
        ])

    @classmethod
    def from_log(cls, eta):
        eta = np.asarray(eta, dtype=float)
        return cls(np.exp(eta[:-2]), float(np.exp(eta[-2])), max(float(np.exp(eta[-1])), NOISE_FLOOR))

    def to_dict(self):
        return {
            'lengthscales': self.lengthscales.tolist(),
            'signal_variance': self.signal_variance,
            'noise_variance': self.noise_variance,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(np.asarray(data['lengthscales'], dtype=float), data['signal_variance'], data['noise_variance'])


@dataclass(frozen=True, eq=False)
class TrainingSet:
    """Inputs/targets plus the normalization used to fit on them.

    ``bounds=None`` leaves inputs unscaled; ``standardize=False`` keeps raw
    targets (mean 0, scale 1).
    """
    inputs: np.ndarray
    targets: np.ndarray
    bounds: Box = None
    standardize: bool = True

    def __post_init__(self):
        inputs = np.asarray(self.inputs, dtype=float)
        if inputs.ndim == 1:
            inputs = inputs.reshape(-1, 1)
        targets = np.asarray(self.targets, dtype=float).reshape(-1)
        if inputs.ndim != 2 or inputs.shape[0] != targets.shape[0]:
            raise InvalidArgument(f"inputs {inputs.shape} and targets {targets.shape} do not line up")
        if self.bounds is not None and self.bounds.dim != inputs.shape[1]:
            raise InvalidArgument(f"bounds have dimension {self.bounds.dim}, inputs {inputs.shape[1]}")
        if not np.all(np.isfinite(targets)):
            raise InvalidArgument("targets must be finite")
        object.__setattr__(self, 'inputs', inputs)
        object.__setattr__(self, 'targets', targets)

        if self.standardize and targets.size:
            y_mean = float(np.mean(targets))
            y_std = max(float(np.std(targets)), STD_FLOOR)
        else:
            y_mean, y_std = 0.0, 1.0
        object.__setattr__(self, 'y_mean', y_mean)
        object.__setattr__(self, 'y_std', y_std)
        object.__setattr__(self, 'unit_inputs', self.normalize(inputs))

    @property
    def size(self):
        return self.targets.shape[0]

    @property
    def dim(self):
        return self.inputs.shape[1]

    @property
    def scaled_targets(self):
        return (self.targets - self.y_mean) / self.y_std

    def normalize(self, points):
        points = np.asarray(points, dtype=float)
        return points if self.bounds is None else self.bounds.to_unit(points)

    def extend(self, inputs, targets):
        return TrainingSet(
            np.vstack([self.inputs, np.atleast_2d(inputs)]),
            np.concatenate([self.targets, np.atleast_1d(targets)]),
            bounds=self.bounds,
            standardize=self.standardize,
        )

    def subset(self, mask):
        return TrainingSet(self.inputs[mask], self.targets[mask], bounds=self.bounds, standardize=self.standardize)


@dataclass(frozen=True)
class Posterior:
    mean: float
    variance: float


def kernel_matrix(a, b, h):
    """ARD-RBF covariance between the rows of ``a`` and ``b``"""
    a = np.atleast_2d(a)
    b = np.atleast_2d(b)
    if a.shape[1] != h.dim or b.shape[1] != h.dim:
        raise InvalidArgument(f"kernel expects dimension {h.dim}, got {a.shape[1]} and {b.shape[1]}")
    sq = cdist(a / h.lengthscales, b / h.lengthscales, 'sqeuclidean')
    return h.signal_variance * np.exp(-0.5 * sq)


def rbf_kernel(a, b, h):
    a = np.atleast_1d(np.asarray(a, dtype=float))
    b = np.atleast_1d(np.asarray(b, dtype=float))
    if a.shape != b.shape or a.shape[0] != h.dim:
        raise InvalidArgument(f"rbf_kernel dimension mismatch: {a.shape}, {b.shape}, lengthscales {h.dim}")
    return float(kernel_matrix(a[None, :], b[None, :], h)[0, 0])


def factorize(gram, noise_variance, signal_variance):
    """Cholesky of ``gram + (noise + jitter) I`` with escalating jitter.

    Returns ``(lower_factor, jitter)``.
    """
    eye = np.eye(gram.shape[0])
    jitter = JITTER_START * signal_variance
    ceiling = JITTER_MAX * signal_variance
    while True:
        try:
            chol = scipy.linalg.cholesky(gram + (noise_variance + jitter) * eye, lower=True)
            return chol, jitter
        except (np.linalg.LinAlgError, ValueError):
            if jitter >= ceiling * (1 - 1e-12):
                raise NumericalFailure(f"Cholesky failed with jitter {jitter:.3g}", jitter=jitter)
            logger.debug("Cholesky failed at jitter %.3g, escalating", jitter)
            jitter = min(jitter * 10.0, ceiling)


class GpModel:
    """Fitted posterior: cached Cholesky factor and weights over a training set.

    Immutable once built; concurrent prediction is safe.
    """

    def __init__(self, hyperparams, training, chol=None, alpha=None, jitter=0.0, bounds=None):
        self.hyperparams = hyperparams
        self.training = training
        self.chol = chol
        self.alpha = alpha
        self.jitter = jitter
        self._bounds = bounds if training is None else training.bounds

    @classmethod
    def prior(cls, hyperparams, bounds=None):
        """Model with no data: zero mean, variance ``signal_variance``"""
        return cls(hyperparams, None, bounds=bounds)

    @property
    def dim(self):
        return self.hyperparams.dim

    @property
    def is_prior(self):
        return self.training is None

    def _normalize(self, points):
        return points if self._bounds is None else self._bounds.to_unit(points)

    def predict_many(self, queries):
        """Posterior means and variances (target units) for rows of ``queries``"""
        queries = np.atleast_2d(np.asarray(queries, dtype=float))
        if queries.shape[1] != self.dim:
            raise InvalidArgument(f"query dimension {queries.shape[1]} does not match model dimension {self.dim}")
        h = self.hyperparams
        z = self._normalize(queries)
        if self.is_prior:
            return np.zeros(len(z)), np.full(len(z), h.signal_variance)

        cross = kernel_matrix(z, self.training.unit_inputs, h)
        mean = cross @ self.alpha
        v = scipy.linalg.solve_triangular(self.chol, cross.T, lower=True)
        variance = h.signal_variance - np.sum(v * v, axis=0)
        floor = -NEGATIVE_VARIANCE_TOL * max(1.0, h.signal_variance)
        if np.any(variance < floor):
            raise NumericalFailure(f"posterior variance {variance.min():.3g} is negative beyond tolerance")
        variance = np.maximum(variance, 0.0)

        t = self.training
        return t.y_mean + t.y_std * mean, variance * t.y_std ** 2

    def predict(self, query):
        query = np.atleast_1d(np.asarray(query, dtype=float))
        if query.ndim != 1 or query.shape[0] != self.dim:
            raise InvalidArgument(f"query dimension {query.shape} does not match model dimension {self.dim}")
        mean, variance = self.predict_many(query[None, :])
        return Posterior(float(mean[0]), float(variance[0]))


def fit_posterior(training, h):
    if training.size == 0:
        raise InvalidArgument("cannot fit a posterior on an empty training set")
    if training.dim != h.dim:
        raise InvalidArgument(f"training dimension {training.dim} does not match hyperparameters {h.dim}")
    gram = kernel_matrix(training.unit_inputs, training.unit_inputs, h)
    chol, jitter = factorize(gram, h.noise_variance, h.signal_variance)
    alpha = scipy.linalg.cho_solve((chol, True), training.scaled_targets)
    return GpModel(h, training, chol=chol, alpha=alpha, jitter=jitter)


def log_marginal_likelihood(model):
    """LML on standardized targets and its gradient w.r.t. ``GpHyperparams.to_log()``"""
    if model.is_prior:
        raise InvalidArgument("log marginal likelihood needs a fitted model")
    h = model.hyperparams
    x = model.training.unit_inputs
    y = model.training.scaled_targets
    n = y.shape[0]

    value = -0.5 * y @ model.alpha - np.sum(np.log(np.diag(model.chol))) - 0.5 * n * np.log(2 * np.pi)

    gram = kernel_matrix(x, x, h)
    inv = scipy.linalg.cho_solve((model.chol, True), np.eye(n))
    weights = np.outer(model.alpha, model.alpha) - inv
    weighted_gram = weights * gram

    grad = np.empty(h.dim + 2)
    for i in range(h.dim):
        sq = (x[:, i][:, None] - x[:, i][None, :]) ** 2 / h.lengthscales[i] ** 2
        grad[i] = 0.5 * np.sum(weighted_gram * sq)
    # jitter scales with signal_variance, so it moves with log sv
    grad[h.dim] = 0.5 * (np.sum(weighted_gram) + model.jitter * np.trace(weights))
    grad[h.dim + 1] = 0.5 * h.noise_variance * np.trace(weights)
    return float(value), grad


def _likelihood_at(training, eta):
    try:
        model = fit_posterior(training, GpHyperparams.from_log(eta))
        value, grad = log_marginal_likelihood(model)
    except (NumericalFailure, InvalidArgument, FloatingPointError):
        return None
    if not np.isfinite(value) or not np.all(np.isfinite(grad)):
        return None
    return value, grad


def fit_hyperparams(training, init, epochs, lr, beta1=0.9, beta2=0.999, eps=1e-8):
    """Adam ascent on the log marginal likelihood over log-hyperparameters.

    Returns the best iterate seen, so the result never scores below ``init``.
    A non-finite step is reverted and the step size halved; two failures in a
    row end the fit.
    """
    if epochs < 1:
        raise InvalidArgument(f"epochs must be >= 1, got {epochs}")
    if not lr > 0:
        raise InvalidArgument(f"learning rate must be positive, got {lr}")

    eta = init.to_log()
    current = _likelihood_at(training, eta)
    if current is None:
        raise NumericalFailure("initial hyperparameters give a non-finite likelihood")
    best_eta, best_value = eta, current[0]
    log_noise_floor = np.log(NOISE_FLOOR)

    m = np.zeros_like(eta)
    v = np.zeros_like(eta)
    step = lr
    failures = 0
    for t in range(1, epochs + 1):
        grad = current[1]
        m = beta1 * m + (1 - beta1) * grad
        v = beta2 * v + (1 - beta2) * grad ** 2
        m_hat = m / (1 - beta1 ** t)
        v_hat = v / (1 - beta2 ** t)
        candidate = eta + step * m_hat / (np.sqrt(v_hat) + eps)
        candidate[-1] = max(candidate[-1], log_noise_floor)

        result = _likelihood_at(training, candidate)
        if result is None:
            failures += 1
            logger.debug("non-finite likelihood at epoch %d, reverting (failure %d)", t, failures)
            if failures >= 2:
                break
            step *= 0.5
            continue
        failures = 0
        eta, current = candidate, result
        if current[0] > best_value:
            best_eta, best_value = eta, current[0]

    fitted = GpHyperparams.from_log(best_eta)
    logger.debug("fitted hyperparameters over %d points: lml=%.6g lengthscales=%s",
                 training.size, best_value, np.round(fitted.lengthscales, 4))
    return fitted


def _task_mask(training, target_task):
    theta = np.atleast_1d(np.asarray(target_task, dtype=float))
    d = theta.shape[0]
    if d > training.dim:
        raise InvalidArgument(f"task parameter of dimension {d} exceeds input dimension {training.dim}")
    mask = np.all(training.inputs[:, -d:] == theta, axis=1)
    if not mask.any():
        raise InvalidArgument(f"no samples for task {theta}")
    return mask


def conditional_information_gain(full, target_task, h):
    """``0.5 log|I + K_cond / noise|`` for the target task given all other-task data.

    The task parameter occupies the trailing columns of ``full.inputs``;
    samples are assigned to the target by exact match.
    """
    if not h.noise_variance > 0:
        raise InvalidArgument("information gain requires positive noise variance")
    mask = _task_mask(full, target_task)
    x = full.unit_inputs
    target = x[mask]
    cond = kernel_matrix(target, target, h)
    if (~mask).any():
        others = x[~mask]
        gram = kernel_matrix(others, others, h) + h.noise_variance * np.eye(others.shape[0])
        cross = kernel_matrix(others, target, h)
        chol = scipy.linalg.cholesky(gram, lower=True)
        v = scipy.linalg.solve_triangular(chol, cross, lower=True)
        cond = cond - v.T @ v
    _, logdet = np.linalg.slogdet(np.eye(cond.shape[0]) + cond / h.noise_variance)
    return max(0.0, 0.5 * float(logdet))


def independent_information_gain(full, target_task, h):
    """Information gain when the target task is modelled on its own samples"""
    mask = _task_mask(full, target_task)
    return conditional_information_gain(full.subset(mask), target_task, h)
