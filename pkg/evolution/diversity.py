"""Determinant-based diversity of a task pool extended by one candidate.

Each task-model dimension contributes the determinant of its noiseless
kernel matrix over ``pool + [candidate]``; the score is their sum.
"""
import numpy as np

from surrogates.gp import kernel_matrix

DIVERSITY_JITTER = 1e-8


def _determinants(matrices):
    """Determinants of a stack of symmetric matrices"""
    try:
        chol = np.linalg.cholesky(matrices)
        return np.prod(np.diagonal(chol, axis1=-2, axis2=-1), axis=-1) ** 2
    except np.linalg.LinAlgError:
        pass
    out = np.empty(matrices.shape[0])
    for i, matrix in enumerate(matrices):
        try:
            chol = np.linalg.cholesky(matrix)
            out[i] = np.prod(np.diag(chol)) ** 2
        except np.linalg.LinAlgError:
            out[i] = np.linalg.det(matrix)
    return out


def diversity_scores(thetas, pool, model):
    """Vectorized diversity objective for each row of ``thetas``"""
    candidates = model.normalize_tasks(np.atleast_2d(np.asarray(thetas, dtype=float)))
    members = model.normalize_tasks(pool.as_array())
    n, m = candidates.shape[0], members.shape[0]
    eye = DIVERSITY_JITTER * np.eye(m + 1)

    total = np.zeros(n)
    for h in model.hyperparams:
        stack = np.empty((n, m + 1, m + 1))
        if m:
            stack[:, :m, :m] = kernel_matrix(members, members, h)
            cross = kernel_matrix(candidates, members, h)
            stack[:, m, :m] = cross
            stack[:, :m, m] = cross
        stack[:, m, m] = h.signal_variance
        total += _determinants(stack + eye)
    return total


def diversity_objective(theta, pool, model):
    return float(diversity_scores(np.atleast_1d(np.asarray(theta, dtype=float))[None, :], pool, model)[0])
