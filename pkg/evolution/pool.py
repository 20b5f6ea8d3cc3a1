import numpy as np

from core.exceptions import InvalidArgument


class TaskPool:
    """Ordered set of task parameters; a task's index is its id"""

    def __init__(self, thetas, bounds):
        self.bounds = bounds
        self.thetas = []
        for theta in thetas:
            self.add(theta)

    def __len__(self):
        return len(self.thetas)

    def __getitem__(self, task_id):
        return self.thetas[task_id]

    def add(self, theta):
        theta = np.atleast_1d(np.asarray(theta, dtype=float)).copy()
        if theta.shape[0] != self.bounds.dim:
            raise InvalidArgument(f"task dimension {theta.shape[0]} does not match pool dimension {self.bounds.dim}")
        if not self.bounds.contains(theta, tol=1e-12):
            raise InvalidArgument(f"task {theta} lies outside the task box")
        self.thetas.append(theta)
        return len(self.thetas) - 1

    def remove_last(self):
        return self.thetas.pop()

    def as_array(self):
        if not self.thetas:
            return np.empty((0, self.bounds.dim))
        return np.vstack(self.thetas)
