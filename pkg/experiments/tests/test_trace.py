import numpy as np
from django.test import SimpleTestCase

from core.exceptions import ConsistencyError
from experiments.trace import RunTrace, compute_regret


def trace_of(values, task_id=0):
    trace = RunTrace()
    for i, y in enumerate(values):
        trace.record(i, task_id, [0.5], [0.1 * i], y)
    return trace


class RunTraceTests(SimpleTestCase):
    def test_best_so_far_is_running_minimum(self):
        trace = trace_of([3.0, 1.0, 2.0, 0.5])
        np.testing.assert_array_equal(trace.best_so_far(0), [3.0, 1.0, 1.0, 0.5])
        self.assertEqual(trace.rows[-1].cum_evals, 4)

    def test_tasks_tracked_separately(self):
        trace = RunTrace()
        trace.record(0, 0, [0.1], [0.0], 2.0)
        trace.record(0, 1, [0.9], [0.0], 5.0)
        trace.record(1, 0, [0.1], [0.3], 1.0)
        self.assertEqual(trace.task_ids, [0, 1])
        self.assertEqual(trace.final_best(), {0: 1.0, 1: 5.0})
        self.assertEqual(trace.evaluations_per_task(), {0: 2, 1: 1})

    def test_recorded_arrays_are_copies(self):
        trace = RunTrace()
        x = np.array([0.1, 0.2])
        trace.record(0, 0, [0.5], x, 1.0)
        x[0] = 9.0
        self.assertEqual(trace.rows[0].x[0], 0.1)


class RegretTests(SimpleTestCase):
    def test_cumulative_regret(self):
        curve = compute_regret(trace_of([1.0, 0.5, 0.25]), {0: 0.0})[0]
        np.testing.assert_allclose(curve.cumulative, [1.0, 1.5, 1.75])
        self.assertAlmostEqual(curve.total, 1.75)

    def test_value_below_optimum_is_inconsistent(self):
        with self.assertRaises(ConsistencyError):
            compute_regret(trace_of([1.0, -0.1]), {0: 0.0})

    def test_rounding_noise_clamped(self):
        curve = compute_regret(trace_of([1e-12 - 1e-11]), {0: 0.0})[0]
        self.assertEqual(curve.instantaneous[0], 0.0)
