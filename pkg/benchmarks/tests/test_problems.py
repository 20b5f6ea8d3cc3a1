import math
from dataclasses import replace

import numpy as np
from django.test import SimpleTestCase

from benchmarks.crane import CraneParams, crane_evaluate, crane_objective, terminal_energy
from benchmarks.problems import known_optimum, negated
from benchmarks.registry import get_problem, problem_names
from benchmarks.robot_arm import robot_arm_evaluate
from benchmarks.synthetic import MIXING_MATRIX, SyntheticSpec, sigma_oscillating, sigma_smooth, sphere, synthetic_evaluate
from benchmarks.truss import TrussSpec, truss_evaluate
from core.exceptions import InvalidArgument, InvalidConfig, Unsupported

SYNTHETIC = [f"{base}-{v}" for base in ('sphere', 'ackley', 'rastrigin', 'griewank') for v in ('i', 'ii')]


def crane_by_hand(t1, t2, t3, m1, m2, v, l, W, w, delta, fmin, fmax, g=9.81):
    big = math.sqrt(g * (m1 + m2) / (m1 * l))
    small = math.sqrt(g / l)
    T = t1 + t2 + t3
    a = fmax - W - (fmax - fmin) * (math.cos(t3 * big) - math.cos((t2 + t3) * big)) + (W - fmax) * math.cos(T * big)
    b = (m1 * v * big ** 3 - big * small ** 2 * (fmin * t2 + fmax * (t1 + t3) - T * W)
         + small ** 2 * ((fmax - fmin) * (math.sin(t3 * big) - math.sin((t2 + t3) * big)) + (fmax - W) * math.sin(T * big)))
    te = m2 / (2 * m1 ** 2 * big ** 6) * (big ** 2 * small ** 4 * a ** 2 + b ** 2)
    energy = w * te if te >= delta else 0.0
    return 2 * energy / (m2 * v ** 2) + T * big / (2 * math.pi)


def truss_by_hand(x, theta):
    ranges = (98.0, 98.0, 2.0)
    p1, p2, p3 = (theta[i] + x[i] * ranges[i] for i in range(3))
    f1 = p1 * math.sqrt(16 + p3 ** 2) + p2 * math.sqrt(1 + p3 ** 2)
    f2 = 20 * math.sqrt(16 + p3 ** 2) / (p1 * p3)
    return 10.0 * f1 + 1e-5 * f2


class SyntheticTests(SimpleTestCase):
    def test_known_optimum_is_zero(self):
        rng = np.random.default_rng(0)
        for name in SYNTHETIC:
            problem = get_problem(name)
            for theta in rng.random((100, 5)):
                x_star, f_star = known_optimum(problem, theta)
                self.assertEqual(f_star, 0.0)
                self.assertLessEqual(problem(x_star, theta), 1e-12)

    def test_optimum_inside_unit_box_at_corners(self):
        problem = get_problem('rastrigin-ii')
        for corner in (np.zeros(5), np.ones(5), np.array([1, 0, 1, 0, 1.0])):
            x_star, _ = known_optimum(problem, corner)
            self.assertTrue(problem.solution_bounds.contains(x_star))

    def test_sigma_values(self):
        self.assertAlmostEqual(sigma_smooth(0.0), (math.sin(2.5) + 1) / 2)
        self.assertAlmostEqual(sigma_smooth(0.0), 0.79924, places=5)

    def test_sigmas_map_into_unit_interval(self):
        grid = np.linspace(0, 1, 10000)
        for sigma in (sigma_smooth, sigma_oscillating):
            values = sigma(grid)
            self.assertGreaterEqual(values.min(), 0.0)
            self.assertLessEqual(values.max(), 1.0)

    def test_sphere_at_origin(self):
        problem = get_problem('sphere-i')
        self.assertAlmostEqual(problem(np.zeros(4), np.zeros(5)), 16 * 4 * sigma_smooth(0.0) ** 2)
        self.assertAlmostEqual(problem(np.zeros(4), np.zeros(5)), 40.88, places=2)

    def test_mixing_matrix_rows_sum_to_one(self):
        np.testing.assert_allclose(MIXING_MATRIX.sum(axis=1), 1.0)

    def test_non_negative_by_random_search(self):
        rng = np.random.default_rng(1)
        problem = get_problem('rastrigin-ii')
        theta = rng.random(5)
        values = [problem(x, theta) for x in rng.random((10000, 4))]
        self.assertGreaterEqual(min(values), 0.0)

    def test_custom_spec(self):
        spec = SyntheticSpec(sphere, 2.0, sigma_smooth)
        theta = np.full(5, 0.3)
        x = spec.shift(theta) + 0.1
        self.assertAlmostEqual(synthetic_evaluate(spec, x, theta), 4 * 0.04)


class RobotArmTests(SimpleTestCase):
    def test_straight_arm(self):
        for link in (1 / 6, 0.25, 1 / 3):
            expected = math.sqrt((3 * link - 0.5) ** 2 + 0.25)
            self.assertAlmostEqual(robot_arm_evaluate([0.5, 0.5, 0.5], [link, math.pi / 4]), expected)

    def test_non_negative(self):
        problem = get_problem('robot-arm')
        rng = np.random.default_rng(2)
        for _ in range(200):
            theta = problem.task_bounds.from_unit(rng.random(2))
            self.assertGreaterEqual(problem(rng.random(3), theta), 0.0)

    def test_grid_reaches_target(self):
        link, alpha_max = 1 / 3, math.pi / 3
        grid = np.linspace(0, 1, 51)
        a, b, c = np.meshgrid(grid, grid, grid, indexing='ij')
        controls = np.stack([a.ravel(), b.ravel(), c.ravel()], axis=1)
        angles = np.cumsum(alpha_max * (2 * controls - 1), axis=1)
        tips = link * np.stack([np.cos(angles).sum(axis=1), np.sin(angles).sum(axis=1)], axis=1)
        distances = np.linalg.norm(tips - 0.5, axis=1)
        best = int(np.argmin(distances))
        self.assertLess(distances[best], 0.05)
        self.assertAlmostEqual(robot_arm_evaluate(controls[best], [link, alpha_max]), distances[best])


class CraneTests(SimpleTestCase):
    def test_matches_hand_transcription_variant_one(self):
        rng = np.random.default_rng(3)
        W = 0.01 * 9.81 * (4.2e4 + 1e4)
        cases = [(np.ones(3), np.zeros(3))] + [(rng.uniform(0, 2, 3), rng.uniform(0, 1, 3)) for _ in range(19)]
        for t, dt in cases:
            e = t + dt
            expected = crane_by_hand(*e, 4.2e4, 1e4, 0.7, 6.5, W, 1e6, 0.01, 0.0, 2.41e4)
            self.assertLess(abs(crane_evaluate(t, dt, 'I') - expected), 1e-9 * abs(expected))

    def test_matches_hand_transcription_variant_two(self):
        rng = np.random.default_rng(4)
        problem = get_problem('crane-load-ii')
        for _ in range(20):
            t = rng.uniform(0, 3, 3)
            length, load, coeff = problem.task_bounds.from_unit(rng.random(3))
            W = coeff * 9.81 * (4.2e4 + load)
            expected = crane_by_hand(*t, 4.2e4, load, 0.7, length, W, 1e6, 0.01, 0.0, 2.41e4)
            self.assertLess(abs(problem(t, [length, load, coeff]) - expected), 1e-9 * abs(expected))

    def test_below_threshold_only_time_counts(self):
        params = replace(CraneParams(), delta=1e30)
        t = np.array([0.4, 0.7, 1.1])
        self.assertEqual(crane_objective(t, params), t.sum() * params.omega / (2 * math.pi))

    def test_time_term_increases_below_threshold(self):
        params = replace(CraneParams(), delta=1e30)
        self.assertLess(crane_objective([0.5, 0.5, 0.5], params), crane_objective([0.5, 0.5, 0.6], params))

    def test_zero_delay_equals_nominal(self):
        t = np.array([0.3, 1.2, 0.8])
        self.assertEqual(crane_evaluate(t, np.zeros(3), 'I'), crane_objective(t, CraneParams()))

    def test_terminal_energy_non_negative(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            self.assertGreaterEqual(terminal_energy(rng.uniform(0, 2, 3), CraneParams()), 0.0)

    def test_unknown_variant(self):
        with self.assertRaises(InvalidArgument):
            crane_evaluate(np.ones(3), np.zeros(3), 'III')


class TrussTests(SimpleTestCase):
    def test_reference_design(self):
        self.assertAlmostEqual(truss_evaluate(np.zeros(3), [2.0, 2.0, 1.0]), 110.7467960704, delta=1e-6)

    def test_matches_hand_transcription(self):
        rng = np.random.default_rng(6)
        spec = TrussSpec()
        for _ in range(20):
            theta = spec.design_bounds.from_unit(rng.random(3))
            theta[0] = max(theta[0], 10.0)
            x = spec.error_bounds.from_unit(rng.random(3))
            expected = truss_by_hand(x, theta)
            self.assertLess(abs(truss_evaluate(x, theta) - expected), 1e-9 * expected)

    def test_zero_error_is_nominal(self):
        theta = np.array([30.0, 40.0, 2.0])
        np.testing.assert_array_equal(TrussSpec().operating(np.zeros(3), theta), theta)

    def test_increases_with_first_area_when_volume_dominates(self):
        theta = np.array([80.0, 20.0, 2.0])
        h = 1e-4
        up = truss_evaluate([h, 0, 0], theta)
        down = truss_evaluate([-h, 0, 0], theta)
        self.assertGreater(up, down)

    def test_undefined_operating_point(self):
        with self.assertRaises(InvalidArgument):
            truss_evaluate([-0.05, 0.0, 0.0], [2.0, 2.0, 1.0])

    def test_registered_problem_stays_finite(self):
        problem = get_problem('truss')
        self.assertTrue(np.isfinite(problem([-0.05, -0.05, -0.05], [2.0, 2.0, 1.0])))


class RegistryTests(SimpleTestCase):
    def test_all_names_resolve(self):
        names = problem_names()
        self.assertEqual(len(names), 12)
        for name in names:
            problem = get_problem(name)
            self.assertEqual(problem.name, name)
            x = problem.solution_bounds.from_unit(np.full(problem.solution_dim, 0.5))
            theta = problem.task_bounds.from_unit(np.full(problem.task_dim, 0.5))
            self.assertTrue(np.isfinite(problem(x, theta)))

    def test_unknown_problem(self):
        with self.assertRaisesMessage(InvalidConfig, 'problem'):
            get_problem('levy-i')

    def test_override_constant(self):
        base = get_problem('sphere-i')
        scaled = get_problem('sphere-i', {'lam': 8.0})
        x, theta = np.zeros(4), np.zeros(5)
        self.assertAlmostEqual(scaled(x, theta), 4 * base(x, theta))

    def test_crane_override(self):
        heavy = get_problem('crane-load-i', {'m1': 5e4})
        self.assertEqual(heavy.constants['m1'], 5e4)

    def test_unknown_override(self):
        with self.assertRaises(InvalidConfig):
            get_problem('truss', {'lam': 3})

    def test_no_optimum_for_physical_problems(self):
        with self.assertRaises(Unsupported):
            known_optimum(get_problem('truss'), [2.0, 2.0, 1.0])

    def test_negated(self):
        problem = get_problem('sphere-i')
        x, theta = np.full(4, 0.2), np.full(5, 0.7)
        self.assertEqual(negated(problem)(x, theta), -problem(x, theta))

    def test_dimension_checked(self):
        with self.assertRaises(InvalidArgument):
            get_problem('sphere-i')(np.zeros(3), np.zeros(5))
