import numpy as np
from django.test import SimpleTestCase, tag

from benchmarks.registry import get_problem
from core.exceptions import InvalidConfig
from evolution.engine import EaConfig
from experiments.minimax import nominal_design, search_configs, solve_minimax
from experiments.runner import compare_designs

from .helpers import desk_run_config, small_run_config


class MinimaxTests(SimpleTestCase):
    def setUp(self):
        self.problem = get_problem('truss')
        self.outer = EaConfig(population_size=6, generations=3)

    def test_outer_budget_too_small(self):
        with self.assertRaises(InvalidConfig) as ctx:
            solve_minimax(self.problem, small_run_config(n_tot=20), self.outer, 11)
        self.assertTrue(str(ctx.exception).startswith('minimax.budget:'))

    def test_robust_design_inside_design_box(self):
        result = solve_minimax(self.problem, small_run_config(n_tot=20), self.outer, 20)
        self.assertTrue(self.problem.task_bounds.contains(result.theta, tol=1e-12))
        self.assertEqual(result.pmto_evaluations, 20)
        # generations capped at 20 // 6 - 1
        self.assertEqual(result.outer_evaluations, 18)
        self.assertEqual(result.task_model.task_dim, 3)

    def test_outer_history_never_worsens(self):
        result = solve_minimax(self.problem, small_run_config(n_tot=20), self.outer, 30)
        self.assertTrue(all(b <= a + 1e-12 for a, b in zip(result.history, result.history[1:])))

    def test_nominal_design_evaluates_without_error(self):
        result = nominal_design(self.problem, self.outer, 24)
        self.assertAlmostEqual(result.value, self.problem(np.zeros(3), result.theta))
        self.assertEqual(result.pmto_evaluations, 0)

    def test_search_seeds_follow_run_seed(self):
        outer_a, nominal_a = search_configs(self.outer, 0)
        outer_b, nominal_b = search_configs(self.outer, 1)
        self.assertNotEqual(outer_a.seed, outer_b.seed)
        self.assertNotEqual(nominal_a.seed, nominal_b.seed)
        self.assertNotEqual(outer_a.seed, nominal_a.seed)
        self.assertEqual(search_configs(self.outer, 1), (outer_b, nominal_b))

    def test_different_seeds_give_different_searches(self):
        populations = [nominal_design(self.problem, search_configs(self.outer, seed)[1], 24).population
                       for seed in (0, 1)]
        self.assertFalse(np.allclose(populations[0], populations[1]))

        robust = [solve_minimax(self.problem, small_run_config(n_tot=20, seed=seed),
                                search_configs(self.outer, seed)[0], 20).population for seed in (0, 1)]
        self.assertFalse(np.allclose(robust[0], robust[1]))

    def test_compare_designs_splits_budget(self):
        robust, nominal, designs = compare_designs(self.problem, small_run_config(ea=self.outer), 40, 0.5, 10)
        self.assertEqual(robust.pmto_evaluations, 20)
        self.assertEqual(robust.outer_evaluations, 18)
        self.assertEqual(nominal.outer_evaluations, 24)
        # both designs are scored on the same errors
        np.testing.assert_array_equal(designs['robust'].errors, designs['nominal'].errors)


@tag('slow')
class RobustDesignDeskTests(SimpleTestCase):
    """Robust versus nominal truss design at desk scale"""

    def test_robust_worst_case_no_worse_than_nominal(self):
        problem = get_problem('truss')
        wins = 0
        for seed in range(5):
            cfg = desk_run_config(seed=seed)
            _, _, designs = compare_designs(problem, cfg, 1000, 0.7, 800)
            wins += designs['robust'].worst <= designs['nominal'].worst
        self.assertGreaterEqual(wins, 4)
