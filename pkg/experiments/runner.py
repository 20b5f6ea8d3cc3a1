"""Trial loops behind the ``run`` and ``minimax`` commands"""
import logging
import time
from dataclasses import replace

import numpy as np
from django.utils import timezone

from benchmarks.registry import get_problem
from benchmarks.problems import known_optimum
from core.exceptions import InvalidConfig

from . import persistence
from .algorithms import run_algorithm
from .config import run_config, trial_seed
from .evaluation import (
    DEFAULT_ALPHAS, aggregate_trials, assess_robustness, evaluate_task_model, grid_size_for, make_grid, quantiles,
)
from .minimax import nominal_design, search_configs, solve_minimax
from .signals import trial_completed
from .trace import compute_regret

logger = logging.getLogger(__name__)


def evaluation_grid(config, problem):
    grid = config['grid']
    size = grid['size'] or grid_size_for(problem.task_dim, grid['sizes'], grid['default_size'])
    return make_grid(problem.task_bounds, size, grid['seed'])


def _optima(problem, result):
    if problem.known_optimum is None:
        return None
    return {task_id: known_optimum(problem, theta)[1] for task_id, theta in enumerate(result.tasks)}


def run_experiment(config, out_dir, trial_seeds=None):
    """Run every trial of ``config`` into ``out_dir``; returns the aggregated ``QuantileReport``"""
    started_at, clock = timezone.now(), time.monotonic()
    problem = get_problem(config['problem'], config['problem_overrides'])
    algorithm = config['algorithm']
    grid = evaluation_grid(config, problem)
    seeds = trial_seeds or [trial_seed(config, u) for u in range(config['trials'])]

    per_trial, summaries = [], []
    for u, seed in enumerate(seeds):
        result = run_algorithm(algorithm, problem, run_config(config, seed))
        files = []
        files.append(persistence.write_trace(out_dir / f"trace_trial{u}.csv", result.trace,
                                             problem.solution_dim, problem.task_dim).name)
        optima = _optima(problem, result)
        if optima:
            files.append(persistence.write_regret(out_dir / f"regret_trial{u}.csv",
                                                  compute_regret(result.trace, optima)).name)
        q = None
        if result.task_model is not None:
            files.append(persistence.save_task_model(out_dir / f"taskmodel_trial{u}.json", result.task_model,
                                                     problem=problem.name, algorithm=algorithm).name)
            q = quantiles(evaluate_task_model(result.task_model, problem, grid))
            per_trial.append(q)
        summaries.append({'trial': u, 'seed': seed, 'evaluations': len(result.trace),
                          'pool_size': len(result.tasks), 'files': files})
        trial_completed.send(sender=run_experiment, problem=problem.name, algorithm=algorithm, trial=u,
                             seed=seed, evaluations=len(result.trace), quantiles=q)

    report = None
    if per_trial:
        report = aggregate_trials(per_trial, DEFAULT_ALPHAS, grid.size)
        persistence.write_quantiles(out_dir / 'quantiles.csv', [(problem.name, algorithm, config['seed'], report)])
        persistence.write_quantiles_per_trial(out_dir / 'quantiles_per_trial.csv', problem.name, algorithm,
                                              seeds, report)
    persistence.write_manifest(out_dir / 'manifest.json', 'run', config, started_at,
                               time.monotonic() - clock, problem=problem, trials=summaries)
    return report


def compare_designs(problem, cfg, budget, split, n_errors):
    """Robust and nominal designs on matched total budgets, scored on the same random errors"""
    pmto_budget = int(round(split * budget))
    pmto_cfg = replace(cfg, n_tot=pmto_budget, n_init=min(cfg.n_init, pmto_budget))
    outer, nominal_ea = search_configs(cfg.ea, cfg.seed)

    robust = solve_minimax(problem, pmto_cfg, outer, budget - pmto_budget)
    nominal = nominal_design(problem, nominal_ea, budget)
    designs = {
        'robust': assess_robustness(robust.theta, problem, n_errors, cfg.seed),
        'nominal': assess_robustness(nominal.theta, problem, n_errors, cfg.seed),
    }
    return robust, nominal, designs


def run_minimax(config, out_dir):
    """Robust design, nominal design, and their robustness over random processing errors"""
    started_at, clock = timezone.now(), time.monotonic()
    if config['problem'] != 'truss':
        raise InvalidConfig(f"problem: minimax needs the truss problem, got {config['problem']!r}")
    problem = get_problem(config['problem'], config['problem_overrides'])
    mm = config['minimax']
    robust, nominal, designs = compare_designs(problem, run_config(config), mm['budget'], mm['split'],
                                               mm['n_errors'])
    persistence.write_robustness(out_dir / 'robustness.csv', designs)
    persistence.save_task_model(out_dir / 'taskmodel_minimax.json', robust.task_model,
                                problem=problem.name, algorithm='pmto-minimax')
    split = {
        'pmto': robust.pmto_evaluations,
        'outer': robust.outer_evaluations,
        'nominal': nominal.outer_evaluations,
    }
    persistence.write_manifest(out_dir / 'manifest.json', 'minimax', config, started_at,
                               time.monotonic() - clock, problem=problem, evaluation_split=split)
    for label, summary in designs.items():
        logger.info("%s design %s: worst sampled value %.6g", label, np.round(summary.theta, 4), summary.worst)
    return robust, nominal, designs
