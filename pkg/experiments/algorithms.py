"""Independent per-task GP search, fixed-task PMTO and PMTO with a growing task pool"""
import logging
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from core.exceptions import InvalidConfig
from core.space import derive_seed, latin_hypercube
from evolution.engine import EaConfig
from evolution.pool import TaskPool
from evolution.task_evolution import evolve_task, random_task
from surrogates.acquisition import AcquisitionConfig, maximize_ucb
from surrogates.dataset import UnifiedDataset
from surrogates.gp import GpHyperparams, fit_hyperparams, fit_posterior
from surrogates.task_model import TaskModel, build_elite_set, filter_top_p, fit_task_model

from .trace import RunTrace

logger = logging.getLogger(__name__)

# seed streams
INIT_SOLUTIONS = 0
INIT_TASKS = 1
ACQUIRE = 2
EVOLVE = 3
RANDOM_TASKS = 4

EVOLVED = 'evolved'
RANDOM = 'random'


@dataclass(frozen=True)
class RunConfig:
    n_init: int = 200
    n_tot: int = 2000
    initial_tasks: int = 20
    beta: float = 1.0
    ea: EaConfig = field(default_factory=EaConfig)
    acquisition: AcquisitionConfig = field(default_factory=AcquisitionConfig)
    seed: int = 0
    epochs_initial: int = 500
    epochs_warm: int = 100
    learning_rate: float = 0.01
    top_p: float = 70.0

    def with_seed(self, seed):
        return replace(self, seed=seed)


def check_budget(n_init, n_tot, initial_tasks, fixed_tasks=True):
    """Raise ``InvalidConfig`` naming the offending key when budgets are inconsistent"""
    if initial_tasks < 1:
        raise InvalidConfig(f"initial_tasks: need at least one task, got {initial_tasks}")
    if not fixed_tasks and initial_tasks < 2:
        raise InvalidConfig("initial_tasks: a growing task pool needs at least 2 initial tasks")
    if n_init < initial_tasks:
        raise InvalidConfig(f"n_init: {n_init} leaves some of the {initial_tasks} tasks without a sample")
    if n_init > n_tot:
        raise InvalidConfig(f"n_init: {n_init} exceeds n_tot {n_tot}")
    if n_init % initial_tasks:
        raise InvalidConfig(f"n_init: {n_init} is not divisible by initial_tasks {initial_tasks}")
    if fixed_tasks and n_tot % initial_tasks:
        raise InvalidConfig(f"n_tot: {n_tot} is not divisible by initial_tasks {initial_tasks}")


@dataclass
class RunResult:
    trace: RunTrace
    elites: list
    tasks: np.ndarray
    task_model: Optional[TaskModel] = None
    dataset: Optional[UnifiedDataset] = None


def initial_tasks(problem, cfg):
    return latin_hypercube(problem.task_bounds, cfg.initial_tasks, derive_seed(cfg.seed, INIT_TASKS))


def _acquisition(cfg, *stream):
    return replace(cfg.acquisition, beta=cfg.beta, seed=derive_seed(cfg.seed, ACQUIRE, *stream))


class _Evaluator:
    """Charges true-objective calls against the global budget and logs them"""

    def __init__(self, problem, cfg):
        self.problem = problem
        self.budget = cfg.n_tot
        self.dataset = UnifiedDataset(problem.solution_bounds, problem.task_bounds)
        self.trace = RunTrace()

    @property
    def exhausted(self):
        return len(self.dataset) >= self.budget

    def __call__(self, iteration, task_id, theta, x):
        y = self.problem(x, theta)
        self.dataset.add(x, theta, y, task_id)
        self.trace.record(iteration, task_id, theta, x, y)
        return y

    def initialize(self, tasks, per_task, seed):
        for task_id, theta in enumerate(tasks):
            design = latin_hypercube(self.problem.solution_bounds, per_task, derive_seed(seed, INIT_SOLUTIONS, task_id))
            for x in design:
                self(0, task_id, theta, x)


def _fit_unified(evaluator, hyperparams, epochs, lr):
    training = evaluator.dataset.unified_training_set()
    if epochs > 0:
        hyperparams = fit_hyperparams(training, hyperparams, epochs, lr)
    return hyperparams, fit_posterior(training, hyperparams)


def _offline_task_model(elites, problem, cfg):
    if len(elites) < 2:
        return None
    return fit_task_model(elites, problem.solution_bounds, problem.task_bounds,
                          epochs=cfg.epochs_initial, lr=cfg.learning_rate)


def run_single_task_baseline(problem, tasks, cfg, with_task_model=False):
    """Independent GP-UCB search on each task with an equal share of the budget"""
    tasks = np.atleast_2d(np.asarray(tasks, dtype=float))
    m = len(tasks)
    check_budget(cfg.n_init, cfg.n_tot, m)
    per_task_init, per_task_total = cfg.n_init // m, cfg.n_tot // m
    evaluator = _Evaluator(problem, cfg)
    bounds = problem.solution_bounds

    for task_id, theta in enumerate(tasks):
        design = latin_hypercube(bounds, per_task_init, derive_seed(cfg.seed, INIT_SOLUTIONS, task_id))
        for x in design:
            evaluator(0, task_id, theta, x)
        if per_task_total == per_task_init:
            continue

        h, model = None, None
        for step in range(1, per_task_total - per_task_init + 1):
            training = evaluator.dataset.task_training_set(task_id)
            if h is None:
                h = fit_hyperparams(training, GpHyperparams.default(bounds.dim), cfg.epochs_initial, cfg.learning_rate)
            elif cfg.epochs_warm > 0:
                h = fit_hyperparams(training, h, cfg.epochs_warm, cfg.learning_rate)
            model = fit_posterior(training, h)
            x = maximize_ucb(model, None, bounds, _acquisition(cfg, task_id, step))
            evaluator(step, task_id, theta, x)
        logger.info("baseline task %d/%d done: best %.6g", task_id + 1, m, evaluator.trace.final_best()[task_id])

    elites = build_elite_set(evaluator.dataset, TaskPool(tasks, problem.task_bounds))
    model = _offline_task_model(elites, problem, cfg) if with_task_model else None
    return RunResult(evaluator.trace, elites, tasks, model, evaluator.dataset)


def _acquire_round(evaluator, model, h, pool, iteration, cfg):
    """One acquisition per pool task against the unified GP, re-factorized after each point"""
    for task_id, theta in enumerate(pool.thetas):
        if evaluator.exhausted:
            return model, False
        x = maximize_ucb(model, theta, evaluator.problem.solution_bounds, _acquisition(cfg, iteration, task_id))
        evaluator(iteration, task_id, theta, x)
        model = fit_posterior(evaluator.dataset.unified_training_set(), h)
    return model, True


def run_pmto_ft(problem, tasks, cfg, with_task_model=False):
    """Fixed task set sharing one GP over (x, theta)"""
    tasks = np.atleast_2d(np.asarray(tasks, dtype=float))
    m = len(tasks)
    check_budget(cfg.n_init, cfg.n_tot, m)
    evaluator = _Evaluator(problem, cfg)
    evaluator.initialize(tasks, cfg.n_init // m, cfg.seed)
    pool = TaskPool(tasks, problem.task_bounds)

    h, model = GpHyperparams.default(problem.solution_dim + problem.task_dim), None
    iteration = 0
    while not evaluator.exhausted:
        iteration += 1
        if model is None:
            h, model = _fit_unified(evaluator, h, cfg.epochs_initial, cfg.learning_rate)
        model, _ = _acquire_round(evaluator, model, h, pool, iteration, cfg)
        if not evaluator.exhausted and cfg.epochs_warm > 0:
            h, model = _fit_unified(evaluator, h, cfg.epochs_warm, cfg.learning_rate)
        logger.info("pmto-ft iteration %d: %d/%d evaluations", iteration, len(evaluator.dataset), cfg.n_tot)

    elites = build_elite_set(evaluator.dataset, pool)
    model = _offline_task_model(elites, problem, cfg) if with_task_model else None
    return RunResult(evaluator.trace, elites, tasks, model, evaluator.dataset)


def run_pmto(problem, cfg, task_source=EVOLVED):
    """Joint search over solutions and tasks, one new task per iteration; returns the online task model"""
    if task_source not in (EVOLVED, RANDOM):
        raise InvalidConfig(f"task_source: expected {EVOLVED!r} or {RANDOM!r}, got {task_source!r}")
    check_budget(cfg.n_init, cfg.n_tot, cfg.initial_tasks, fixed_tasks=False)
    evaluator = _Evaluator(problem, cfg)
    tasks = initial_tasks(problem, cfg)
    pool = TaskPool(tasks, problem.task_bounds)
    evaluator.initialize(tasks, cfg.n_init // cfg.initial_tasks, cfg.seed)
    rng = np.random.default_rng(derive_seed(cfg.seed, RANDOM_TASKS))

    h, model = GpHyperparams.default(problem.solution_dim + problem.task_dim), None
    elites = build_elite_set(evaluator.dataset, pool)
    task_model = fit_task_model(elites, problem.solution_bounds, problem.task_bounds,
                                epochs=cfg.epochs_initial, lr=cfg.learning_rate)

    iteration = 0
    while not evaluator.exhausted:
        iteration += 1
        if model is None:
            h, model = _fit_unified(evaluator, h, cfg.epochs_initial, cfg.learning_rate)
        if task_source == EVOLVED:
            theta_new = evolve_task(pool, task_model, problem.task_bounds,
                                    cfg.ea.with_seed(derive_seed(cfg.seed, EVOLVE, iteration)))
        else:
            theta_new = random_task(problem.task_bounds, rng)
        new_id = pool.add(theta_new)

        model, completed = _acquire_round(evaluator, model, h, pool, iteration, cfg)
        if not completed:
            if evaluator.dataset.count_for_task(new_id) == 0:
                pool.remove_last()
            break
        elites = build_elite_set(evaluator.dataset, pool)
        if evaluator.exhausted:
            break
        if cfg.epochs_warm > 0:
            h, model = _fit_unified(evaluator, h, cfg.epochs_warm, cfg.learning_rate)
        task_model = fit_task_model(elites, problem.solution_bounds, problem.task_bounds,
                                    hyperparams=task_model.hyperparams, epochs=cfg.epochs_warm, lr=cfg.learning_rate)
        logger.info("pmto iteration %d: pool %d, %d/%d evaluations",
                    iteration, len(pool), len(evaluator.dataset), cfg.n_tot)

    elites = build_elite_set(evaluator.dataset, pool)
    top = filter_top_p(elites, cfg.top_p)
    if len(top) < 2:
        top = sorted(elites, key=lambda r: r.best_y)[:2]
    online = fit_task_model(top, problem.solution_bounds, problem.task_bounds,
                            hyperparams=task_model.hyperparams, epochs=cfg.epochs_warm, lr=cfg.learning_rate)
    return RunResult(evaluator.trace, elites, pool.as_array(), online, evaluator.dataset)


ALGORITHMS = ('baseline', 'pmto-ft', 'pmto', 'pmto-rt')


def run_algorithm(name, problem, cfg):
    """Dispatch by algorithm name; fixed-task methods also get an offline task model"""
    if name == 'baseline':
        return run_single_task_baseline(problem, initial_tasks(problem, cfg), cfg, with_task_model=True)
    if name == 'pmto-ft':
        return run_pmto_ft(problem, initial_tasks(problem, cfg), cfg, with_task_model=True)
    if name == 'pmto':
        return run_pmto(problem, cfg, EVOLVED)
    if name == 'pmto-rt':
        return run_pmto(problem, cfg, RANDOM)
    raise InvalidConfig(f"algorithm: unknown algorithm {name!r}; choose one of {', '.join(ALGORITHMS)}")
