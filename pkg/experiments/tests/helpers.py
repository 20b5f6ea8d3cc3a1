from evolution.engine import EaConfig
from experiments.algorithms import RunConfig
from surrogates.acquisition import AcquisitionConfig


def small_run_config(**overrides):
    """Settings small enough for a unit test: two tasks, ten evaluations"""
    values = {
        'n_init': 4,
        'n_tot': 10,
        'initial_tasks': 2,
        'ea': EaConfig(population_size=6, generations=2),
        'acquisition': AcquisitionConfig(candidate_count=32, refine_steps=2),
        'epochs_initial': 3,
        'epochs_warm': 1,
    }
    values.update(overrides)
    return RunConfig(**values)


def desk_run_config(**overrides):
    """Desk scale: ten initial tasks, 100 initial and 400 total evaluations"""
    values = {
        'n_init': 100,
        'n_tot': 400,
        'initial_tasks': 10,
        'ea': EaConfig(population_size=20, generations=10),
        'acquisition': AcquisitionConfig(candidate_count=256, refine_steps=4),
        'epochs_initial': 100,
        'epochs_warm': 20,
    }
    values.update(overrides)
    return RunConfig(**values)


SMALL_SETTINGS = [
    'n_init=4', 'n_tot=10', 'initial_tasks=2', 'trials=1',
    'ea.population_size=6', 'ea.generations=2',
    'acquisition.candidate_count=32', 'acquisition.refine_steps=2',
    'epochs_initial=3', 'epochs_warm=1', 'grid.size=16',
]
