"""Experiment configuration: PMTO_SETTINGS defaults, a JSON file, then ``--set`` overrides"""
import copy
import json
from pathlib import Path

from django.conf import settings
from rest_framework import serializers

from core.exceptions import InvalidConfig
from evolution.engine import EaConfig
from surrogates.acquisition import AcquisitionConfig

from .algorithms import RunConfig
from .serializers import ExperimentConfigSerializer


def default_config():
    s = settings.PMTO_SETTINGS
    return {
        'problem': None,
        'algorithm': 'pmto',
        'n_init': s['N_INIT'],
        'n_tot': s['N_TOT'],
        'initial_tasks': s['INITIAL_TASKS'],
        'beta': s['BETA'],
        'top_p': s['TOP_P'],
        'trials': s['TRIALS'],
        'seed': s['SEED'],
        'epochs_initial': s['GP_EPOCHS_INITIAL'],
        'epochs_warm': s['GP_EPOCHS_WARM'],
        'learning_rate': s['GP_LEARNING_RATE'],
        'problem_overrides': {},
        'ea': {
            'population_size': s['EA_POPULATION'],
            'generations': s['EA_GENERATIONS'],
            'eta_c': s['SBX_ETA'],
            'eta_m': s['PM_ETA'],
            'p_c': s['SBX_PROB'],
            'p_m': s['PM_PROB'],
        },
        'acquisition': {
            'candidate_count': s['ACQ_CANDIDATES'],
            'refine_steps': s['ACQ_REFINE_STEPS'],
        },
        'grid': {
            'size': None,
            'sizes': {str(k): v for k, v in s['EVAL_GRID_SIZES'].items()},
            'default_size': s['EVAL_GRID_DEFAULT'],
            'seed': s['EVAL_GRID_SEED'],
        },
        'minimax': {
            'budget': s['MINIMAX_BUDGET'],
            'split': s['MINIMAX_SPLIT'],
            'n_errors': s['ROBUSTNESS_ERRORS'],
        },
    }


def merge(base, override):
    """Recursive dict merge; ``override`` wins on leaves"""
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def parse_assignment(text):
    """``a.b=value`` -> nested dict; the value is JSON when it parses, else a string"""
    key, sep, raw = text.partition('=')
    if not sep or not key.strip():
        raise InvalidConfig(f"--set: expected KEY=VALUE, got {text!r}")
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    nested = value
    for part in reversed(key.strip().split('.')):
        nested = {part: nested}
    return nested


def load_config_file(path):
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding='utf-8'))
    except FileNotFoundError:
        raise InvalidConfig(f"config: no such file {path}")
    except json.JSONDecodeError as exc:
        raise InvalidConfig(f"config: {path} is not valid JSON ({exc})")
    if not isinstance(data, dict):
        raise InvalidConfig(f"config: {path} must hold a JSON object")
    return data


def _first_error(detail, prefix=''):
    if isinstance(detail, dict):
        key, value = next(iter(detail.items()))
        name = key if key != 'non_field_errors' else ''
        return _first_error(value, f"{prefix}.{name}" if prefix and name else prefix or name)
    if isinstance(detail, list) and detail:
        return _first_error(detail[0], prefix)
    return prefix, str(detail)


def build_config(path=None, assignments=(), **cli):
    """Validated experiment configuration; ``InvalidConfig`` messages start with the offending key"""
    config = default_config()
    if path:
        config = merge(config, load_config_file(path))
    for assignment in assignments:
        config = merge(config, parse_assignment(assignment))
    config = merge(config, {k: v for k, v in cli.items() if v is not None})

    serializer = ExperimentConfigSerializer(data=config)
    try:
        serializer.is_valid(raise_exception=True)
    except serializers.ValidationError as exc:
        key, message = _first_error(exc.detail)
        raise InvalidConfig(f"{key}: {message}")
    return _plain(serializer.validated_data)


def _plain(data):
    if isinstance(data, dict):
        return {k: _plain(v) for k, v in data.items()}
    if isinstance(data, list):
        return [_plain(v) for v in data]
    return data


def run_config(config, seed=None):
    ea = config['ea']
    return RunConfig(
        n_init=config['n_init'],
        n_tot=config['n_tot'],
        initial_tasks=config['initial_tasks'],
        beta=config['beta'],
        ea=EaConfig(ea['population_size'], ea['generations'], ea['eta_c'], ea['eta_m'], ea['p_c'], ea['p_m']),
        acquisition=AcquisitionConfig(
            beta=config['beta'],
            candidate_count=config['acquisition']['candidate_count'],
            refine_steps=config['acquisition']['refine_steps'],
        ),
        seed=config['seed'] if seed is None else seed,
        epochs_initial=config['epochs_initial'],
        epochs_warm=config['epochs_warm'],
        learning_rate=config['learning_rate'],
        top_p=config['top_p'],
    )


def trial_seed(config, trial):
    return config['seed'] + trial
