"""Files written by experiment commands.

CSV floats use 17 significant digits so re-runs with the same seed produce
byte-identical files.
"""
import csv
import logging
import subprocess
from pathlib import Path

from django.conf import settings
from rest_framework.parsers import JSONParser
from rest_framework.renderers import JSONRenderer

import pmto_lab
from surrogates.task_model import TaskModel

from .serializers import ManifestSerializer, TaskModelSerializer

logger = logging.getLogger(__name__)


def fmt(value):
    return format(float(value), '.17g')


def _write_csv(path, header, rows):
    path = Path(path)
    with path.open('w', encoding='utf-8', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(header)
        writer.writerows(rows)
    logger.debug("wrote %s", path)
    return path


def write_json(path, data):
    path = Path(path)
    path.write_bytes(JSONRenderer().render(data, renderer_context={'indent': 2}) + b'\n')
    return path


def read_json(path):
    with Path(path).open('rb') as f:
        return JSONParser().parse(f)


def write_trace(path, trace, solution_dim, task_dim):
    header = (['iter', 'task_id'] + [f"theta{i}" for i in range(task_dim)]
              + [f"x{i}" for i in range(solution_dim)] + ['y', 'best_so_far', 'cum_evals'])
    rows = (
        [r.iteration, r.task_id, *map(fmt, r.theta), *map(fmt, r.x), fmt(r.y), fmt(r.best_so_far), r.cum_evals]
        for r in trace.rows
    )
    return _write_csv(path, header, rows)


def write_regret(path, curves):
    rows = []
    for task_id, curve in sorted(curves.items()):
        for step, (r, total) in enumerate(zip(curve.instantaneous, curve.cumulative), start=1):
            rows.append([task_id, step, fmt(r), fmt(total)])
    return _write_csv(path, ['task_id', 'step', 'regret', 'cumulative_regret'], rows)


def write_quantiles(path, entries):
    """``entries`` are ``(problem, algorithm, seed, QuantileReport)`` tuples"""
    rows = []
    for problem, algorithm, seed, report in entries:
        for alpha, mean, std in report.rows():
            rows.append([problem, algorithm, fmt(alpha), fmt(mean), fmt(std),
                         report.trial_count, report.sample_count, seed])
    return _write_csv(path, ['problem', 'algorithm', 'alpha', 'mean', 'std', 'U', 'K', 'seed'], rows)


def write_quantiles_per_trial(path, problem, algorithm, seeds, report):
    rows = []
    for trial, (seed, values) in enumerate(zip(seeds, report.per_trial)):
        for alpha, value in zip(report.alphas, values):
            rows.append([problem, algorithm, trial, seed, fmt(alpha), fmt(value)])
    return _write_csv(path, ['problem', 'algorithm', 'trial', 'seed', 'alpha', 'value'], rows)


def write_robustness(path, designs):
    """``designs`` maps a label to a ``RobustnessSummary``"""
    rows = []
    for label, summary in designs.items():
        for j, (error, value) in enumerate(zip(summary.errors, summary.values)):
            rows.append([label, j, *map(fmt, summary.theta), *map(fmt, error), fmt(value)])
    first = next(iter(designs.values()))
    header = (['design', 'error_id'] + [f"theta{i}" for i in range(first.theta.shape[0])]
              + [f"x{i}" for i in range(first.errors.shape[1])] + ['value'])
    return _write_csv(path, header, rows)


def save_task_model(path, model, **meta):
    data = dict(model.to_dict(), **meta)
    return write_json(path, TaskModelSerializer(data).data)


def load_task_model(path):
    serializer = TaskModelSerializer(data=read_json(path))
    serializer.is_valid(raise_exception=True)
    return TaskModel.from_dict(serializer.validated_data), serializer.validated_data


def git_revision():
    try:
        out = subprocess.run(['git', 'rev-parse', 'HEAD'], cwd=settings.BASE_DIR,
                             capture_output=True, text=True, timeout=5)
    except (OSError, subprocess.SubprocessError):
        return None
    if out.returncode != 0:
        return None
    return out.stdout.strip() or None


def write_manifest(path, command, config, started_at, wall_time, problem=None, trials=None,
                   evaluation_split=None):
    data = {
        'command': command,
        'version': pmto_lab.__version__,
        'git_revision': git_revision(),
        'started_at': started_at,
        'wall_time_seconds': wall_time,
        'config': config,
    }
    if problem is not None:
        data['problem'] = problem.to_dict()
    if trials is not None:
        data['trials'] = trials
    if evaluation_split is not None:
        data['evaluation_split'] = evaluation_split
    return write_json(path, ManifestSerializer(data).data)


def prepare_output(directory, force):
    """Create the output directory; refuse to overwrite existing results unless ``force``"""
    directory = Path(directory)
    if directory.exists() and any(directory.iterdir()) and not force:
        raise FileExistsError(f"{directory} already holds results; pass --force to overwrite")
    directory.mkdir(parents=True, exist_ok=True)
    return directory
