from django.core.management.base import BaseCommand, CommandError
from rest_framework import serializers

from benchmarks.registry import get_problem
from core.exceptions import PmtoError

from experiments.evaluation import DEFAULT_ALPHAS, make_grid, quantiles, evaluate_task_model
from experiments.persistence import load_task_model


class Command(BaseCommand):
    help = 'Score a saved task model on a fresh quasi-random task sample'

    def add_arguments(self, parser):
        parser.add_argument('model', help='taskmodel_trial*.json written by the run command')
        parser.add_argument('--problem', help='Benchmark name; defaults to the one stored with the model')
        parser.add_argument('--size', type=int, default=1000, help='Number of sampled tasks')
        parser.add_argument('--seed', type=int, default=0, help='Sobol scrambling seed')

    def handle(self, *args, **options):
        if options['size'] < 1:
            raise CommandError(f"size: need at least one task, got {options['size']}")
        try:
            model, data = load_task_model(options['model'])
            name = options['problem'] or data.get('problem')
            if not name:
                raise CommandError('problem: the model file names no problem; pass --problem')
            problem = get_problem(name)
            grid = make_grid(problem.task_bounds, options['size'], options['seed'])
            values = quantiles(evaluate_task_model(model, problem, grid))
        except FileNotFoundError as exc:
            raise CommandError(f"model: no such file {exc.filename}")
        except serializers.ValidationError as exc:
            raise CommandError(f"model: {exc.detail}")
        except PmtoError as exc:
            raise CommandError(str(exc))

        self.stdout.write(f"{problem.name}: {grid.size} tasks")
        for alpha, value in zip(DEFAULT_ALPHAS, values):
            self.stdout.write(f"  q{alpha:.2f}: {value:.6g}")
        self.stdout.write(self.style.SUCCESS('Evaluation complete'))
