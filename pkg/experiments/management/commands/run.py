from django.core.management.base import BaseCommand
from rest_framework import serializers

from core.exceptions import PmtoError

from experiments.algorithms import ALGORITHMS
from experiments.runner import run_experiment

from ._options import add_config_arguments, command_errors, load_options


class Command(BaseCommand):
    help = 'Run one optimization algorithm on a benchmark for several trials and score its task model'

    def add_arguments(self, parser):
        add_config_arguments(parser)
        parser.add_argument('--algorithm', choices=ALGORITHMS, help='Optimization procedure (default pmto)')
        parser.add_argument('--trials', type=int, help='Number of independent trials')

    def handle(self, *args, **options):
        config, out_dir = load_options(options, algorithm=options['algorithm'], trials=options['trials'])
        self.stdout.write(f"Running {config['algorithm']} on {config['problem']} "
                          f"({config['trials']} trials, {config['n_tot']} evaluations each)")
        try:
            report = run_experiment(config, out_dir)
        except (PmtoError, serializers.ValidationError) as exc:
            raise command_errors(exc)

        if report is not None:
            for alpha, mean, std in report.rows():
                self.stdout.write(f"  q{alpha:.2f}: {mean:.6g} +/- {std:.3g}")
        self.stdout.write(self.style.SUCCESS(f"Results written to {out_dir}"))
