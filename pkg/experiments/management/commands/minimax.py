from django.core.management.base import BaseCommand
from rest_framework import serializers

from core.exceptions import PmtoError

from experiments.runner import run_minimax

from ._options import add_config_arguments, command_errors, load_options


class Command(BaseCommand):
    help = 'Find a truss design robust to processing errors and compare it with the nominal design'

    def add_arguments(self, parser):
        add_config_arguments(parser)
        parser.add_argument('--budget', type=int, help='Total true-objective evaluations for the robust design')

    def handle(self, *args, **options):
        extra = {'algorithm': 'pmto'}
        if options['budget'] is not None:
            extra['minimax'] = {'budget': options['budget']}
        if options['problem'] is None:
            options['problem'] = 'truss'
        config, out_dir = load_options(options, **extra)
        try:
            robust, nominal, designs = run_minimax(config, out_dir)
        except (PmtoError, serializers.ValidationError) as exc:
            raise command_errors(exc)

        for label, summary in designs.items():
            stats = summary.summary()
            self.stdout.write(f"  {label:8s} worst {stats['max']:.6g}  median {stats['q50']:.6g}")
        self.stdout.write(self.style.SUCCESS(f"Results written to {out_dir}"))
