from django.core.management.base import CommandError
from rest_framework import serializers

from core.exceptions import PmtoError

from experiments.config import build_config
from experiments.persistence import prepare_output


def add_config_arguments(parser):
    parser.add_argument('--config', help='JSON file with experiment settings')
    parser.add_argument('--set', dest='assignments', action='append', default=[], metavar='KEY=VALUE',
                        help='Override one setting, e.g. --set ea.population_size=50 (repeatable)')
    parser.add_argument('--problem', help='Benchmark name (see list_problems)')
    parser.add_argument('--seed', type=int, help='Base seed; trial u uses seed + u')
    parser.add_argument('--out', required=True, help='Output directory')
    parser.add_argument('--force', action='store_true', help='Overwrite an output directory that holds results')


def load_options(options, **extra):
    """Validated config and output directory, or ``CommandError``"""
    try:
        config = build_config(options['config'], options['assignments'], problem=options['problem'],
                              seed=options['seed'], **extra)
        out_dir = prepare_output(options['out'], options['force'])
    except (PmtoError, FileExistsError) as exc:
        raise CommandError(str(exc))
    return config, out_dir


def command_errors(exc):
    if isinstance(exc, serializers.ValidationError):
        return CommandError(f"invalid data: {exc.detail}")
    return CommandError(str(exc))
