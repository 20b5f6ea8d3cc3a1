from django.core.management.base import BaseCommand

from benchmarks.registry import get_problem, problem_names


def _box(box):
    return ' x '.join(f"[{lo:g}, {hi:g}]" for lo, hi in zip(box.lower, box.upper))


class Command(BaseCommand):
    help = 'List the registered benchmark problems with their dimensions and bounds'

    def add_arguments(self, parser):
        parser.add_argument('--verbose-bounds', action='store_true', help='Also print solution and task boxes')

    def handle(self, *args, **options):
        for name in problem_names():
            problem = get_problem(name)
            self.stdout.write(f"{name:15s} V={problem.solution_dim} D={problem.task_dim}  {problem.description}")
            if options['verbose_bounds']:
                self.stdout.write(f"    x in {_box(problem.solution_bounds)}")
                self.stdout.write(f"    theta in {_box(problem.task_bounds)}")
