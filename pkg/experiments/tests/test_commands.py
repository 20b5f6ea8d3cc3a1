import csv
import json
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from experiments.persistence import load_task_model

from .helpers import SMALL_SETTINGS


def read_rows(path):
    with path.open(newline='') as f:
        return list(csv.DictReader(f))


class RunCommandTests(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.out = Path(self.tmp.name) / 'run'

    def tearDown(self):
        self.tmp.cleanup()

    def run_command(self, out=None, settings=SMALL_SETTINGS, **options):
        stdout = StringIO()
        call_command('run', problem='sphere-i', out=str(out or self.out), assignments=settings,
                     stdout=stdout, **options)
        return stdout.getvalue()

    def test_writes_result_files(self):
        output = self.run_command()
        self.assertIn('Results written to', output)
        for name in ('trace_trial0.csv', 'regret_trial0.csv', 'taskmodel_trial0.json',
                     'quantiles.csv', 'quantiles_per_trial.csv', 'manifest.json'):
            self.assertTrue((self.out / name).exists(), name)

        trace = read_rows(self.out / 'trace_trial0.csv')
        self.assertEqual(len(trace), 10)
        self.assertEqual(trace[-1]['cum_evals'], '10')
        self.assertEqual(len(read_rows(self.out / 'quantiles.csv')), 5)

        manifest = json.loads((self.out / 'manifest.json').read_text())
        self.assertEqual(manifest['command'], 'run')
        self.assertEqual(manifest['problem']['name'], 'sphere-i')
        self.assertEqual(manifest['config']['n_tot'], 10)
        self.assertEqual(manifest['trials'][0]['evaluations'], 10)

        model, data = load_task_model(self.out / 'taskmodel_trial0.json')
        self.assertEqual(data['problem'], 'sphere-i')
        self.assertEqual(model.solution_dim, 4)

    def test_reruns_are_byte_identical(self):
        self.run_command()
        other = Path(self.tmp.name) / 'again'
        self.run_command(out=other)
        for name in ('trace_trial0.csv', 'quantiles.csv', 'taskmodel_trial0.json'):
            self.assertEqual((self.out / name).read_bytes(), (other / name).read_bytes(), name)

    def test_refuses_to_overwrite(self):
        self.run_command()
        with self.assertRaises(CommandError):
            self.run_command()
        self.run_command(force=True)

    def test_invalid_config(self):
        with self.assertRaisesRegex(CommandError, '^n_init:'):
            self.run_command(algorithm='baseline', settings=SMALL_SETTINGS + ['n_init=3'])

    def test_evaluate_saved_model(self):
        self.run_command()
        stdout = StringIO()
        call_command('evaluate', str(self.out / 'taskmodel_trial0.json'), size=8, stdout=stdout)
        self.assertIn('sphere-i: 8 tasks', stdout.getvalue())

    def test_evaluate_rejects_mismatched_problem(self):
        self.run_command()
        with self.assertRaises(CommandError):
            call_command('evaluate', str(self.out / 'taskmodel_trial0.json'), problem='truss', stdout=StringIO())


class MinimaxCommandTests(SimpleTestCase):
    def test_writes_robustness_table(self):
        with tempfile.TemporaryDirectory() as tmp:
            out = Path(tmp) / 'mm'
            settings = SMALL_SETTINGS + ['minimax.split=0.5', 'minimax.n_errors=5']
            call_command('minimax', out=str(out), budget=40, assignments=settings, stdout=StringIO())
            rows = read_rows(out / 'robustness.csv')
            manifest = json.loads((out / 'manifest.json').read_text())
        self.assertEqual(len(rows), 10)
        self.assertEqual({r['design'] for r in rows}, {'robust', 'nominal'})
        self.assertEqual(manifest['evaluation_split']['pmto'], 20)
        self.assertEqual(manifest['evaluation_split']['nominal'], 18)

    def test_rejects_other_problems(self):
        with tempfile.TemporaryDirectory() as tmp:
            with self.assertRaisesRegex(CommandError, '^problem:'):
                call_command('minimax', out=str(Path(tmp) / 'mm'), problem='sphere-i', stdout=StringIO())


class ListProblemsTests(SimpleTestCase):
    def test_lists_every_benchmark(self):
        stdout = StringIO()
        call_command('list_problems', stdout=stdout)
        self.assertEqual(len(stdout.getvalue().strip().splitlines()), 12)
