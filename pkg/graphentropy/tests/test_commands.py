import csv
import io
import math
import tempfile
from pathlib import Path

from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase
from pydantic import ValidationError

from graphentropy.entropy import closed_form_entropy
from graphentropy.exceptions import DomainError, GenerationError, NumericError, ResourceError
from graphentropy.generators import complete_graph, cycle_graph, generate, parse_generator_spec
from graphentropy.graph import parse_edge_list_text, read_edge_list, to_edge_list_text
from graphentropy.schemas import ClosedFormFamily, ExitCode, TauGrid
from graphentropy.services import GenerateService, SpectrumService, exit_code_for, one_line_message


def run(name, *args, **options):
    out = io.StringIO()
    call_command(name, *args, stdout=out, **options)
    return out.getvalue()


def csv_rows(text):
    return list(csv.reader(io.StringIO(text)))


class CommandTestCase(SimpleTestCase):
    def setUp(self):
        tmp = tempfile.TemporaryDirectory()
        self.addCleanup(tmp.cleanup)
        self.tmp = Path(tmp.name)

    def edge_file(self, name, text):
        path = self.tmp / name
        path.write_text(text, encoding='utf-8')
        return str(path)

    def assertExitCode(self, code, name, **options):
        with self.assertRaises(CommandError) as cm:
            run(name, **options)
        self.assertEqual(cm.exception.returncode, code)
        return str(cm.exception)


class SpectrumCommandTest(CommandTestCase):
    def eigenvalues(self, **options):
        rows = csv_rows(run('spectrum', **options))
        self.assertEqual(rows[0], ['eigenvalue'])
        return [float(row[0]) for row in rows[1:]]

    def test_complete_laplacian(self):
        values = self.eigenvalues(source='complete:n=4', kind='lap')
        for got, expected in zip(values, (4, 4, 4, 0)):
            self.assertAlmostEqual(got, expected, places=12)
        self.assertEqual(len(values), 4)

    def test_star_laplacian(self):
        values = self.eigenvalues(source='star:n1=3', kind='lap')
        for got, expected in zip(values, (4, 1, 1, 0)):
            self.assertAlmostEqual(got, expected, places=12)

    def test_edge_list_with_largest_component(self):
        path = self.edge_file('g.txt', "# two components\n0 1\n1 2\n\n7 9\n")
        self.assertEqual(len(self.eigenvalues(source=path, kind='lap')), 5)
        values = self.eigenvalues(source=path, kind='lap', lcc=True)
        for got, expected in zip(values, (3, 1, 0)):
            self.assertAlmostEqual(got, expected, places=12)

    def test_normalized_laplacian_needs_edges(self):
        message = self.assertExitCode(2, 'spectrum', source='empty:n=3', kind='nlap')
        self.assertIn('isolated', message)

    def test_unreadable_or_malformed_file(self):
        self.assertExitCode(2, 'spectrum', source=str(self.tmp / 'missing.txt'))
        path = self.edge_file('bad.txt', "0 1\n1 2 3\n")
        self.assertIn('line 2', self.assertExitCode(2, 'spectrum', source=path))

    def test_bad_generator_spec(self):
        self.assertExitCode(2, 'spectrum', source='er:n=10,p=2')

    def test_seed_out_of_range(self):
        message = self.assertExitCode(2, 'spectrum', source='er:n=5,p=0.5', seed=-1)
        self.assertIn('64-bit', message)

    def test_writes_file(self):
        out = self.tmp / 'eig.csv'
        self.assertEqual(run('spectrum', source='cycle:n=6', out=str(out)), '')
        self.assertEqual(out.read_text(encoding='utf-8'), run('spectrum', source='cycle:n=6'))


class SweepCommandTest(CommandTestCase):
    def test_deterministic_class(self):
        rows = csv_rows(run(
            'sweep', source='complete:n=5', kind='lap',
            tau_min=0.1, tau_max=10.0, tau_points=3, samples=2,
        ))
        self.assertEqual(rows[0], ['tau', 'entropy', 'entropy_over_logn', 'n', 'kind', 'ensemble_size'])
        self.assertEqual(len(rows), 4)
        taus = TauGrid.build(0.1, 10.0, 3).points
        for row, tau in zip(rows[1:], taus):
            self.assertEqual(float(row[0]), tau)
            expected = closed_form_entropy(ClosedFormFamily.COMPLETE_L, tau, 5)
            self.assertAlmostEqual(float(row[1]), expected, places=9)
            self.assertAlmostEqual(float(row[2]), expected / math.log(5), places=9)
            self.assertEqual(row[3:], ['5', 'lap', '2'])

    def test_output_is_reproducible(self):
        options = dict(
            source='er:n=30,p=0.2', kind='adj', tau_min=0.01, tau_max=100.0,
            tau_points=5, samples=3, seed=17,
        )
        first = run('sweep', **options)
        self.assertEqual(first, run('sweep', **options))
        self.assertEqual(first, run('sweep', workers=2, **options))
        out = self.tmp / 'curve.csv'
        run('sweep', out=str(out), **options)
        self.assertEqual(out.read_bytes(), first.encode('utf-8'))

    def test_linear_grid(self):
        rows = csv_rows(run(
            'sweep', source='cycle:n=8', tau_min=0.0, tau_max=2.0, tau_points=5, tau_log=False, samples=1,
        ))
        self.assertEqual([float(row[0]) for row in rows[1:]], [0.0, 0.5, 1.0, 1.5, 2.0])
        self.assertEqual(float(rows[1][1]), math.log(8))

    def test_file_source_gives_single_curve(self):
        path = self.edge_file('c.txt', to_edge_list_text(cycle_graph(6)))
        rows = csv_rows(run('sweep', source=path, tau_points=4, samples=5))
        self.assertTrue(all(row[3:] == ['6', 'lap', '1'] for row in rows[1:]))

    def test_matched_er_replicas(self):
        path = self.edge_file('c.txt', to_edge_list_text(cycle_graph(6)))
        rows = csv_rows(run('sweep', source=path, matched_er=True, tau_points=4, samples=3, seed=1))
        self.assertTrue(all(row[3:] == ['6', 'lap', '3'] for row in rows[1:]))

    def test_invalid_grids(self):
        self.assertExitCode(2, 'sweep', source='cycle:n=5', tau_min=0.0, tau_max=1.0, tau_points=3)
        self.assertExitCode(2, 'sweep', source='cycle:n=5', tau_min=2.0, tau_max=1.0, tau_points=3)
        self.assertExitCode(2, 'sweep', source='cycle:n=5', tau_points=0)
        self.assertExitCode(2, 'sweep', source='cycle:n=5', fraction=1.5)

    def test_no_usable_draws(self):
        self.assertExitCode(2, 'sweep', source='empty:n=4', kind='nlap', tau_points=3, samples=2)


class GenerateCommandTest(CommandTestCase):
    def test_edge_list_round_trip(self):
        text = run('generate', source='cycle:n=5')
        lines = text.splitlines()
        self.assertEqual(lines[:4], ['# n=5 m=5', '# vertices: 5', '# generator: cycle:n=5', '# seed: 0'])
        self.assertEqual(parse_edge_list_text(text), cycle_graph(5))

    def test_seeded_output_is_stable(self):
        first = run('generate', source='ba:n=30,m0=3,m=2', seed=4)
        self.assertEqual(first, run('generate', source='ba:n=30,m0=3,m=2', seed=4))
        self.assertIn('# seed: 4', first)
        self.assertIn('# n=30 m=57', first)

    def test_complete_graph_via_er(self):
        text = run('generate', source='er:n=6,p=1.0', seed=2)
        self.assertEqual(parse_edge_list_text(text), complete_graph(6))

    def test_written_graph_keeps_vertex_ids(self):
        spec = parse_generator_spec('er:n=40,p=0.05')
        text = run('generate', source='er:n=40,p=0.05', seed=11)
        path = self.edge_file('er.txt', text)
        self.assertEqual(read_edge_list(path), generate(spec, 11))
        self.assertEqual(
            run('spectrum', source=path, lcc=True, fraction=0.5),
            run('spectrum', source='er:n=40,p=0.05', seed=11, lcc=True, fraction=0.5),
        )

    def test_file_source_rejected(self):
        path = self.edge_file('g.txt', "0 1\n")
        self.assertExitCode(2, 'generate', source=path)

    def test_seed_out_of_range(self):
        self.assertExitCode(2, 'generate', source='er:n=5,p=0.5', seed=2 ** 64)
        self.assertExitCode(2, 'generate', source='ba:n=10,m0=2,m=2', seed=-3)


class OracleCheckCommandTest(CommandTestCase):
    def test_small_orders_pass(self):
        lines = run('oracle_check', max_n=16, taus='0.1,1,10').splitlines()
        self.assertFalse(any(line.startswith('FAILED') for line in lines))
        self.assertTrue(lines[-1].startswith('max discrepancy'))

    def test_zero_tau_is_exact(self):
        lines = run('oracle_check', max_n=8, taus='0').splitlines()
        self.assertTrue(lines[-1].startswith('max discrepancy 0.000e+00'))

    def test_classes_skipped_below_their_minimum_order(self):
        lines = run('oracle_check', max_n=1, taus='1').splitlines()
        skipped = [line for line in lines if line.startswith('skipped')]
        self.assertEqual(len(skipped), 3)
        for name in ('star', 'bipartite', 'cycle'):
            self.assertTrue(any(name in line for line in skipped), name)

    def test_usage_errors(self):
        self.assertExitCode(2, 'oracle_check', taus='a,b')
        self.assertExitCode(2, 'oracle_check', taus='-1')
        self.assertExitCode(2, 'oracle_check', max_n=0)


class BoundsCheckCommandTest(CommandTestCase):
    def test_small_run_passes(self):
        lines = run('bounds_check', samples=2, seed=1).splitlines()
        self.assertFalse(any(line.startswith('FAILED') for line in lines))
        self.assertTrue(lines[-1].endswith('0 violation(s)'))

    def test_samples_must_be_positive(self):
        self.assertExitCode(2, 'bounds_check', samples=0)


class ServiceErrorTest(SimpleTestCase):
    def test_exit_codes(self):
        self.assertEqual(exit_code_for(DomainError('x')), ExitCode.USAGE_ERROR)
        self.assertEqual(exit_code_for(GenerationError('x')), ExitCode.USAGE_ERROR)
        self.assertEqual(exit_code_for(NumericError('x')), ExitCode.NUMERIC_FAILURE)
        self.assertEqual(exit_code_for(ResourceError('x')), ExitCode.NUMERIC_FAILURE)
        with self.assertRaises(ValidationError) as cm:
            TauGrid(points=())
        self.assertEqual(exit_code_for(cm.exception), ExitCode.USAGE_ERROR)
        self.assertIn('at least one point', one_line_message(cm.exception))

    def test_failure_result(self):
        result = SpectrumService.compute('cycle:n=2', 'lap')
        self.assertFalse(result.success)
        self.assertIsNone(result.data)
        self.assertEqual(result.exit_code, ExitCode.USAGE_ERROR)
        self.assertTrue(result.message.startswith('spectrum: '))
        self.assertEqual(len(result.message.splitlines()), 1)

    def test_seed_errors_become_usage_errors(self):
        result = SpectrumService.compute('er:n=5,p=0.5', 'lap', seed=-1)
        self.assertEqual(result.exit_code, ExitCode.USAGE_ERROR)
        result = GenerateService.draw('er:n=5,p=0.5', seed=2 ** 64)
        self.assertEqual(result.exit_code, ExitCode.USAGE_ERROR)
        self.assertIsNone(result.data)

    def test_success_result(self):
        result = SpectrumService.compute('cycle:n=4', 'lap')
        self.assertTrue(result.success)
        self.assertEqual(result.exit_code, ExitCode.OK)
        self.assertEqual(len(result.data), 4)


class ProjectSettingsTest(SimpleTestCase):
    def test_no_web_or_orm_settings(self):
        self.assertEqual(settings.DATABASES, {})
        for name in ('ALLOWED_HOSTS', 'DEFAULT_AUTO_FIELD', 'ROOT_URLCONF', 'MIDDLEWARE'):
            self.assertFalse(settings.is_overridden(name), name)
