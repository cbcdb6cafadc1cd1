# -*- coding: utf-8 -*-

try:
    from unittest.mock import patch
except ImportError:
    from mock import patch

import json
import os
import shutil
import tempfile
import unittest

from six import StringIO

from .context import console, corpus, exceptions


def arguments(command, project, *targets, **options):
    values = {
        '<command>': command,
        '<project>': corpus(project),
        '<target>': list(targets),
        '--seed': '0',
        '--max-gb-steps': None,
        '--max-saturation-iters': None,
        '--output': 'text',
        '--report': None,
        '--charts': 'all',
        '--stratification': None,
        '--probe': [],
        '--mode': 'generically-finite',
        '--chow': None,
        '--parallel': False,
        '--with-timing': False,
        '--raise': False,
        '--verbose': False,
    }
    for key, value in options.items():
        values['--' + key.replace('_', '-')] = value
    return values


class ConsoleTestSuite(unittest.TestCase):

    @patch('trimcc.console.docopt')
    @patch('sys.stdout', new_callable=StringIO)
    def test_main(self, stdout, docopt):
        docopt.return_value = arguments(
            'stringy-euler', 'conifold.json', 'resolution')
        code = console.main()
        self.assertEqual(code, 0)
        lines = stdout.getvalue().splitlines()
        self.assertTrue(lines[0].startswith('stringy-euler ('))
        self.assertIn('stringy_euler_number: 6', lines)

    @patch('trimcc.console.docopt')
    @patch('sys.stdout', new_callable=StringIO)
    def test_main_structured(self, stdout, docopt):
        docopt.return_value = arguments(
            'trim-check', 'blowup.json', 'blowup', output='structured')
        code = console.main()
        self.assertEqual(code, 0)
        payload = json.loads(stdout.getvalue())
        self.assertEqual(payload['schema_version'], 1)
        self.assertEqual(payload['command'], 'trim-check')
        self.assertEqual(payload['seed'], 0)
        self.assertFalse(payload['result']['is_trim'])
        self.assertEqual(payload['evidence'][0]['title'], 'chart')
        self.assertEqual(
            payload['evidence'][0]['rows'],
            [[0, -1, 0, True], [1, 1, 1, False]])

    @patch('trimcc.console.docopt')
    @patch('sys.stdout', new_callable=StringIO)
    def test_main_error(self, stdout, docopt):
        docopt.return_value = arguments('trim-check', 'blowup.json', 'nothing')
        self.assertEqual(console.main(), 1)
        self.assertIn('error: ', stdout.getvalue())

    @patch('trimcc.console.docopt')
    @patch('sys.stdout', new_callable=StringIO)
    def test_main_raise(self, stdout, docopt):
        docopt.return_value = arguments(
            'trim-check', 'blowup.json', 'nothing', **{'raise': True})
        with self.assertRaises(exceptions.ProjectError):
            console.main()

    @patch('trimcc.console.docopt')
    @patch('sys.stdout', new_callable=StringIO)
    def test_main_report_file(self, stdout, docopt):
        directory = tempfile.mkdtemp()
        try:
            path = os.path.join(directory, 'report.json')
            docopt.return_value = arguments(
                'rank-strata', 'blowup.json', 'blowup', report=path)
            self.assertEqual(console.main(), 0)
            with open(path) as fp:
                payload = json.load(fp)
            self.assertEqual(
                payload['result']['dimensions'], {'chart': [-1, 1, 2]})
            self.assertIn('rank-strata', stdout.getvalue())
        finally:
            shutil.rmtree(directory)

    def test_exit_codes(self):
        self.assertEqual(console.exit_code(exceptions.InputError()), 1)
        self.assertEqual(console.exit_code(exceptions.ProjectError('x')), 1)
        self.assertEqual(
            console.exit_code(exceptions.UnsupportedFiberError()), 1)
        self.assertEqual(
            console.exit_code(exceptions.ComputationLimitError('x')), 2)
        self.assertEqual(console.exit_code(exceptions.InternalError()), 2)

    def test_run_errors(self):
        report, code = console.run('nothing', corpus('curves.json'))
        self.assertEqual(code, 1)
        self.assertEqual(report.error['type'], 'InputError')

        report, code = console.run(
            'pushforward', corpus('blowup.json'), ['blowup'], {'mode': 'trim'})
        self.assertEqual(code, 1)
        self.assertEqual(report.error['type'], 'PreconditionError')

        report, code = console.run(
            'trim-check', corpus('blowup.json'), ['blowup'], {'seed': 'x'})
        self.assertEqual(code, 1)
        self.assertEqual(report.seed, 'x')

        report, code = console.run('dual', corpus('curves.json'))
        self.assertEqual(code, 1)
        self.assertIn('Missing argument', report.error['message'])

        report, code = console.run(
            'pushforward', corpus('blowup.json'), ['blowup'],
            {'mode': 'sideways'})
        self.assertEqual(code, 1)

        report, code = console.run(
            'pushforward', corpus('double_cover.json'), ['square'],
            {'mode': 'trim'})
        self.assertEqual(code, 1)
        self.assertEqual(report.error['type'], 'InputError')
        self.assertIn('generic degree 2', report.error['message'])

    def test_run_limit(self):
        report, code = console.run(
            'polar-degrees', corpus('curves.json'), ['nodal_cubic'],
            {'max_gb_steps': '1'})
        self.assertEqual(code, 2)
        self.assertEqual(report.error['type'], 'ComputationLimitError')
        self.assertEqual(report.error['statistics']['limit'], 1)
        payload = report.to_json()
        self.assertNotIn('result', payload)
        self.assertEqual(payload['error']['exit_code'], 2)

    def test_structured_output_is_deterministic(self):
        first, _ = console.run(
            'polar-degrees', corpus('curves.json'), ['nodal_cubic'])
        second, _ = console.run(
            'polar-degrees', corpus('curves.json'), ['nodal_cubic'])
        self.assertEqual(first.render_structured(), second.render_structured())
        self.assertEqual(first.result['polar_degrees'], [3, 4])
        self.assertEqual(first.result['polar_variety_degrees'], [3, 4])

    def test_timing(self):
        report, _ = console.run(
            'stringy-euler', corpus('conifold.json'), ['resolution'])
        self.assertNotIn('timing', report.to_json())
        report, _ = console.run(
            'stringy-euler', corpus('conifold.json'), ['resolution'],
            {'with_timing': True})
        self.assertIn('timing', report.to_json())
        self.assertIn('time: ', report.render_text())

    def test_warnings_are_reported(self):
        report, code = console.run(
            'small-check', corpus('conifold.json'), ['resolution'])
        self.assertEqual(code, 0)
        self.assertTrue(report.result['is_small'])
        self.assertEqual(len(report.tables), 2)
        self.assertTrue(
            any('equidimensionality' in w for w in report.warnings))
        self.assertEqual(len(report.warnings), len(set(report.warnings)))
        self.assertIn('warning: ', report.render_text())

    def test_charts(self):
        report, code = console.run(
            'rank-strata', corpus('conifold.json'), ['resolution'],
            {'parallel': True})
        self.assertEqual(code, 0)
        self.assertEqual(
            report.result['dimensions'],
            {'chart1': [-1, -1, 1, 3], 'chart2': [-1, -1, 1, 3]})

        report, code = console.run(
            'trim-check', corpus('conifold.json'), ['resolution'],
            {'charts': 'chart2'})
        self.assertEqual(code, 0)
        self.assertTrue(report.result['is_trim'])
        self.assertEqual([table[0] for table in report.tables], ['chart2'])

        report, code = console.run(
            'trim-check', corpus('conifold.json'), ['resolution'],
            {'charts': 'chart9'})
        self.assertEqual(code, 1)

    def test_euler_obstruction_routes(self):
        report, code = console.run(
            'euler-obstruction', corpus('conifold.json'), ['resolution'])
        self.assertEqual(code, 0)
        self.assertEqual(report.result['route'], 'trim fiber')
        self.assertEqual(report.result['values'], {'vertex': 2, 'smooth': 1})

        # chart2 misses the fiber over this point
        report, code = console.run(
            'euler-obstruction', corpus('conifold.json'), ['resolution'],
            {'probe': ['1,0,0,0']})
        self.assertEqual(code, 0)
        self.assertEqual(report.result['values'], {'1,0,0,0': 1})

        report, code = console.run(
            'euler-obstruction', corpus('double_cover.json'), ['square'])
        self.assertEqual(code, 1)
        self.assertEqual(report.error['type'], 'InputError')

        report, code = console.run(
            'euler-obstruction', corpus('curves.json'), ['cuspidal_cubic'],
            {'probe': ['cusp']})
        self.assertEqual(code, 0)
        self.assertEqual(report.result['route'], 'segre class')
        self.assertEqual(report.result['values'], {'cusp': 2})

    def test_cc(self):
        report, code = console.run(
            'cc', corpus('curves.json'), ['nodal_cubic', 'point:-1'],
            {'probe': ['node', 'smooth']})
        self.assertEqual(code, 0)
        self.assertTrue(report.result['inverse_matches'])
        self.assertEqual(
            [term['coefficient'] for term in report.result['cycle']], [-1, -1])
        self.assertEqual(report.result['values'], {'node': 1, 'smooth': 1})

        report, code = console.run(
            'cc', corpus('curves.json'), ['conic:two'])
        self.assertEqual(code, 1)

    def test_stringy(self):
        report, code = console.run(
            'stringy', corpus('conifold.json'), ['resolution', 'conifold'])
        self.assertEqual(code, 0)
        self.assertEqual(report.result['class'], [6, 8, 6, 2, 0])
        self.assertTrue(report.result['equal'])

    def test_pushforward(self):
        report, code = console.run(
            'pushforward', corpus('double_cover.json'), ['square'])
        self.assertEqual(code, 0)
        self.assertEqual(report.result['mode'], 'generically-finite')
        self.assertEqual(report.result['multiplicity'], 2)
        self.assertEqual(report.result['support'], ['f(Y)'])

        report, code = console.run(
            'pushforward', corpus('blowup.json'), ['blowup'],
            {'mode': 'support-only'})
        self.assertEqual(code, 0)
        self.assertEqual(report.result['support'], ['f(Y)', 'origin'])
        self.assertNotIn('cycle', report.result)

    def test_ic_report(self):
        report, code = console.run(
            'ic-report', corpus('conifold.json'), ['cone', 'resolution'])
        self.assertEqual(code, 0)
        self.assertTrue(report.result['is_irreducible'])
        self.assertEqual(
            [sample['chi'] for sample in report.result['stalk_chi']], [-2, -1])

        report, code = console.run(
            'ic-report', corpus('conifold.json'), ['cone', 'resolution'],
            {'charts': 'chart2', 'stratification': 'cone'})
        self.assertEqual(code, 0)
        self.assertEqual(report.result['cc'][0]['coefficient'], 1)

    def test_generic_degree(self):
        report, code = console.run(
            'generic-degree', corpus('double_cover.json'), ['square'])
        self.assertEqual(code, 0)
        self.assertEqual(report.result['degree'], 2)

    def test_chow_flag(self):
        report, code = console.run(
            'stringy', corpus('conifold.json'), ['conifold'],
            {'chow': 'resolution'})
        self.assertEqual(code, 0)
        self.assertEqual(report.inputs['chow'], 'resolution')
        self.assertTrue(report.result['equal'])

        report, code = console.run('stringy-euler', corpus('conifold.json'))
        self.assertEqual(code, 1)
