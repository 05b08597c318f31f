#!/usr/bin/env python3

import unittest
import os
import io
import json
import csv
import tempfile
from contextlib import redirect_stdout, redirect_stderr
from unittest import mock
import numpy as np
import logging
from utfw.cli import main, load_report, dump_report, EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, \
    EXIT_PARSE, EXIT_RANGE
from utfw.radial_grid import RadialGrid, RadialDensity, save_density
from utfw.utfw import Utfw

#logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

def run(argv):
    """
    Run the command line and return (status, stdout, stderr).
    """
    out = io.StringIO()
    err = io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        try:
            status = main(argv)
        except SystemExit as e:
            status = e.code
    return status, out.getvalue(), err.getvalue()

def error_report(err):
    return json.loads(err[err.index('{'):])

def pair_file(directory, z, lam='1/5', d=2.0, name='molecule.json'):
    filename = os.path.join(directory, name)
    with open(filename, 'w') as f:
        json.dump({'lambda': lam,
                   'nuclei': [{'z': z, 'position': [0, 0, -d / 2]},
                              {'z': z, 'position': [0, 0, d / 2]}]}, f)
    return filename

class BoundsCommandTests(unittest.TestCase):

    def test_bounds(self):
        status, out, _ = run(['bounds', '--lambda', '0.2', '--alpha', '0.0072992700729927'])
        self.assertEqual(status, EXIT_OK)
        report = json.loads(out)
        self.assertEqual(report['command'], 'bounds')
        self.assertEqual(set(report.keys()), {'command', 'inputs', 'outputs', 'provenance'})
        self.assertAlmostEqual(report['outputs']['atomic']['lower'], 75.04, places=2)
        self.assertEqual(report['outputs']['comparison']['quoted_atomic'], 75)

    def test_fraction_and_names(self):
        status, out, _ = run(['bounds', '--lambda', '1/9'])
        self.assertEqual(status, EXIT_OK)
        self.assertAlmostEqual(json.loads(out)['outputs']['atomic']['lower'], 55.93, places=2)
        status, out2, _ = run(['bounds', '--lambda', 'kirzhnits'])
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(json.loads(out)['outputs'], json.loads(out2)['outputs'])

    def test_usage_errors(self):
        self.assertEqual(run(['bounds'])[0], EXIT_USAGE)
        self.assertEqual(run(['bounds', '--lambda', '-1'])[0], EXIT_USAGE)
        self.assertEqual(run(['bounds', '--lambda', 'abc'])[0], EXIT_USAGE)
        self.assertEqual(run([])[0], EXIT_USAGE)

    def test_molecular_bound(self):
        status, out, _ = run(['molecular-bound', '--lambda', '1/9'])
        self.assertEqual(status, EXIT_OK)
        outputs = json.loads(out)['outputs']
        self.assertEqual(outputs['quoted_molecular'], 55)
        self.assertAlmostEqual(outputs['molecular']['z_max'], 53.38, places=2)

    def test_deterministic(self):
        argv = ['bounds', '--lambda', '0.185', '--table']
        self.assertEqual(run(argv)[1], run(argv)[1])

    def test_report_round_trip(self):
        _, out, _ = run(['bounds', '--lambda', '0.2'])
        report = load_report(out)
        self.assertAlmostEqual(report['outputs'].atomic.lower, 75.04, places=2)
        self.assertEqual(json.loads(dump_report(report)), json.loads(out))

    def test_output_files(self):
        with tempfile.TemporaryDirectory() as tmp:
            out_file = os.path.join(tmp, 'report.json')
            csv_file = os.path.join(tmp, 'table.csv')
            plot_file = os.path.join(tmp, 'bounds.png')
            status, out, _ = run(['bounds', '--lambda', '0.2', '--table',
                                  '-o', out_file, '--csv', csv_file, '--plot', plot_file])
            self.assertEqual(status, EXIT_OK)
            with open(out_file) as f:
                self.assertEqual(json.load(f), json.loads(out))
            with open(csv_file, newline='') as f:
                rows = list(csv.DictReader(f))
            self.assertEqual(len(rows), 3)
            self.assertIn('atomic_lower', rows[0])
            self.assertGreater(os.path.getsize(plot_file), 0)

class CertifyCommandTests(unittest.TestCase):

    def test_verdicts(self):
        with tempfile.TemporaryDirectory() as tmp:
            for z, expected in [(50, EXIT_OK), (72, EXIT_NEGATIVE), (80, EXIT_RANGE)]:
                status, out, _ = run(['certify', pair_file(tmp, z)])
                self.assertEqual(status, expected)
                report = json.loads(out)
                self.assertEqual(report['outputs']['z_cert'], z)

    def test_stable_report(self):
        with tempfile.TemporaryDirectory() as tmp:
            csv_file = os.path.join(tmp, 'cells.csv')
            status, out, _ = run(['certify', pair_file(tmp, 50), '--csv', csv_file])
            self.assertEqual(status, EXIT_OK)
            outputs = json.loads(out)['outputs']
            self.assertEqual(outputs['verdict'], 'stable')
            self.assertGreaterEqual(outputs['M'], 0)
            with open(csv_file, newline='') as f:
                self.assertEqual(len(list(csv.DictReader(f))), 2)

    def test_parse_errors(self):
        with tempfile.TemporaryDirectory() as tmp:
            bad = os.path.join(tmp, 'bad.json')
            with open(bad, 'w') as f:
                f.write('{"lambda": 0.2, "nuclei": [')
            status, out, err = run(['certify', bad])
            self.assertEqual(status, EXIT_PARSE)
            self.assertEqual(out, '')
            self.assertEqual(error_report(err)['error'], 'parse')

            status, _, err = run(['certify', pair_file(tmp, 50, d=0.0)])
            self.assertEqual(status, EXIT_PARSE)
            self.assertIn('coincident', err)

            with open(bad, 'w') as f:
                json.dump({'lambda': -1, 'nuclei': [{'z': 'x', 'position': [0, 0]}]}, f)
            status, _, err = run(['certify', bad])
            self.assertEqual(status, EXIT_PARSE)
            problems = error_report(err)['problems']
            self.assertEqual(len(problems), 3)

            with open(bad, 'w') as f:
                f.write('{"lambda": 0.2, "nuclei": [{"z": Infinity, "position": [0, 0, 0]}]}')
            status, _, err = run(['certify', bad])
            self.assertEqual(status, EXIT_PARSE)
            self.assertEqual(error_report(err)['problems'], ['nuclei[0].z: must be finite (inf)'])

            status, _, _ = run(['certify', os.path.join(tmp, 'missing.json')])
            self.assertEqual(status, EXIT_PARSE)

class OtherCommandTests(unittest.TestCase):

    def test_energy(self):
        with tempfile.TemporaryDirectory() as tmp:
            grid = RadialGrid(2000, 50.0)
            zeros = os.path.join(tmp, 'zeros.txt')
            save_density(zeros, RadialDensity(grid, np.zeros(grid.n)))
            status, out, _ = run(['energy', zeros, '--z', '50', '--lambda', '0.2'])
            self.assertEqual(status, EXIT_OK)
            self.assertEqual(json.loads(out)['outputs']['energy'], 0)

            exp = os.path.join(tmp, 'exp.txt')
            save_density(exp, RadialDensity.from_function(lambda r: np.exp(-r), grid))
            status, out, _ = run(['energy', exp, '--z', '0', '--lambda', '0.2'])
            self.assertEqual(status, EXIT_OK)
            model = Utfw(0.2)
            expected = 3 * np.pi * model.a_squared + 27 * np.pi * model.b_squared / 8 \
                + 10 * np.pi ** 2 * model.alpha
            self.assertAlmostEqual(json.loads(out)['outputs']['energy'] / expected, 1, places=4)

            garbage = os.path.join(tmp, 'garbage.txt')
            with open(garbage, 'w') as f:
                f.write('1 2 3\n4 5 6\n')
            self.assertEqual(run(['energy', garbage, '--z', '1', '--lambda', '0.2'])[0], EXIT_PARSE)

    def test_verify(self):
        status, out, _ = run(['verify', '--suite', 'model_core', '--suite', 'critical_charge'])
        self.assertEqual(status, EXIT_OK)
        outputs = json.loads(out)['outputs']
        self.assertTrue(outputs['passed'])
        self.assertEqual([s['name'] for s in outputs['suites']], ['model_core', 'critical_charge'])
        self.assertEqual(run(['verify', '--suite', 'nonsense'])[0], EXIT_USAGE)

    def test_search(self):
        argv = ['search', '--z', '0', '--lambda', '0.2', '--budget', '200', '--restarts', '4']
        status, out, _ = run(argv)
        self.assertEqual(status, EXIT_OK)
        report = json.loads(out)
        self.assertEqual(report['outputs']['verdict'], 'none-found')
        self.assertEqual(report['provenance']['seed'], 0)
        self.assertEqual(out, run(argv)[1])
        self.assertEqual(run(['search', '--z', '80', '--lambda', '0.2', '--budget', '50'])[0], EXIT_USAGE)

    def test_errors_never_negative_status(self):
        """
        Bad inputs that pass argparse exit with a usage or parse status,
        never with the status of a negative verdict.
        """
        status, out, err = run(['search', '--z', '1', '--lambda', '0.2', '--budget', '100',
                                '--restarts', '0'])
        self.assertEqual(status, EXIT_USAGE)
        self.assertEqual(out, '')

        with tempfile.TemporaryDirectory() as tmp:
            tiny = os.path.join(tmp, 'tiny.txt')
            with open(tiny, 'w') as f:
                f.write('1.0 0.5\n2.0 0.25\n')
            status, out, err = run(['energy', tiny, '--z', '1', '--lambda', '0.2'])
            self.assertEqual(status, EXIT_PARSE)
            self.assertIn('at least 3', error_report(err)['problems'][0])

        with mock.patch.object(Utfw, 'atomic_bounds', side_effect=ValueError('bad lambda')):
            status, out, err = run(['bounds', '--lambda', '0.2'])
        self.assertEqual(status, EXIT_USAGE)
        report = error_report(err)
        self.assertEqual(report['error'], 'usage')
        self.assertEqual(report['problems'], ['bad lambda'])
        self.assertNotEqual(status, EXIT_NEGATIVE)

if __name__ == "__main__":
    unittest.main()
