from __future__ import absolute_import, print_function

import six
import contextlib
import gc
import os.path
import shutil
import tempfile
import warnings

from .config import unittest

from aqil import cli
from aqil.experiment import parse_summary_csv

try:
    import matplotlib
except ImportError:
    matplotlib = None

TINY_ARGS = ['--set', 'max_episode_steps', '20',
             '--set', 'hidden_sizes', '[8]',
             '--set', 'batch_size', '8',
             '-q']

class TestCli(unittest.TestCase):
    def setUp(self):
        self.dir = tempfile.mkdtemp(prefix='aqil-test-')
        self.out = os.path.join(self.dir, 'runs')

    def tearDown(self):
        shutil.rmtree(self.dir, ignore_errors=True)

    def main(self, args):
        stdout = six.StringIO()
        with contextlib.redirect_stdout(stdout):
            code = cli.main(args)
        return code, stdout.getvalue()

    def run_tiny(self, name='IL2+RL2', extra=()):
        return self.main(['run', name, '--seeds', '1,2', '--out', self.out] + TINY_ARGS + list(extra))

    def test_run(self):
        code, output = self.run_tiny()
        self.assertEqual(code, cli.EXIT_OK)
        self.assertIn('IL2+RL2 (seed 1)', output)
        for seed in [1, 2]:
            self.assertTrue(os.path.isfile(os.path.join(self.out, 'IL2+RL2_seed{}_episodes.csv'.format(seed))))
            self.assertTrue(os.path.isfile(os.path.join(self.out, 'IL2+RL2_seed{}_weights.txt'.format(seed))))

    @unittest.skipUnless(matplotlib, 'matplotlib is not installed')
    def test_run_svg(self):
        code, _ = self.run_tiny(extra=['--svg'])
        self.assertEqual(code, cli.EXIT_OK)
        with open(os.path.join(self.out, 'IL2+RL2_seed1_curves.svg')) as fp:
            svg = fp.read()
        self.assertIn('<svg', svg)

    def test_run_experiment_file(self):
        path = os.path.join(self.dir, 'desk.yaml')
        with open(path, 'w') as fp:
            fp.write('.SEEDS: [3]\nIL1+RL1:\nRL2:\n  disable: True\n')
        code, _ = self.main(['run', path, '--out', self.out] + TINY_ARGS)
        self.assertEqual(code, cli.EXIT_OK)
        self.assertEqual(sorted(os.listdir(self.out)),
                         ['IL1+RL1_seed3_episodes.csv', 'IL1+RL1_seed3_weights.txt'])

    def test_config_errors(self):
        self.assertEqual(self.main(['run', 'baseline', '--out', self.out, '-q'])[0], cli.EXIT_CONFIG_ERROR)
        self.assertEqual(self.main(['run', 'RL5', '--seeds', 'x', '--out', self.out, '-q'])[0],
                         cli.EXIT_CONFIG_ERROR)
        self.assertEqual(self.main(['run', 'RL5', '--set', 'gama', '0.9', '-q'])[0], cli.EXIT_CONFIG_ERROR)
        self.assertEqual(self.main(['report', '--runs', self.out, '-q'])[0], cli.EXIT_CONFIG_ERROR)
        self.assertEqual(self.main([])[0], cli.EXIT_CONFIG_ERROR)
        self.assertEqual(self.main(['train'])[0], cli.EXIT_CONFIG_ERROR)

    def test_usage_error_exits_with_config_code(self):
        with self.assertRaises(SystemExit) as cm:
            with contextlib.redirect_stderr(six.StringIO()):
                self.main(['run'])
        self.assertEqual(cm.exception.code, cli.EXIT_CONFIG_ERROR)

    def test_evaluate(self):
        self.run_tiny()
        weights = os.path.join(self.out, 'IL2+RL2_seed1_weights.txt')
        code, output = self.main(['evaluate', '--weights', weights, '--episodes', '2',
                                  '--set', 'max_episode_steps', '200', '-q'])
        self.assertEqual(code, cli.EXIT_OK)
        self.assertIn('over 2 episodes', output)

        code, output = self.main(['evaluate', '--expert', '--episodes', '1',
                                  '--set', 'max_episode_steps', '200', '-q'])
        self.assertEqual(code, cli.EXIT_OK)
        self.assertIn('PID expert', output)

    def test_negative_seeds(self):
        self.assertEqual(self.main(['run', 'RL1', '--seeds', '-1', '--out', self.out] + TINY_ARGS)[0],
                         cli.EXIT_CONFIG_ERROR)
        path = os.path.join(self.dir, 'negative.yaml')
        with open(path, 'w') as fp:
            fp.write('.SEEDS: [2, -3]\nRL1:\n')
        self.assertEqual(self.main(['run', path, '--out', self.out] + TINY_ARGS)[0], cli.EXIT_CONFIG_ERROR)
        self.assertFalse(os.path.exists(self.out))
        with self.assertRaises(SystemExit) as cm:
            with contextlib.redirect_stderr(six.StringIO()):
                self.main(['evaluate', '--expert', '--seed', '-1', '-q'])
        self.assertEqual(cm.exception.code, cli.EXIT_CONFIG_ERROR)

    def test_evaluate_closes_weights_file(self):
        self.run_tiny()
        weights = os.path.join(self.out, 'IL2+RL2_seed1_weights.txt')
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter('always', ResourceWarning)
            code, _ = self.main(['evaluate', '--weights', weights, '--episodes', '1',
                                 '--set', 'max_episode_steps', '50', '-q'])
            gc.collect()
        self.assertEqual(code, cli.EXIT_OK)
        self.assertEqual([w for w in caught if issubclass(w.category, ResourceWarning)], [])

    def test_evaluate_non_finite_weights(self):
        path = os.path.join(self.dir, 'bad_weights.txt')
        with open(path, 'w') as fp:
            fp.write('0,weight,0,0,nan\n0,bias,0,0,0.0\n')
        with contextlib.redirect_stderr(six.StringIO()):
            code, _ = self.main(['evaluate', '--weights', path, '-q'])
        self.assertEqual(code, cli.EXIT_RUNTIME_ERROR)

    def test_report(self):
        self.run_tiny()
        code, output = self.main(['report', '--runs', self.out, '--episodes', '1',
                                  '--set', 'max_episode_steps', '100', '-q'])
        self.assertEqual(code, cli.EXIT_OK)

        with open(os.path.join(self.out, cli.SUMMARY_FILE)) as fp:
            rows = parse_summary_csv(fp.read())
        self.assertEqual([(r.experiment, r.seed) for r in rows],
                         [('IL2+RL2', 1), ('IL2+RL2', 2), ('IL2+RL2', None)])

        with open(os.path.join(self.out, cli.REGRET_FILE)) as fp:
            report = fp.read()
        self.assertIn('IL2+RL2 seed 1:', report)
        self.assertIn('IL2+RL2 seed 2:', report)
        self.assertIn('reinforcement regret', report)

if __name__ == '__main__':
    unittest.main()
