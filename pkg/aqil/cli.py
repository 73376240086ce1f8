"""Command line functions

Copyright 2026 The aqil developers

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
"""

from __future__ import absolute_import, print_function

import six
import sys
import argparse
import logging
import os.path

from .expert import PidExpert
from .experiment import (collect_runs, evaluate_policy, format_regret_report,
                         regret_report, run_experiment, summary_table)
from .files import parse_override, resolve_experiments
from .qnet import read_weights
from .trainer import TrainConfig
from .util import ConfigError, NumericalError, parse_seeds

EXIT_OK = 0
EXIT_CONFIG_ERROR = 1
EXIT_RUNTIME_ERROR = 2

SUMMARY_FILE = 'summary.csv'
REGRET_FILE = 'regret_report.txt'

class ArgumentParser(argparse.ArgumentParser):
    """Usage errors are configuration errors"""
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG_ERROR, '{}: error: {}\n'.format(self.prog, message))

def add_common_args(parser):
    verbose_group = parser.add_mutually_exclusive_group()
    verbose_group.add_argument('--quiet', '-q', action='store_const', const=-1, dest='verbose')
    verbose_group.add_argument('--verbose', '-v', action='count')

def configure_logging(args):
    verbose = args.verbose or 0
    if verbose < 0:
        level = logging.WARNING
    elif verbose == 0:
        level = logging.INFO
    else:
        level = logging.DEBUG
    logging.basicConfig(level=level, format='%(asctime)s %(levelname)s %(name)s: %(message)s')
    logging.getLogger().setLevel(level)

def seed_arg(value):
    seed = int(value)
    if seed < 0:
        raise argparse.ArgumentTypeError("seed must be non-negative, got {}".format(seed))
    return seed

def add_override_args(parser):
    parser.add_argument('--set', nargs=2, action='append', default=[], metavar=('NAME', 'VALUE'),
                        dest='overrides', help='Override a training config value')

def load_overrides_from_args(args):
    overrides = {}
    for name, value in args.overrides:
        overrides[name] = parse_override(name, value)
    return overrides

def run_main(args=None):
    parser = ArgumentParser(prog='aqil run')
    parser.add_argument('experiment', help='RL500, IL250, IL500, IL250+RL250, IL<n>+RL<n>..., or an experiment file')
    parser.add_argument('--seeds', help='e.g. 1,2,3 or 1-5')
    parser.add_argument('--out', help='Output directory')
    parser.add_argument('--svg', action='store_true', help='Also write loss/reward curves as SVG')
    add_override_args(parser)
    add_common_args(parser)

    args = parser.parse_args(args=args)
    configure_logging(args)

    overrides = load_overrides_from_args(args)
    try:
        seeds = parse_seeds(args.seeds) if args.seeds else None
    except ValueError as e:
        raise ConfigError("Invalid --seeds: {}".format(e))

    specs = resolve_experiments(args.experiment, seeds=seeds, output_dir=args.out, overrides=overrides)

    rows = []
    for spec in specs:
        six.print_("Running {} (seeds {})...".format(spec.name, ','.join(str(s) for s in spec.seeds)))
        rows.extend(run_experiment(spec, svg=args.svg))
    text, _ = summary_table(rows)
    six.print_(text)
    return EXIT_OK

def evaluate_main(args=None):
    parser = ArgumentParser(prog='aqil evaluate')
    policy_group = parser.add_mutually_exclusive_group(required=True)
    policy_group.add_argument('--weights', type=argparse.FileType('r'), help='Weight export file')
    policy_group.add_argument('--expert', action='store_true', help='Evaluate the PID expert')
    parser.add_argument('--episodes', type=int, default=TrainConfig.DEFAULTS['eval_episodes'])
    parser.add_argument('--seed', type=seed_arg, default=0)
    add_override_args(parser)
    add_common_args(parser)

    args = parser.parse_args(args=args)
    configure_logging(args)

    config = TrainConfig.load(load_overrides_from_args(args))
    if args.expert:
        policy = PidExpert(config.gains)
        label = 'PID expert'
    else:
        with args.weights as fp:
            policy = read_weights(fp)
        label = fp.name

    result = evaluate_policy(policy, args.episodes, args.seed,
                             physics=config.physics, reward_params=config.reward_params)
    six.print_('{}: mean {:.2f} best {:.2f} over {} episodes'.format(
        label, result.mean_score, result.best_score, len(result.scores)))
    six.print_(' '.join('{:.2f}'.format(s) for s in result.scores))
    return EXIT_OK

def report_main(args=None):
    parser = ArgumentParser(prog='aqil report')
    parser.add_argument('--runs', required=True, help='Directory written by aqil run')
    parser.add_argument('--episodes', type=int, default=TrainConfig.DEFAULTS['eval_episodes'],
                        help='Evaluation episodes per policy')
    parser.add_argument('--seed', type=seed_arg, default=0)
    add_override_args(parser)
    add_common_args(parser)

    args = parser.parse_args(args=args)
    configure_logging(args)

    config = TrainConfig.load(load_overrides_from_args(args))
    rows, nets = collect_runs(args.runs)

    if rows:
        text, summary_csv = summary_table(rows)
        with open(os.path.join(args.runs, SUMMARY_FILE), 'w') as fp:
            fp.write(summary_csv)
        six.print_(text)

    if nets:
        six.print_("Evaluating {} policies and the expert...".format(len(nets)))
        reports = regret_report(nets, eval_episodes=args.episodes, seed=args.seed,
                                expert=PidExpert(config.gains),
                                physics=config.physics, reward_params=config.reward_params)
        report_text = format_regret_report(reports)
        with open(os.path.join(args.runs, REGRET_FILE), 'w') as fp:
            fp.write(report_text)
        six.print_(report_text)
    return EXIT_OK

def main(args=None):
    if args is None:
        args = sys.argv[1:]

    commands = ['run', 'evaluate', 'report']

    parser = ArgumentParser(prog='aqil')
    parser.add_argument('command', choices=commands)

    if (not args
        or (len(args) == 1 and args[0] in ['--help', '-h'])
        or args[0] not in commands):
        parser.print_help()
        return EXIT_CONFIG_ERROR

    command = args[0]
    try:
        return globals()['{}_main'.format(command)](args[1:])
    except ConfigError as e:
        sys.stderr.write('error: {}\n'.format(e))
        return EXIT_CONFIG_ERROR
    except (NumericalError, IOError, OSError) as e:
        sys.stderr.write('error: {}\n'.format(e))
        return EXIT_RUNTIME_ERROR
