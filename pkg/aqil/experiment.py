"""Named experiments, policy evaluation, regrets and summaries

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
import collections
import csv
import fractions
import io
import logging
import os.path
import re

import numpy as np

from .env import CartPoleEnv
from .expert import PidExpert
from .qnet import QNetwork, TargetNetwork, read_weights, write_weights
from .reward import DEFAULT_PARAMS, rl_reward
from .trainer import IMITATION, REINFORCEMENT, EpisodeLog, TrainConfig, select_action, train, validate_phases
from .util import ConfigError, degrees, make_rng

logger = logging.getLogger(__name__)

CUSTOM = 'custom'

NAMED_EXPERIMENTS = collections.OrderedDict([
    ('RL500', [(REINFORCEMENT, 500)]),
    ('IL250', [(IMITATION, 250)]),
    ('IL500', [(IMITATION, 500)]),
    ('IL250+RL250', [(IMITATION, 250), (REINFORCEMENT, 250)]),
])

DEFAULT_SEEDS = [1, 2, 3, 4, 5]

LAST_WINDOW = 50

_PHASE_TOKEN_PATTERN = re.compile(r'^(IL|RL)(\d+)$')
_PHASE_MODES = {
    'IL': IMITATION,
    'RL': REINFORCEMENT,
}

def normalize_name(name):
    return re.sub(r'\s+', '', name)

def phases_for_name(name):
    """Expand names like IL250+RL250 into phase lists; None if the name has no such form"""
    phases = []
    for token in normalize_name(name).split('+'):
        match = _PHASE_TOKEN_PATTERN.match(token)
        if not match or int(match.group(2)) < 1:
            return None
        phases.append((_PHASE_MODES[match.group(1)], int(match.group(2))))
    return phases

class ExperimentSpec(object):
    def __init__(self, name, phases=None, config=None, seeds=None, output_dir='runs'):
        self.name = normalize_name(name)
        if not self.name:
            raise ConfigError("Experiment name must not be empty")
        if phases is None:
            phases = phases_for_name(self.name)
            if phases is None:
                raise ConfigError("Invalid experiment name {!r}: use one of {} or give phases".format(
                    name, ', '.join(NAMED_EXPERIMENTS)))
        self.phases = validate_phases(phases)
        self.config = config or TrainConfig()
        self.seeds = list(seeds) if seeds is not None else list(DEFAULT_SEEDS)
        if not self.seeds:
            raise ConfigError("At least one seed is required")
        self.output_dir = output_dir

    @property
    def kind(self):
        return self.name if self.name in NAMED_EXPERIMENTS else CUSTOM

    @classmethod
    def load(cls, name, obj, seeds=None, output_dir='runs'):
        """Build from an experiment file entry: None, an inline phase list,
        or a mapping of `phases` plus TrainConfig keys"""
        if obj is None:
            obj = {}
        elif isinstance(obj, list):
            obj = {'phases': obj}
        elif not isinstance(obj, dict):
            raise ConfigError("Experiment {} must be a mapping or a phase list".format(name))
        obj = dict(obj)
        phases = obj.pop('phases', None)
        if phases is not None:
            phases = [(mode, budget) for mode, budget in phases]
        return cls(name, phases=phases, config=TrainConfig.load(obj), seeds=seeds, output_dir=output_dir)

    def file_stem(self, seed):
        return '{}_seed{}'.format(self.name, seed)

    def episodes_path(self, seed):
        return os.path.join(self.output_dir, '{}_episodes.csv'.format(self.file_stem(seed)))

    def weights_path(self, seed):
        return os.path.join(self.output_dir, '{}_weights.txt'.format(self.file_stem(seed)))

    def curves_path(self, seed):
        return os.path.join(self.output_dir, '{}_curves.svg'.format(self.file_stem(seed)))

    def __repr__(self):
        return 'ExperimentSpec(name={!r},phases={!r},seeds={!r},output_dir={!r})'.format(
            self.name, self.phases, self.seeds, self.output_dir)

EPISODE_COLUMNS = ['episode', 'phase', 'steps', 'score', 'mean_loss', 'epsilon']

def write_episode_csv(fp, logs):
    writer = csv.writer(fp, lineterminator='\n')
    writer.writerow(EPISODE_COLUMNS)
    for log in logs:
        writer.writerow([log.episode, log.phase, log.steps, repr(float(log.score)),
                         repr(float(log.mean_loss)), repr(float(log.epsilon))])

def read_episode_csv(fp):
    reader = csv.reader(fp)
    header = next(reader, None)
    if header != EPISODE_COLUMNS:
        raise ConfigError("Unexpected episode CSV header {!r}".format(header))
    logs = []
    for row in reader:
        if not row:
            continue
        logs.append(EpisodeLog(int(row[0]), row[1], int(row[2]), float(row[3]),
                               float(row[4]), float(row[5]), None))
    return logs

class SummaryRow(collections.namedtuple('SummaryRow', ['experiment', 'seed', 'mean_score', 'best_score', 'last50_mean'])):
    """Training-score summary of one run, or of all seeds when seed is None"""
    __slots__ = ()

    @classmethod
    def summarize(cls, experiment, logs, seed=None):
        scores = [log.score for log in logs]
        if not scores:
            raise ValueError("No episodes to summarize for {}".format(experiment))
        return cls(experiment, seed,
                   float(np.mean(scores)),
                   float(np.max(scores)),
                   float(np.mean(scores[-LAST_WINDOW:])))

    @classmethod
    def aggregate(cls, experiment, rows):
        rows = list(rows)
        return cls(experiment, None,
                   float(np.mean([r.mean_score for r in rows])),
                   float(np.max([r.best_score for r in rows])),
                   float(np.mean([r.last50_mean for r in rows])))

def run_experiment(spec, svg=False):
    """Train every seed of spec, writing episode CSVs and weight exports.
    Returns per-seed rows followed by the aggregate row."""
    if not os.path.isdir(spec.output_dir):
        os.makedirs(spec.output_dir)

    rows = []
    for seed in spec.seeds:
        logger.info("Running %s seed %s", spec.name, seed)
        config = spec.config.replace(seed=seed)
        net, logs = train(config, spec.phases)

        with open(spec.episodes_path(seed), 'w') as fp:
            write_episode_csv(fp, logs)
        with open(spec.weights_path(seed), 'w') as fp:
            write_weights(fp, net)
        logger.info("Wrote %s and %s", spec.episodes_path(seed), spec.weights_path(seed))

        if svg:
            from . import plots
            plots.write_curves_svg(spec.curves_path(seed), logs, '{} (seed {})'.format(spec.name, seed))

        rows.append(SummaryRow.summarize(spec.name, logs, seed))
    rows.append(SummaryRow.aggregate(spec.name, rows))
    return rows

class GreedyPolicy(object):
    def __init__(self, net):
        self.net = net

    def reset(self):
        pass

    def act(self, state):
        return select_action(self.net, state, 0.0, None)

def as_policy(obj):
    if isinstance(obj, (QNetwork, TargetNetwork)):
        return GreedyPolicy(obj)
    if not hasattr(obj, 'act'):
        raise TypeError("{!r} is neither a network nor a policy".format(obj))
    return obj

EvaluationResult = collections.namedtuple('EvaluationResult', ['mean_score', 'best_score', 'scores'])

def evaluate_policy(policy, episodes, seed, physics=None, reward_params=DEFAULT_PARAMS):
    """Greedy rollouts scored with the reinforcement reward. No learning."""
    if episodes < 1:
        raise ValueError("episodes must be at least 1")
    policy = as_policy(policy)
    env = CartPoleEnv(physics)
    rng = make_rng(seed)
    scores = []
    for _ in range(episodes):
        state = env.reset(rng)
        policy.reset()
        score = 0.0
        while True:
            score += rl_reward(degrees(state.theta), reward_params)
            outcome = env.step(state, policy.act(state))
            state = outcome.next_state
            if outcome.terminal:
                break
        scores.append(score)
    return EvaluationResult(float(np.mean(scores)), float(np.max(scores)), scores)

class RegretReport(collections.namedtuple('RegretReport', [
        'name', 'policy_value', 'expert_value', 'optimal_value',
        'imitation_regret', 'reinforcement_regret', 'expert_regret', 'goal_met'])):
    """
    Value estimates are mean evaluation scores; optimal_value is a proxy
    (the best score observed in the report). Regrets are exact fractions so
    reinforcement_regret == imitation_regret + expert_regret holds exactly.
    """
    __slots__ = ()

    @classmethod
    def from_values(cls, name, policy_value, expert_value, optimal_value):
        v_policy = fractions.Fraction(policy_value)
        v_expert = fractions.Fraction(expert_value)
        v_optimal = fractions.Fraction(optimal_value)
        imitation_regret = v_expert - v_policy
        reinforcement_regret = v_optimal - v_policy
        expert_regret = v_optimal - v_expert
        return cls(name, float(policy_value), float(expert_value), float(optimal_value),
                   imitation_regret, reinforcement_regret, expert_regret,
                   reinforcement_regret <= expert_regret)

    def render(self):
        return '\n'.join([
            '{}:'.format(self.name),
            '  V(pi)  policy              {:.2f}'.format(self.policy_value),
            "  V(pi') expert (PID)        {:.2f}".format(self.expert_value),
            "  V(pi'') best observed      {:.2f} (proxy for the optimal policy)".format(self.optimal_value),
            '  imitation regret           {:.2f}'.format(float(self.imitation_regret)),
            '  reinforcement regret       {:.2f}'.format(float(self.reinforcement_regret)),
            '  expert regret              {:.2f}'.format(float(self.expert_regret)),
            '  reinforcement <= expert    {}'.format('yes' if self.goal_met else 'no'),
        ])

def regret_report(policies, eval_episodes=20, seed=0, expert=None, physics=None, reward_params=DEFAULT_PARAMS):
    """
    Evaluate every policy (networks or policy objects, keyed by name) and
    the PID expert on the same initial states, then report regrets against
    the best observed score.
    """
    if not policies:
        raise ValueError("At least one trained policy is required")
    expert = expert or PidExpert()
    expert_result = evaluate_policy(expert, eval_episodes, seed, physics, reward_params)
    logger.info("Expert: mean %.2f best %.2f", expert_result.mean_score, expert_result.best_score)

    results = collections.OrderedDict()
    for name, policy in six.iteritems(policies):
        results[name] = evaluate_policy(policy, eval_episodes, seed, physics, reward_params)
        logger.info("%s: mean %.2f best %.2f", name, results[name].mean_score, results[name].best_score)

    candidates = [expert_result.mean_score, expert_result.best_score]
    for result in six.itervalues(results):
        candidates.extend([result.mean_score, result.best_score])
    optimal_value = max(candidates)

    reports = collections.OrderedDict()
    for name, result in six.iteritems(results):
        reports[name] = RegretReport.from_values(name, result.mean_score, expert_result.mean_score, optimal_value)
    return reports

def format_regret_report(reports):
    return '\n\n'.join(report.render() for report in six.itervalues(reports)) + '\n'

SUMMARY_COLUMNS = ['experiment', 'seed', 'mean_score', 'best_score', 'last50_mean']
AGGREGATE_SEED = 'all'

def summary_table(rows):
    """Average and best score per experiment, as text and as CSV"""
    rows = list(rows)
    if not rows:
        raise ValueError("No summary rows")

    def label(row):
        return row.experiment if row.seed is None else '{} (seed {})'.format(row.experiment, row.seed)

    width = max(len(label(r)) for r in rows + [SummaryRow('Experiment', None, 0, 0, 0)])
    lines = ['{:<{w}}  {:>12}  {:>12}  {:>12}'.format('Experiment', 'Average', 'Best', 'Last-50 avg', w=width)]
    for row in rows:
        lines.append('{:<{w}}  {:>12.2f}  {:>12.2f}  {:>12.2f}'.format(
            label(row), row.mean_score, row.best_score, row.last50_mean, w=width))
    text = '\n'.join(lines) + '\n'

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator='\n')
    writer.writerow(SUMMARY_COLUMNS)
    for row in rows:
        writer.writerow([row.experiment, AGGREGATE_SEED if row.seed is None else row.seed,
                         repr(row.mean_score), repr(row.best_score), repr(row.last50_mean)])
    return text, buf.getvalue()

def parse_summary_csv(text):
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != SUMMARY_COLUMNS:
        raise ConfigError("Unexpected summary CSV header {!r}".format(header))
    rows = []
    for record in reader:
        if not record:
            continue
        seed = None if record[1] == AGGREGATE_SEED else int(record[1])
        rows.append(SummaryRow(record[0], seed, float(record[2]), float(record[3]), float(record[4])))
    return rows

_RUN_FILE_PATTERN = re.compile(r'^(?P<name>.+)_seed(?P<seed>\d+)_(?P<kind>episodes\.csv|weights\.txt)$')

def collect_runs(runs_dir):
    """
    Scan a run directory written by run_experiment. Returns summary rows
    (per seed, then one aggregate per experiment) and the trained networks
    keyed by '<name> seed <k>'.
    """
    if not os.path.isdir(runs_dir):
        raise ConfigError("No run directory {}".format(runs_dir))
    logs_by_name = collections.OrderedDict()
    nets = collections.OrderedDict()
    for filename in sorted(os.listdir(runs_dir)):
        match = _RUN_FILE_PATTERN.match(filename)
        if not match:
            continue
        name, seed = match.group('name'), int(match.group('seed'))
        path = os.path.join(runs_dir, filename)
        with open(path) as fp:
            if match.group('kind') == 'episodes.csv':
                logs_by_name.setdefault(name, []).append((seed, read_episode_csv(fp)))
            else:
                nets['{} seed {}'.format(name, seed)] = read_weights(fp)
    if not logs_by_name and not nets:
        raise ConfigError("No runs found in {}".format(runs_dir))

    rows = []
    for name, runs in six.iteritems(logs_by_name):
        seed_rows = [SummaryRow.summarize(name, logs, seed) for seed, logs in sorted(runs)]
        rows.extend(seed_rows)
        rows.append(SummaryRow.aggregate(name, seed_rows))
    return rows, nets
