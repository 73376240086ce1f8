"""Q-imitation and reinforcement training loops

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
import logging
import time

import numpy as np

from .env import Action, CartPoleEnv, CartState, PhysicsParams
from .expert import PidExpert, PidGains
from .qnet import QNetwork, bellman_targets, make_optimizer, return_range, OPTIMIZERS
from .reward import RewardParams, imitation_reward, rl_reward
from .util import ConfigError, degrees, radians, spawn_streams

logger = logging.getLogger(__name__)

IMITATION = 'imitation'
REINFORCEMENT = 'reinforcement'
MODES = (IMITATION, REINFORCEMENT)

EXPERT_ROLLOUT = 'expert'
AGENT_ROLLOUT = 'agent'

EPISODE_SYNC = 'episode'

Transition = collections.namedtuple('Transition', ['state', 'action', 'reward', 'next_state', 'terminal'])

EpisodeLog = collections.namedtuple('EpisodeLog', ['episode', 'phase', 'steps', 'score', 'mean_loss', 'epsilon', 'wall_time'])

class ReplayBuffer(object):
    """Bounded FIFO ring of transitions with uniform minibatch sampling"""

    def __init__(self, capacity=100000, state_dim=4):
        if capacity < 1:
            raise ValueError("capacity must be positive")
        self.capacity = int(capacity)
        self._states = np.zeros((self.capacity, state_dim))
        self._actions = np.zeros(self.capacity, dtype=np.intp)
        self._rewards = np.zeros(self.capacity)
        self._next_states = np.zeros((self.capacity, state_dim))
        self._terminals = np.zeros(self.capacity, dtype=bool)
        self._next = 0
        self._size = 0

    def __len__(self):
        return self._size

    def append(self, transition):
        i = self._next
        self._states[i] = transition.state
        self._actions[i] = transition.action
        self._rewards[i] = transition.reward
        self._next_states[i] = transition.next_state
        self._terminals[i] = transition.terminal
        self._next = (i + 1) % self.capacity
        self._size = min(self._size + 1, self.capacity)

    def _ordered_indices(self):
        start = (self._next - self._size) % self.capacity
        return [(start + k) % self.capacity for k in range(self._size)]

    def __iter__(self):
        """Oldest first"""
        for i in self._ordered_indices():
            yield Transition(CartState(*self._states[i]),
                             int(self._actions[i]),
                             float(self._rewards[i]),
                             CartState(*self._next_states[i]),
                             bool(self._terminals[i]))

    def sample(self, batch_size, rng):
        if self._size < batch_size:
            raise ValueError("Cannot sample {} transitions from a buffer of {}".format(batch_size, self._size))
        idx = rng.integers(0, self._size, size=batch_size)
        return (self._states[idx], self._actions[idx], self._rewards[idx],
                self._next_states[idx], self._terminals[idx])

class TrainConfig(object):
    DEFAULTS = collections.OrderedDict([
        ('episodes', 500),
        ('trajectories_per_epoch', 1),
        ('gamma', 0.95),
        ('epsilon_start', 1.0),
        ('epsilon_min', 0.01),
        ('epsilon_decay', 0.995),
        ('restart_epsilon', True),
        ('batch_size', 64),
        ('learning_rate', 1e-3),
        ('optimizer', 'sgd'),
        ('grad_clip', 10.0),
        ('clip_targets', True),
        ('target_sync', EPISODE_SYNC),
        ('replay_capacity', 100000),
        ('train_every', 1),
        ('hidden_sizes', [24, 24]),
        ('seed', 0),
        ('mode', IMITATION),
        ('imitation_rollout', AGENT_ROLLOUT),
        ('max_episode_steps', 50000),
        ('theta_limit_degrees', 50.0),
        ('x_limit', 2.4),
        ('sigma1', 10.0),
        ('sigma2', 0.5),
        ('w_angle', 0.2),
        ('w_action', 0.8),
        ('pid_p', 0.6),
        ('pid_i', 0.00625),
        ('pid_d', 0.8),
        ('eval_episodes', 20),
    ])

    _COUNTS = ['episodes', 'trajectories_per_epoch', 'batch_size', 'replay_capacity',
               'train_every', 'max_episode_steps', 'eval_episodes']

    @classmethod
    def load(cls, obj):
        unknown = set(obj) - set(cls.DEFAULTS)
        if unknown:
            raise ConfigError("Unknown config keys: {}".format(', '.join(sorted(unknown))))
        return cls(**obj)

    def __init__(self, **kwargs):
        for name, default in six.iteritems(self.DEFAULTS):
            setattr(self, name, kwargs.pop(name, default))
        if kwargs:
            raise ConfigError("Unknown config keys: {}".format(', '.join(sorted(kwargs))))
        self._validate()

    def _validate(self):
        try:
            for name in self._COUNTS:
                value = getattr(self, name)
                if isinstance(value, bool) or int(value) != value or value < 1:
                    raise ConfigError("{} must be a positive integer, got {!r}".format(name, value))
                setattr(self, name, int(value))
            for name in ['gamma', 'epsilon_start', 'epsilon_min', 'epsilon_decay', 'learning_rate',
                         'theta_limit_degrees', 'x_limit', 'sigma1', 'sigma2', 'w_angle', 'w_action',
                         'pid_p', 'pid_i', 'pid_d']:
                setattr(self, name, float(getattr(self, name)))
            self.grad_clip = float(self.grad_clip or 0.0)
            self.seed = int(self.seed)
            self.clip_targets = bool(self.clip_targets)
            self.hidden_sizes = [int(n) for n in self.hidden_sizes]
        except (TypeError, ValueError) as e:
            if isinstance(e, ConfigError):
                raise
            raise ConfigError("Invalid config value: {}".format(e))

        if not 0.0 <= self.gamma <= 1.0:
            raise ConfigError("gamma must be in [0, 1], got {!r}".format(self.gamma))
        if not 0.0 <= self.epsilon_min <= self.epsilon_start <= 1.0:
            raise ConfigError("Need 0 <= epsilon_min <= epsilon_start <= 1")
        if not 0.0 < self.epsilon_decay <= 1.0:
            raise ConfigError("epsilon_decay must be in (0, 1], got {!r}".format(self.epsilon_decay))
        if self.seed < 0:
            raise ConfigError("seed must be a non-negative integer, got {!r}".format(self.seed))
        if not self.learning_rate > 0:
            raise ConfigError("learning_rate must be positive")
        if self.grad_clip < 0:
            raise ConfigError("grad_clip must be non-negative")
        if not self.hidden_sizes or any(n < 1 for n in self.hidden_sizes):
            raise ConfigError("hidden_sizes must be a non-empty list of positive sizes")
        if self.optimizer not in OPTIMIZERS:
            raise ConfigError("Unknown optimizer {!r}".format(self.optimizer))
        if self.mode not in MODES:
            raise ConfigError("mode must be one of {}".format(', '.join(MODES)))
        if self.imitation_rollout not in (EXPERT_ROLLOUT, AGENT_ROLLOUT):
            raise ConfigError("imitation_rollout must be '{}' or '{}'".format(EXPERT_ROLLOUT, AGENT_ROLLOUT))
        if self.target_sync != EPISODE_SYNC:
            if isinstance(self.target_sync, bool) or not isinstance(self.target_sync, six.integer_types) or self.target_sync < 1:
                raise ConfigError("target_sync must be '{}' or a positive step count".format(EPISODE_SYNC))

        # builds and validates the nested records
        self.physics
        self.reward_params
        self.gains

    @property
    def physics(self):
        return PhysicsParams(theta_limit=radians(self.theta_limit_degrees),
                             x_limit=self.x_limit,
                             max_episode_steps=self.max_episode_steps)

    @property
    def reward_params(self):
        return RewardParams(sigma1=self.sigma1, sigma2=self.sigma2,
                            w_angle=self.w_angle, w_action=self.w_action)

    @property
    def gains(self):
        return PidGains(self.pid_p, self.pid_i, self.pid_d)

    def replace(self, **kwargs):
        data = self.dump()
        data.update(kwargs)
        return self.load(data)

    def dump(self):
        data = collections.OrderedDict()
        for name in self.DEFAULTS:
            value = getattr(self, name)
            data[name] = list(value) if isinstance(value, list) else value
        return data

    def __eq__(self, other):
        return isinstance(other, TrainConfig) and self.dump() == other.dump()

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return 'TrainConfig({})'.format(
            ','.join('{}={!r}'.format(k, v) for k, v in six.iteritems(self.dump())))

def select_action(net, state, epsilon, rng):
    """Epsilon-greedy over forward(net, state); ties go to PushLeft"""
    if epsilon > 0 and rng.random() < epsilon:
        return int(rng.integers(0, 2))
    q_values = net.forward(state)
    return Action.PUSH_RIGHT if q_values[Action.PUSH_RIGHT] > q_values[Action.PUSH_LEFT] else Action.PUSH_LEFT

def validate_phases(phases):
    phases = [tuple(p) for p in phases]
    if not phases:
        raise ConfigError("At least one phase is required")
    for phase in phases:
        if len(phase) != 2:
            raise ConfigError("A phase is a (mode, budget) pair, got {!r}".format(phase))
        mode, budget = phase
        if mode not in MODES:
            raise ConfigError("Unknown phase mode {!r}".format(mode))
        if isinstance(budget, bool) or not isinstance(budget, six.integer_types) or budget < 1:
            raise ConfigError("Phase budget must be a positive integer, got {!r}".format(budget))
    return phases

class Trainer(object):
    """One persistent network and replay buffer trained over a phase list"""

    def __init__(self, config, env=None, expert=None):
        self.config = config
        self.streams = spawn_streams(config.seed)
        self.net = QNetwork.init(config.hidden_sizes, self.streams.init)
        self.target = self.net.sync_target()
        self.optimizer = make_optimizer(config.optimizer, config.learning_rate)
        self.buffer = ReplayBuffer(config.replay_capacity)
        self.env = env or CartPoleEnv(config.physics)
        self.expert = expert or PidExpert(config.gains)
        self.reward_params = config.reward_params
        # rewards lie in [0, 1] so every return lies in [0, 1 / (1 - gamma)]
        self.value_range = return_range(config.gamma) if config.clip_targets else None

        self.counters = collections.Counter()
        self.logs = []
        self.epsilon = config.epsilon_start
        self._episode = 0

    def _decay_epsilon(self):
        self.epsilon = max(self.config.epsilon_min, self.epsilon * self.config.epsilon_decay)

    def _learn(self):
        """One minibatch step on the squared Bellman error, once the buffer is warm"""
        config = self.config
        if len(self.buffer) < config.batch_size:
            return None
        if self.counters['env_step'] % config.train_every != 0:
            return None
        states, actions, rewards, next_states, terminals = self.buffer.sample(config.batch_size, self.streams.replay)
        targets = bellman_targets(rewards, next_states, terminals, self.target, config.gamma, self.value_range)
        loss, grads = self.net.batch_loss_and_gradients(states, actions, targets)
        if config.grad_clip:
            grads = grads.clipped(config.grad_clip)
        self.optimizer.step(self.net, grads)
        self.counters['gradient_step'] += 1

        if config.target_sync != EPISODE_SYNC and self.counters['gradient_step'] % config.target_sync == 0:
            self.sync_target()
        return loss

    def sync_target(self):
        self.target = self.net.sync_target()
        self.counters['target_sync'] += 1

    def _run_episode(self, phase):
        start = time.time()
        epsilon = self.epsilon
        state = self.env.reset(self.streams.env)
        if phase == IMITATION:
            self.expert.reset()

        steps = 0
        score = 0.0
        losses = []
        while True:
            theta_deg = degrees(state.theta)
            a_model = select_action(self.net, state, epsilon, self.streams.explore)
            if phase == IMITATION:
                a_pid = self.expert.act(state)
                self.counters['expert_query'] += 1
                reward = imitation_reward(theta_deg, a_pid, a_model, self.reward_params)
                self.counters['imitation_reward'] += 1
                action = a_pid if self.config.imitation_rollout == EXPERT_ROLLOUT else a_model
            else:
                reward = rl_reward(theta_deg, self.reward_params)
                self.counters['rl_reward'] += 1
                action = a_model

            outcome = self.env.step(state, action)
            self.buffer.append(Transition(state, action, reward, outcome.next_state, outcome.terminal))
            self.counters['env_step'] += 1
            steps += 1
            score += reward

            loss = self._learn()
            if loss is not None:
                losses.append(loss)

            state = outcome.next_state
            if outcome.terminal:
                break

        if self.config.target_sync == EPISODE_SYNC:
            self.sync_target()

        self._episode += 1
        log = EpisodeLog(
            episode=self._episode,
            phase=phase,
            steps=steps,
            score=score,
            mean_loss=float(np.mean(losses)) if losses else 0.0,
            epsilon=epsilon,
            wall_time=time.time() - start)
        self.logs.append(log)
        logger.debug("Episode %d (%s): steps=%d score=%.3f loss=%.5g epsilon=%.4f",
                     log.episode, phase, log.steps, log.score, log.mean_loss, log.epsilon)
        self._decay_epsilon()
        return log

    def run_imitation_episode(self):
        return self._run_episode(IMITATION)

    def run_reinforcement_episode(self):
        return self._run_episode(REINFORCEMENT)

    def train(self, phases):
        phases = validate_phases(phases)
        for phase_index, (mode, budget) in enumerate(phases):
            if phase_index > 0 and self.config.restart_epsilon:
                self.epsilon = self.config.epsilon_start
            logger.info("Phase %d: %s for %d epochs from episode %d",
                        phase_index + 1, mode, budget, self._episode + 1)
            for _ in range(budget):
                for _ in range(self.config.trajectories_per_epoch):
                    self._run_episode(mode)
        return self.net, self.logs

def train(config, phases=None):
    """Run phases (default: config.mode for config.episodes) on one network"""
    if phases is None:
        phases = [(config.mode, config.episodes)]
    return Trainer(config).train(phases)

def phase_boundaries(logs):
    """Episode numbers at which a new phase starts"""
    boundaries = []
    previous = None
    for log in logs:
        if log.phase != previous:
            boundaries.append(log.episode)
            previous = log.phase
    return boundaries
