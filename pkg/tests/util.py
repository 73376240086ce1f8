from __future__ import absolute_import, print_function

from textwrap import dedent

import numpy as np

from aqil.env import CartState, StepOutcome
from aqil.qnet import LINEAR, Layer, QNetwork
from aqil.trainer import TrainConfig
from aqil.util import radians

def load(s):
    return dedent(s)

class ZeroRng(object):
    """Stands in for a generator whose uniform draws are all zero"""
    def uniform(self, low, high, size=None):
        return np.zeros(size)

class ScriptedEnv(object):
    """Replays a fixed sequence of pole angles (degrees), terminal on the last"""
    def __init__(self, thetas_deg):
        self.states = [CartState(0.0, 0.0, radians(t), 0.0) for t in thetas_deg]
        self.actions = []
        self._index = 0

    def reset(self, rng):
        self._index = 0
        return self.states[0]

    def step(self, state, action):
        self.actions.append(action)
        self._index += 1
        terminal = self._index == len(self.states) - 1
        return StepOutcome(self.states[self._index], terminal, self._index)

def linear_net(weights, biases):
    return QNetwork([Layer(weights, biases, LINEAR)])

def constant_net(q_left, q_right, input_dim=4):
    return linear_net(np.zeros((2, input_dim)), [q_left, q_right])

def small_config(**kwargs):
    data = dict(
        hidden_sizes=[8],
        batch_size=8,
        replay_capacity=1000,
        max_episode_steps=60,
        seed=3,
    )
    data.update(kwargs)
    return TrainConfig.load(data)
