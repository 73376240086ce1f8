"""Cart-pole environment

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

import collections
import math

import numpy as np

from .util import ConfigError, NumericalError, degrees, radians

class CartState(collections.namedtuple('CartState', ['x', 'x_dot', 'theta', 'theta_dot'])):
    """Cart position (m), cart velocity (m/s), pole angle (rad, 0 upright,
    positive leaning right) and pole angular velocity (rad/s)."""
    __slots__ = ()

    @property
    def theta_degrees(self):
        return degrees(self.theta)

    def negate(self):
        return CartState(-self.x, -self.x_dot, -self.theta, -self.theta_dot)

    def is_finite(self):
        return all(math.isfinite(v) for v in self)

    def as_array(self):
        return np.array(self, dtype=np.float64)

class Action(object):
    PUSH_LEFT = 0
    PUSH_RIGHT = 1

    ALL = (PUSH_LEFT, PUSH_RIGHT)
    NAMES = {
        PUSH_LEFT: 'PushLeft',
        PUSH_RIGHT: 'PushRight',
    }

    @classmethod
    def validate(cls, action):
        if action not in cls.ALL:
            raise ValueError("Invalid action {!r}".format(action))
        return int(action)

    @classmethod
    def flip(cls, action):
        return 1 - cls.validate(action)

    @classmethod
    def name(cls, action):
        return cls.NAMES[cls.validate(action)]

StepOutcome = collections.namedtuple('StepOutcome', ['next_state', 'terminal', 'steps_elapsed'])

class PhysicsParams(object):
    FIELDS = ['gravity', 'cart_mass', 'pole_mass', 'pole_half_length',
              'force_magnitude', 'tau', 'theta_limit', 'x_limit', 'max_episode_steps']

    def __init__(self,
                 gravity=9.8,
                 cart_mass=1.0,
                 pole_mass=0.1,
                 pole_half_length=0.5,
                 force_magnitude=10.0,
                 tau=0.02,
                 theta_limit=radians(50.0),
                 x_limit=2.4,
                 max_episode_steps=50000):
        self.gravity = float(gravity)
        self.cart_mass = float(cart_mass)
        self.pole_mass = float(pole_mass)
        self.pole_half_length = float(pole_half_length)
        self.force_magnitude = float(force_magnitude)
        self.tau = float(tau)
        self.theta_limit = float(theta_limit)
        self.x_limit = float(x_limit)
        self.max_episode_steps = int(max_episode_steps)

        for name in ['cart_mass', 'pole_mass', 'pole_half_length', 'force_magnitude', 'tau', 'x_limit']:
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ConfigError("{} must be positive, got {!r}".format(name, value))
        if not math.isfinite(self.gravity):
            raise ConfigError("gravity must be finite")
        if not 0 < self.theta_limit <= math.pi / 2:
            raise ConfigError("theta_limit must be in (0, pi/2], got {!r}".format(self.theta_limit))
        if self.max_episode_steps < 1:
            raise ConfigError("max_episode_steps must be positive")

    @classmethod
    def from_degrees(cls, theta_limit_degrees=50.0, **kwargs):
        return cls(theta_limit=radians(theta_limit_degrees), **kwargs)

    @property
    def total_mass(self):
        return self.cart_mass + self.pole_mass

    @property
    def polemass_length(self):
        return self.pole_mass * self.pole_half_length

    @property
    def theta_limit_degrees(self):
        return degrees(self.theta_limit)

    def is_terminal(self, state, steps_elapsed):
        return (abs(state.theta) > self.theta_limit
                or abs(state.x) > self.x_limit
                or steps_elapsed >= self.max_episode_steps)

    def __eq__(self, other):
        return isinstance(other, PhysicsParams) and all(
            getattr(self, f) == getattr(other, f) for f in self.FIELDS)

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return 'PhysicsParams({})'.format(
            ','.join('{}={!r}'.format(f, getattr(self, f)) for f in self.FIELDS))

def transition(state, action, params):
    """Advance one explicit Euler step of length tau"""
    if not state.is_finite():
        raise NumericalError("Non-finite state {!r}".format(state))
    action = Action.validate(action)
    force = params.force_magnitude if action == Action.PUSH_RIGHT else -params.force_magnitude

    x, x_dot, theta, theta_dot = state
    costheta = math.cos(theta)
    sintheta = math.sin(theta)

    temp = (force + params.polemass_length * theta_dot ** 2 * sintheta) / params.total_mass
    theta_acc = (params.gravity * sintheta - costheta * temp) / (
        params.pole_half_length * (4.0 / 3.0 - params.pole_mass * costheta ** 2 / params.total_mass))
    x_acc = temp - params.polemass_length * theta_acc * costheta / params.total_mass

    next_state = CartState(
        x + params.tau * x_dot,
        x_dot + params.tau * x_acc,
        theta + params.tau * theta_dot,
        theta_dot + params.tau * theta_acc)
    if not next_state.is_finite():
        raise NumericalError("Dynamics blew up from {!r}".format(state))
    return next_state

class CartPoleEnv(object):
    """Episode lifecycle around `transition`. One instance per thread."""

    RESET_BOUND = 0.05

    def __init__(self, params=None):
        self.params = params or PhysicsParams()
        self.state = None
        self.steps_elapsed = 0

    def reset(self, rng):
        values = rng.uniform(-self.RESET_BOUND, self.RESET_BOUND, size=4)
        self.state = CartState(*[float(v) for v in values])
        self.steps_elapsed = 0
        return self.state

    def step(self, state, action):
        next_state = transition(state, action, self.params)
        self.steps_elapsed += 1
        self.state = next_state
        terminal = self.params.is_terminal(next_state, self.steps_elapsed)
        return StepOutcome(next_state, terminal, self.steps_elapsed)
