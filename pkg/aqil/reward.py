"""Gaussian reward functions

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

import math

from .util import ConfigError, NumericalError

class RewardParams(object):
    FIELDS = ['theta_optimal', 'sigma1', 'sigma2', 'w_angle', 'w_action']

    def __init__(self, theta_optimal=0.0, sigma1=10.0, sigma2=0.5, w_angle=0.2, w_action=0.8):
        self.theta_optimal = float(theta_optimal)
        self.sigma1 = float(sigma1)
        self.sigma2 = float(sigma2)
        self.w_angle = float(w_angle)
        self.w_action = float(w_action)

        if not (self.sigma1 > 0 and self.sigma2 > 0):
            raise ConfigError("sigma1 and sigma2 must be positive")
        if self.w_angle < 0 or self.w_action < 0 or abs(self.w_angle + self.w_action - 1.0) > 1e-12:
            raise ConfigError("w_angle and w_action must be non-negative and sum to 1")

    def __eq__(self, other):
        return isinstance(other, RewardParams) and all(
            getattr(self, f) == getattr(other, f) for f in self.FIELDS)

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return 'RewardParams({})'.format(
            ','.join('{}={!r}'.format(f, getattr(self, f)) for f in self.FIELDS))

DEFAULT_PARAMS = RewardParams()

def _gaussian(delta, sigma):
    return math.exp(-0.5 * (delta / sigma) ** 2)

def rl_reward(theta_deg, params=DEFAULT_PARAMS):
    if not math.isfinite(theta_deg):
        raise NumericalError("Non-finite pole angle {!r}".format(theta_deg))
    return _gaussian(params.theta_optimal - theta_deg, params.sigma1)

def imitation_reward(theta_deg, a_pid, a_model, params=DEFAULT_PARAMS):
    """Adherence to the expert's action plus closeness to upright.
    Actions enter through their 0/1 encoding."""
    angle_term = rl_reward(theta_deg, params)
    action_term = _gaussian(float(a_pid) - float(a_model), params.sigma2)
    return params.w_angle * angle_term + params.w_action * action_term
