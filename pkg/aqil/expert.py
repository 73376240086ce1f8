"""PID expert player

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

from .env import Action
from .util import ConfigError, NumericalError

class PidGains(collections.namedtuple('PidGains', ['p', 'i', 'd'])):
    """Gains over a degree-valued error, per-step integral and derivative"""
    __slots__ = ()

    def __new__(cls, p=0.6, i=0.00625, d=0.8):
        gains = super(PidGains, cls).__new__(cls, float(p), float(i), float(d))
        if not all(math.isfinite(g) for g in gains):
            raise ConfigError("PID gains must be finite, got {!r}".format(gains))
        return gains

class PidState(collections.namedtuple('PidState', ['integral_accumulator', 'previous_error'])):
    __slots__ = ()

    def __new__(cls, integral_accumulator=0.0, previous_error=0.0):
        return super(PidState, cls).__new__(cls, float(integral_accumulator), float(previous_error))

def pid_reset(state=None):
    return PidState(0.0, 0.0)

def pid_act(theta_deg, pid_state, gains):
    if not math.isfinite(theta_deg):
        raise NumericalError("Non-finite pole angle {!r}".format(theta_deg))
    # upright target
    error = theta_deg - 0.0
    accumulator = pid_state.integral_accumulator + error
    u = (gains.p * error
         + gains.i * accumulator
         + gains.d * (error - pid_state.previous_error))
    action = Action.PUSH_RIGHT if u >= 0 else Action.PUSH_LEFT
    return action, PidState(accumulator, error)

class PidExpert(object):
    """The expert policy: stateful wrapper around pid_act over cart states"""

    def __init__(self, gains=None):
        self.gains = gains or PidGains()
        self.state = pid_reset()
        self.queries = 0

    def reset(self):
        self.state = pid_reset(self.state)

    def act(self, state):
        self.queries += 1
        action, self.state = pid_act(state.theta_degrees, self.state, self.gains)
        return action

    def __repr__(self):
        return 'PidExpert(gains={!r})'.format(self.gains)
