"""Utility functions

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
import math
import re
import collections

import numpy as np

class ConfigError(ValueError):
    pass

class NumericalError(ArithmeticError):
    """A state, input or parameter stopped being finite."""
    pass

def degrees(radians):
    return radians * 180.0 / math.pi

def radians(degrees):
    return degrees * math.pi / 180.0

def check_finite(values, what='value'):
    array = np.asarray(values, dtype=np.float64)
    if not np.all(np.isfinite(array)):
        raise NumericalError("Non-finite {}: {!r}".format(what, values))
    return array

RandomStreams = collections.namedtuple('RandomStreams', ['init', 'env', 'explore', 'replay'])

def make_rng(seed):
    return np.random.default_rng(seed)

def spawn_streams(seed):
    """Independent generators for network init, episode resets,
    exploration and replay sampling, all derived from one seed."""
    children = np.random.SeedSequence(seed).spawn(len(RandomStreams._fields))
    return RandomStreams(*[np.random.default_rng(c) for c in children])

_SEED_RANGE_PATTERN = re.compile(r'^(\d+)-(\d+)$')

def parse_seeds(s):
    """Parse '1,2,3' or '1-5' (or a mix) into a list of ints"""
    if not isinstance(s, six.string_types):
        return _non_negative([int(v) for v in s])
    seeds = []
    for part in s.split(','):
        part = part.strip()
        if not part:
            continue
        match = _SEED_RANGE_PATTERN.match(part)
        if match:
            start, end = int(match.group(1)), int(match.group(2))
            if end < start:
                raise ValueError("Invalid seed range {}".format(part))
            seeds.extend(range(start, end + 1))
        else:
            seeds.append(int(part))
    if not seeds:
        raise ValueError("No seeds in {!r}".format(s))
    return _non_negative(seeds)

def _non_negative(seeds):
    for seed in seeds:
        if seed < 0:
            raise ConfigError("Seeds must be non-negative, got {}".format(seed))
    return seeds

def running_mean(values, window):
    """Trailing mean over at most `window` previous values, per position"""
    values = np.asarray(values, dtype=np.float64)
    if len(values) == 0:
        return values
    cumsum = np.concatenate([[0.0], np.cumsum(values)])
    idx = np.arange(1, len(values) + 1)
    start = np.maximum(idx - window, 0)
    return (cumsum[idx] - cumsum[start]) / (idx - start)
