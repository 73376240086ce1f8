"""Loading experiment files processed by aqil

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
import os.path

import yaml

from .experiment import DEFAULT_SEEDS, ExperimentSpec
from .trainer import TrainConfig
from .util import ConfigError, parse_seeds

logger = logging.getLogger(__name__)

ExperimentFileData = collections.namedtuple('ExperimentFileData', ['specs', 'seeds', 'output_dir'])

COMMON_KEY = '.COMMON'
SEEDS_KEY = '.SEEDS'
OUTPUT_KEY = '.OUTPUT'

DISABLE_KEYS = ('Disable', 'Disabled', 'disable')

DEFAULT_OUTPUT_DIR = 'runs'

def parse_override(name, value):
    """Parse a command-line override value as a YAML scalar (or flow list)"""
    if name not in TrainConfig.DEFAULTS:
        raise ConfigError("Unknown config key {}".format(name))
    try:
        return yaml.safe_load(value)
    except yaml.YAMLError as e:
        raise ConfigError("Cannot parse value for {}: {}".format(name, e))

def parse_experiment_file(obj, seeds=None, output_dir=None, overrides=None):
    """
    Top-level keys are experiment names. `.COMMON` is merged into every
    experiment, `.SEEDS` and `.OUTPUT` set the defaults for seeds and
    output directory. Explicit arguments win over the file.
    """
    if not isinstance(obj, dict):
        raise ConfigError("An experiment file must be a mapping of experiment names")
    overrides = overrides or {}

    common_data = obj.get(COMMON_KEY) or {}
    if not isinstance(common_data, dict):
        raise ConfigError("{} must be a mapping".format(COMMON_KEY))

    if seeds is None:
        file_seeds = obj.get(SEEDS_KEY)
        try:
            seeds = parse_seeds(file_seeds) if file_seeds is not None else list(DEFAULT_SEEDS)
        except (TypeError, ValueError) as e:
            raise ConfigError("Invalid {}: {}".format(SEEDS_KEY, e))

    if output_dir is None:
        output_dir = obj.get(OUTPUT_KEY) or DEFAULT_OUTPUT_DIR

    specs = []
    for name, data in obj.items():
        if not isinstance(name, six.string_types):
            raise ConfigError("Experiment names must be strings, got {!r}".format(name))
        if name.startswith('.'):
            continue

        if data is None:
            data = {}
        elif isinstance(data, list):
            data = {'phases': data}
        elif not isinstance(data, dict):
            raise ConfigError("Experiment {} must be a mapping or a phase list".format(name))

        experiment_data = {}
        experiment_data.update(common_data)
        experiment_data.update(data)
        experiment_data.update(overrides)

        disabled = [experiment_data.pop(key, False) for key in DISABLE_KEYS]
        if any(disabled):
            logger.info("Skipping disabled experiment %s", name)
            continue

        try:
            specs.append(ExperimentSpec.load(name, experiment_data, seeds=seeds, output_dir=output_dir))
        except (TypeError, ValueError) as e:
            if isinstance(e, ConfigError):
                raise ConfigError("{}: {}".format(name, e))
            raise ConfigError("{}: invalid phases ({})".format(name, e))

    if not specs:
        raise ConfigError("No enabled experiments in file")
    return ExperimentFileData(specs, seeds, output_dir)

def load_experiment_file(path, seeds=None, output_dir=None, overrides=None):
    logger.info("Loading %s", path)
    try:
        with open(path) as fp:
            obj = yaml.safe_load(fp)
    except (IOError, OSError) as e:
        raise ConfigError("Cannot read {}: {}".format(path, e))
    except yaml.YAMLError as e:
        raise ConfigError("Cannot parse {}: {}".format(path, e))
    return parse_experiment_file(obj, seeds=seeds, output_dir=output_dir, overrides=overrides)

def resolve_experiments(target, seeds=None, output_dir=None, overrides=None):
    """A path to an experiment file, or an experiment name like IL250+RL250"""
    if os.path.isfile(target):
        return load_experiment_file(target, seeds=seeds, output_dir=output_dir, overrides=overrides).specs
    config = TrainConfig.load(overrides or {})
    return [ExperimentSpec(target, config=config,
                           seeds=seeds if seeds is not None else list(DEFAULT_SEEDS),
                           output_dir=output_dir or DEFAULT_OUTPUT_DIR)]
