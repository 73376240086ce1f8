"""Fully connected Q-network with its own backpropagation

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
import logging

import numpy as np

from .util import ConfigError, check_finite

logger = logging.getLogger(__name__)

RELU = 'relu'
LINEAR = 'linear'

WEIGHT = 'weight'
BIAS = 'bias'

WeightRecord = collections.namedtuple('WeightRecord', ['layer', 'kind', 'row', 'col', 'value'])

def relu(x):
    return np.maximum(x, 0.0)

class Layer(object):
    def __init__(self, weights, biases, activation):
        self.weights = np.array(weights, dtype=np.float64)
        self.biases = np.array(biases, dtype=np.float64)
        self.activation = activation

        if self.weights.ndim != 2:
            raise ValueError("Layer weights must be a matrix")
        if self.biases.shape != (self.weights.shape[0],):
            raise ValueError("Bias shape {} does not match weights {}".format(
                self.biases.shape, self.weights.shape))
        if activation not in (RELU, LINEAR):
            raise ValueError("Unknown activation {!r}".format(activation))

    @property
    def in_dim(self):
        return self.weights.shape[1]

    @property
    def out_dim(self):
        return self.weights.shape[0]

    def copy(self):
        return Layer(self.weights.copy(), self.biases.copy(), self.activation)

    def __repr__(self):
        return 'Layer({}x{},{})'.format(self.out_dim, self.in_dim, self.activation)

class GradientSet(object):
    """Per-layer (weight gradient, bias gradient) pairs"""

    def __init__(self, layers):
        self.layers = [(np.asarray(dw, dtype=np.float64), np.asarray(db, dtype=np.float64))
                       for dw, db in layers]

    @classmethod
    def zeros_like(cls, net):
        return cls([(np.zeros_like(l.weights), np.zeros_like(l.biases)) for l in net.layers])

    def __iter__(self):
        return iter(self.layers)

    def __len__(self):
        return len(self.layers)

    def __getitem__(self, index):
        return self.layers[index]

    def norm(self):
        return float(np.sqrt(sum(np.sum(dw ** 2) + np.sum(db ** 2) for dw, db in self.layers)))

    def scaled(self, factor):
        return GradientSet([(dw * factor, db * factor) for dw, db in self.layers])

    def clipped(self, max_norm):
        norm = self.norm()
        if max_norm and norm > max_norm:
            logger.debug("Clipping gradient norm %.4g to %.4g", norm, max_norm)
            return self.scaled(max_norm / norm)
        return self

    def check_congruent(self, net):
        if len(self.layers) != len(net.layers):
            raise ValueError("Gradient has {} layers, network has {}".format(len(self.layers), len(net.layers)))
        for (dw, db), layer in zip(self.layers, net.layers):
            if dw.shape != layer.weights.shape or db.shape != layer.biases.shape:
                raise ValueError("Gradient shapes {}/{} do not match layer {}".format(
                    dw.shape, db.shape, layer))

class QNetwork(object):
    """ReLU hidden layers, linear output, one Q-value per action"""

    INPUT_DIM = 4
    OUTPUT_DIM = 2

    @classmethod
    def init(cls, hidden_sizes, rng, input_dim=INPUT_DIM, output_dim=OUTPUT_DIM):
        hidden_sizes = list(hidden_sizes or [])
        if not hidden_sizes:
            raise ValueError("hidden_sizes must be non-empty")
        if any(int(n) < 1 for n in hidden_sizes):
            raise ValueError("hidden_sizes must all be positive, got {!r}".format(hidden_sizes))
        sizes = [input_dim] + [int(n) for n in hidden_sizes] + [output_dim]
        layers = []
        for i, (fan_in, fan_out) in enumerate(zip(sizes[:-1], sizes[1:])):
            bound = 1.0 / np.sqrt(fan_in)
            weights = rng.uniform(-bound, bound, size=(fan_out, fan_in))
            activation = LINEAR if i == len(sizes) - 2 else RELU
            layers.append(Layer(weights, np.zeros(fan_out), activation))
        return cls(layers)

    @classmethod
    def zeros(cls, hidden_sizes, input_dim=INPUT_DIM, output_dim=OUTPUT_DIM):
        sizes = [input_dim] + list(hidden_sizes) + [output_dim]
        layers = []
        for i, (fan_in, fan_out) in enumerate(zip(sizes[:-1], sizes[1:])):
            activation = LINEAR if i == len(sizes) - 2 else RELU
            layers.append(Layer(np.zeros((fan_out, fan_in)), np.zeros(fan_out), activation))
        return cls(layers)

    def __init__(self, layers):
        self.layers = list(layers)
        if not self.layers:
            raise ValueError("A network needs at least one layer")
        for prev, layer in zip(self.layers[:-1], self.layers[1:]):
            if prev.out_dim != layer.in_dim:
                raise ValueError("Layer dimensions do not chain: {} -> {}".format(prev, layer))
        if self.layers[-1].activation != LINEAR:
            raise ValueError("Output layer must be linear")
        if any(l.activation != RELU for l in self.layers[:-1]):
            raise ValueError("Hidden layers must be ReLU")
        for layer in self.layers:
            check_finite(layer.weights, 'weights')
            check_finite(layer.biases, 'biases')

    @property
    def sizes(self):
        return [self.layers[0].in_dim] + [l.out_dim for l in self.layers]

    @property
    def parameter_count(self):
        return sum(l.weights.size + l.biases.size for l in self.layers)

    def copy(self):
        return QNetwork([l.copy() for l in self.layers])

    def _forward_cached(self, states):
        """Pre-activations and activations of every layer for a batch"""
        activations = [states]
        pre_activations = []
        a = states
        for layer in self.layers:
            z = a.dot(layer.weights.T) + layer.biases
            a = relu(z) if layer.activation == RELU else z
            pre_activations.append(z)
            activations.append(a)
        return pre_activations, activations

    def forward_batch(self, states):
        states = check_finite(states, 'network input')
        states = np.atleast_2d(states)
        _, activations = self._forward_cached(states)
        return activations[-1]

    def forward(self, state):
        return self.forward_batch(np.asarray(state, dtype=np.float64)[np.newaxis, :])[0]

    def batch_loss_and_gradients(self, states, actions, targets):
        """Mean squared Bellman error over the batch and its exact gradient.
        Targets are constants; only the taken action's Q-value carries gradient."""
        states = np.atleast_2d(check_finite(states, 'network input'))
        actions = np.asarray(actions, dtype=np.intp)
        targets = check_finite(targets, 'Bellman target')
        n = len(states)
        if n == 0:
            raise ValueError("Empty batch")
        if actions.shape != (n,) or targets.shape != (n,):
            raise ValueError("Batch arrays have inconsistent lengths")

        pre_activations, activations = self._forward_cached(states)
        q_values = activations[-1]
        rows = np.arange(n)
        errors = q_values[rows, actions] - targets
        loss = float(np.mean(errors ** 2))

        delta = np.zeros_like(q_values)
        delta[rows, actions] = 2.0 * errors / n

        gradients = [None] * len(self.layers)
        for index in range(len(self.layers) - 1, -1, -1):
            layer = self.layers[index]
            gradients[index] = (delta.T.dot(activations[index]), delta.sum(axis=0))
            if index > 0:
                delta = delta.dot(layer.weights) * (pre_activations[index - 1] > 0)
        return loss, GradientSet(gradients)

    def loss_and_gradients(self, batch):
        """batch: sequence of (state, action, y)"""
        batch = list(batch)
        if not batch:
            raise ValueError("Empty batch")
        states, actions, targets = zip(*batch)
        return self.batch_loss_and_gradients(
            np.array(states, dtype=np.float64),
            np.array(actions),
            np.array(targets, dtype=np.float64))

    def loss(self, batch):
        return self.loss_and_gradients(batch)[0]

    def sgd_step(self, grads, learning_rate):
        grads.check_congruent(self)
        if learning_rate < 0:
            raise ValueError("learning_rate must be non-negative")
        for layer, (dw, db) in zip(self.layers, grads):
            layer.weights -= learning_rate * dw
            layer.biases -= learning_rate * db
        return self

    def sync_target(self):
        return TargetNetwork(self)

    def export_weights(self):
        records = []
        for index, layer in enumerate(self.layers):
            for row in range(layer.out_dim):
                for col in range(layer.in_dim):
                    records.append(WeightRecord(index, WEIGHT, row, col, float(layer.weights[row, col])))
            for row in range(layer.out_dim):
                records.append(WeightRecord(index, BIAS, row, 0, float(layer.biases[row])))
        return records

    @classmethod
    def import_weights(cls, records):
        by_layer = collections.defaultdict(list)
        for record in records:
            if record.kind not in (WEIGHT, BIAS):
                raise ConfigError("Unknown parameter kind {!r}".format(record.kind))
            by_layer[int(record.layer)].append(record)
        if sorted(by_layer) != list(range(len(by_layer))):
            raise ConfigError("Weight records skip layers: {}".format(sorted(by_layer)))

        layers = []
        for index in range(len(by_layer)):
            weight_records = [r for r in by_layer[index] if r.kind == WEIGHT]
            bias_records = [r for r in by_layer[index] if r.kind == BIAS]
            if not weight_records or not bias_records:
                raise ConfigError("Layer {} is missing weights or biases".format(index))
            out_dim = max(r.row for r in weight_records) + 1
            in_dim = max(r.col for r in weight_records) + 1
            if len(weight_records) != out_dim * in_dim or len(bias_records) != out_dim:
                raise ConfigError("Layer {} records do not form a full {}x{} layer".format(index, out_dim, in_dim))
            weights = np.zeros((out_dim, in_dim))
            biases = np.zeros(out_dim)
            for r in weight_records:
                weights[r.row, r.col] = r.value
            for r in bias_records:
                biases[r.row] = r.value
            activation = LINEAR if index == len(by_layer) - 1 else RELU
            layers.append(Layer(weights, biases, activation))
        return cls(layers)

    def __repr__(self):
        return 'QNetwork({})'.format('-'.join(str(n) for n in self.sizes))

class TargetNetwork(object):
    """Frozen snapshot of a QNetwork's parameters"""

    def __init__(self, net):
        self._net = net.copy()
        for layer in self._net.layers:
            layer.weights.setflags(write=False)
            layer.biases.setflags(write=False)

    @property
    def sizes(self):
        return self._net.sizes

    def forward(self, state):
        return self._net.forward(state)

    def forward_batch(self, states):
        return self._net.forward_batch(states)

    def export_weights(self):
        return self._net.export_weights()

    def __repr__(self):
        return 'TargetNetwork({})'.format('-'.join(str(n) for n in self.sizes))

def bellman_target(r, next_state, terminal, target_net, gamma):
    if terminal:
        return float(r)
    return float(r) + gamma * float(np.max(target_net.forward(next_state)))

def bellman_targets(rewards, next_states, terminals, target_net, gamma, value_range=None):
    """Batched targets, optionally clipped to the (low, high) range of attainable returns"""
    rewards = check_finite(rewards, 'reward')
    terminals = np.asarray(terminals, dtype=bool)
    max_q = np.max(target_net.forward_batch(next_states), axis=1)
    targets = np.where(terminals, rewards, rewards + gamma * max_q)
    if value_range is not None:
        targets = np.clip(targets, value_range[0], value_range[1])
    return targets

def return_range(gamma, reward_low=0.0, reward_high=1.0):
    """Bounds on any discounted return with per-step rewards in [reward_low, reward_high]"""
    if gamma >= 1.0:
        return None
    return (reward_low / (1.0 - gamma), reward_high / (1.0 - gamma))

class SGD(object):
    def __init__(self, learning_rate):
        self.learning_rate = learning_rate

    def step(self, net, grads):
        return net.sgd_step(grads, self.learning_rate)

class Adam(object):
    def __init__(self, learning_rate, beta1=0.9, beta2=0.999, epsilon=1e-8):
        self.learning_rate = learning_rate
        self.beta1 = beta1
        self.beta2 = beta2
        self.epsilon = epsilon
        self._t = 0
        self._moments = None

    def step(self, net, grads):
        grads.check_congruent(net)
        if self._moments is None:
            self._moments = [(np.zeros_like(dw), np.zeros_like(db), np.zeros_like(dw), np.zeros_like(db))
                             for dw, db in grads]
        self._t += 1
        correction1 = 1.0 - self.beta1 ** self._t
        correction2 = 1.0 - self.beta2 ** self._t
        updates = []
        for (dw, db), (mw, mb, vw, vb) in zip(grads, self._moments):
            for m, v, g in ((mw, vw, dw), (mb, vb, db)):
                m *= self.beta1
                m += (1.0 - self.beta1) * g
                v *= self.beta2
                v += (1.0 - self.beta2) * g ** 2
            updates.append(((mw / correction1) / (np.sqrt(vw / correction2) + self.epsilon),
                            (mb / correction1) / (np.sqrt(vb / correction2) + self.epsilon)))
        return net.sgd_step(GradientSet(updates), self.learning_rate)

OPTIMIZERS = {
    'sgd': SGD,
    'adam': Adam,
}

def make_optimizer(name, learning_rate):
    if name not in OPTIMIZERS:
        raise ConfigError("Unknown optimizer {!r}; choose from {}".format(name, ', '.join(sorted(OPTIMIZERS))))
    return OPTIMIZERS[name](learning_rate)

def finite_difference_gradients(net, batch, eps=1e-5):
    """
    Central-difference gradient of the batch loss with respect to every
    parameter of net. Parameters are perturbed in place and restored.
    """
    batch = list(batch)
    logger.debug("Finite differences over %d parameters", net.parameter_count)
    gradients = []
    for layer in net.layers:
        layer_grads = []
        for array in (layer.weights, layer.biases):
            grad = np.zeros_like(array)
            for index in np.ndindex(*array.shape):
                original = array[index]
                array[index] = original + eps
                fplus = net.loss(batch)
                array[index] = original - eps
                fminus = net.loss(batch)
                array[index] = original
                grad[index] = (fplus - fminus) / (2 * eps)
            layer_grads.append(grad)
        gradients.append(tuple(layer_grads))
    return GradientSet(gradients)

WEIGHTS_HEADER_PREFIX = '# architecture:'

def write_weights(fp, net):
    """Plain-text export: architecture header, then one `layer,kind,row,col,value` per line"""
    fp.write('{} {}\n'.format(WEIGHTS_HEADER_PREFIX, '-'.join(str(n) for n in net.sizes)))
    fp.write('layer,kind,row,col,value\n')
    for record in net.export_weights():
        fp.write('{},{},{},{},{!r}\n'.format(record.layer, record.kind, record.row, record.col, record.value))

def read_weights(fp):
    records = []
    sizes = None
    for line_number, line in enumerate(fp, 1):
        line = line.strip()
        if not line:
            continue
        if line.startswith(WEIGHTS_HEADER_PREFIX):
            try:
                sizes = [int(n) for n in line[len(WEIGHTS_HEADER_PREFIX):].strip().split('-')]
            except ValueError:
                raise ConfigError("Bad architecture header on line {}".format(line_number))
            continue
        if line.startswith('#') or line.startswith('layer,'):
            continue
        parts = line.split(',')
        if len(parts) != 5:
            raise ConfigError("Bad weight record on line {}: {!r}".format(line_number, line))
        try:
            records.append(WeightRecord(int(parts[0]), parts[1], int(parts[2]), int(parts[3]), float(parts[4])))
        except ValueError:
            raise ConfigError("Bad weight record on line {}: {!r}".format(line_number, line))
    net = QNetwork.import_weights(records)
    if sizes is not None and sizes != net.sizes:
        raise ConfigError("Architecture header {} does not match records {}".format(sizes, net.sizes))
    return net
