from __future__ import absolute_import, print_function

import math

import numpy as np

from .config import unittest

from aqil.env import Action
from aqil.reward import DEFAULT_PARAMS, RewardParams, imitation_reward, rl_reward
from aqil.util import ConfigError, NumericalError

class TestRlReward(unittest.TestCase):
    def test_upright_is_one(self):
        self.assertEqual(rl_reward(0.0), 1.0)

    def test_one_sigma(self):
        self.assertAlmostEqual(rl_reward(10.0), 0.606531, delta=1e-6)
        self.assertAlmostEqual(rl_reward(-10.0), 0.606531, delta=1e-6)

    def test_even_positive_and_decreasing(self):
        thetas = np.linspace(0.0, 50.0, 101)
        values = [rl_reward(t) for t in thetas]
        for t, value in zip(thetas, values):
            self.assertEqual(value, rl_reward(-t))
            self.assertGreater(value, 0.0)
            self.assertLessEqual(value, 1.0)
        for a, b in zip(values, values[1:]):
            self.assertGreater(a, b)

    def test_non_finite(self):
        with self.assertRaises(NumericalError):
            rl_reward(float('inf'))

class TestImitationReward(unittest.TestCase):
    def test_agreeing_upright_is_one(self):
        self.assertAlmostEqual(imitation_reward(0.0, Action.PUSH_LEFT, Action.PUSH_LEFT), 1.0, places=15)

    def test_disagreeing_upright(self):
        value = imitation_reward(0.0, Action.PUSH_RIGHT, Action.PUSH_LEFT)
        self.assertAlmostEqual(value, 0.308268, delta=1e-6)
        self.assertAlmostEqual(value, 0.2 + 0.8 * math.exp(-2.0), places=12)

    def test_agreeing_at_one_sigma(self):
        self.assertAlmostEqual(imitation_reward(10.0, Action.PUSH_RIGHT, Action.PUSH_RIGHT),
                               0.921306, delta=1e-6)

    def test_weighted_sum_of_terms(self):
        rng = np.random.default_rng(8)
        for _ in range(50):
            theta = float(rng.uniform(-50.0, 50.0))
            a_pid, a_model = (int(a) for a in rng.integers(0, 2, size=2))
            action_term = 1.0 if a_pid == a_model else math.exp(-2.0)
            expected = 0.2 * rl_reward(theta) + 0.8 * action_term
            self.assertAlmostEqual(imitation_reward(theta, a_pid, a_model), expected, places=12)

    def test_agreement_always_beats_disagreement(self):
        for theta in np.linspace(-50.0, 50.0, 21):
            self.assertGreater(imitation_reward(theta, 1, 1), imitation_reward(theta, 1, 0))
            self.assertEqual(imitation_reward(theta, 1, 0), imitation_reward(theta, 0, 1))

class TestRewardParams(unittest.TestCase):
    def test_defaults(self):
        self.assertEqual(DEFAULT_PARAMS, RewardParams(0.0, 10.0, 0.5, 0.2, 0.8))

    def test_custom_sigma(self):
        params = RewardParams(sigma1=5.0)
        self.assertAlmostEqual(rl_reward(5.0, params), math.exp(-0.5), places=15)

    def test_invalid(self):
        with self.assertRaises(ConfigError):
            RewardParams(sigma1=0.0)
        with self.assertRaises(ConfigError):
            RewardParams(w_angle=0.5, w_action=0.6)
        with self.assertRaises(ConfigError):
            RewardParams(w_angle=-0.1, w_action=1.1)

if __name__ == '__main__':
    unittest.main()
