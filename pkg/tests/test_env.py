from __future__ import absolute_import, print_function

import math

import numpy as np

from .config import unittest
from . import util

from aqil.env import Action, CartPoleEnv, CartState, PhysicsParams, transition
from aqil.util import ConfigError, NumericalError, radians

def reference_step(x, x_dot, theta, theta_dot, action):
    force = 10.0 if action == 1 else -10.0
    temp = (force + 0.1 * 0.5 * theta_dot * theta_dot * math.sin(theta)) / 1.1
    thetaacc = (9.8 * math.sin(theta) - math.cos(theta) * temp) / (
        0.5 * (4.0 / 3.0 - 0.1 * math.cos(theta) * math.cos(theta) / 1.1))
    xacc = temp - 0.1 * 0.5 * thetaacc * math.cos(theta) / 1.1
    return (x + 0.02 * x_dot,
            x_dot + 0.02 * xacc,
            theta + 0.02 * theta_dot,
            theta_dot + 0.02 * thetaacc)

def random_state(rng):
    return CartState(rng.uniform(-2.0, 2.0), rng.uniform(-3.0, 3.0),
                     rng.uniform(-0.8, 0.8), rng.uniform(-3.0, 3.0))

class TestStep(unittest.TestCase):
    def setUp(self):
        self.params = PhysicsParams()

    def test_push_right_from_rest(self):
        state = transition(CartState(0.0, 0.0, 0.0, 0.0), Action.PUSH_RIGHT, self.params)
        expected = (0.0, 0.195122, 0.0, -0.292683)
        for actual, value in zip(state, expected):
            self.assertAlmostEqual(actual, value, delta=1e-6)

    def test_push_left_mirrors_push_right(self):
        zero = CartState(0.0, 0.0, 0.0, 0.0)
        right = transition(zero, Action.PUSH_RIGHT, self.params)
        left = transition(zero, Action.PUSH_LEFT, self.params)
        self.assertEqual(left, right.negate())

    def test_mirror_symmetry(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            state = random_state(rng)
            action = int(rng.integers(0, 2))
            direct = transition(state, action, self.params).negate()
            mirrored = transition(state.negate(), Action.flip(action), self.params)
            for a, b in zip(direct, mirrored):
                self.assertAlmostEqual(a, b, delta=1e-12)

    def test_matches_reference_transcription(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            state = random_state(rng)
            action = int(rng.integers(0, 2))
            actual = transition(state, action, self.params)
            expected = reference_step(state.x, state.x_dot, state.theta, state.theta_dot, action)
            for a, b in zip(actual, expected):
                self.assertAlmostEqual(a, b, delta=1e-12)

    def test_deterministic(self):
        state = CartState(0.1, -0.2, 0.05, 0.3)
        self.assertEqual(transition(state, 1, self.params), transition(state, 1, self.params))

    def test_non_finite_state(self):
        with self.assertRaises(NumericalError):
            transition(CartState(0.0, float('nan'), 0.0, 0.0), Action.PUSH_LEFT, self.params)
        with self.assertRaises(NumericalError):
            transition(CartState(0.0, 0.0, float('inf'), 0.0), Action.PUSH_LEFT, self.params)

    def test_invalid_action(self):
        with self.assertRaises(ValueError):
            transition(CartState(0.0, 0.0, 0.0, 0.0), 2, self.params)

class TestEpisode(unittest.TestCase):
    def test_reset_zero_draws(self):
        env = CartPoleEnv()
        self.assertEqual(env.reset(util.ZeroRng()), CartState(0.0, 0.0, 0.0, 0.0))
        self.assertEqual(env.steps_elapsed, 0)

    def test_reset_bounds_and_determinism(self):
        env = CartPoleEnv()
        for seed in range(20):
            state = env.reset(np.random.default_rng(seed))
            self.assertTrue(all(abs(v) <= 0.05 for v in state))
            self.assertEqual(state, CartPoleEnv().reset(np.random.default_rng(seed)))

    def test_reset_zeroes_step_counter(self):
        env = CartPoleEnv()
        state = env.reset(np.random.default_rng(0))
        env.step(state, Action.PUSH_LEFT)
        self.assertEqual(env.steps_elapsed, 1)
        env.reset(np.random.default_rng(0))
        self.assertEqual(env.steps_elapsed, 0)

    def test_terminal_past_angle_limit(self):
        env = CartPoleEnv()
        state = CartState(0.0, 0.0, radians(51.0), 0.0)
        for action in Action.ALL:
            env.steps_elapsed = 0
            self.assertTrue(env.step(state, action).terminal)
            env.steps_elapsed = 0
            self.assertTrue(env.step(state.negate(), action).terminal)

    def test_terminal_past_track_edge(self):
        env = CartPoleEnv()
        outcome = env.step(CartState(2.41, 0.0, 0.0, 0.0), Action.PUSH_RIGHT)
        self.assertTrue(outcome.terminal)

    def test_not_terminal_inside_limits(self):
        env = CartPoleEnv()
        outcome = env.step(CartState(0.0, 0.0, radians(49.0), 0.0), Action.PUSH_RIGHT)
        self.assertFalse(outcome.terminal)
        self.assertEqual(outcome.steps_elapsed, 1)

    def test_step_cap_is_terminal(self):
        env = CartPoleEnv(PhysicsParams(max_episode_steps=3))
        state = CartState(0.0, 0.0, 0.0, 0.0)
        outcomes = []
        for action in [1, 0, 1]:
            outcome = env.step(state, action)
            outcomes.append(outcome.terminal)
            state = outcome.next_state
        self.assertEqual(outcomes, [False, False, True])
        # stays terminal once the cap is reached
        self.assertTrue(env.step(CartState(0.0, 0.0, 0.0, 0.0), 0).terminal)

    def test_theta_degrees(self):
        self.assertAlmostEqual(CartState(0.0, 0.0, math.pi / 4, 0.0).theta_degrees, 45.0, places=12)
        self.assertAlmostEqual(PhysicsParams().theta_limit_degrees, 50.0, places=12)

class TestPhysicsParams(unittest.TestCase):
    def test_defaults(self):
        params = PhysicsParams()
        self.assertEqual(params.x_limit, 2.4)
        self.assertEqual(params.max_episode_steps, 50000)
        self.assertAlmostEqual(params.theta_limit, 50 * math.pi / 180, places=15)

    def test_invalid(self):
        with self.assertRaises(ConfigError):
            PhysicsParams(pole_mass=0.0)
        with self.assertRaises(ConfigError):
            PhysicsParams(tau=-0.02)
        with self.assertRaises(ConfigError):
            PhysicsParams(theta_limit=2.0)
        with self.assertRaises(ConfigError):
            PhysicsParams(max_episode_steps=0)

if __name__ == '__main__':
    unittest.main()
