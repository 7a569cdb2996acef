"""Shared example systems used across the test modules."""

import numpy as np
import pytest

from stringstab import SystemDescription


def hurwitz_pair(c=2.0, c0=1.0):
    """Both A and A + BK Hurwitz; certifiable at modest wave speeds."""
    return SystemDescription([[-2.0, 1.0], [0.0, -1.0]], [1.0, 1.0],
                             [0.0, -2.0], c, c0)


def unstable_plant(c=10.0, c0=0.15):
    """A unstable, stabilized through the string by the feedback K."""
    return SystemDescription([[2.0, 1.0], [0.0, 1.0]], [1.0, 1.0],
                             [-10.0, 2.0], c, c0)


def weak_oscillator(c=5.0, c0=0.5):
    """Neither A nor A + BK Hurwitz; needs order N >= 1 to certify."""
    return SystemDescription([[0.0, 1.0], [-2.0, 0.1]], [0.0, 1.0],
                             [1.0, 0.0], c, c0)


def decoupled_string(c=1.0, c0=1.0):
    """B = 0, K = 0: the string evolves independently of the scalar ODE."""
    return SystemDescription([[-1.0]], [[0.0]], [[0.0]], c, c0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240824)
