import math

import numpy as np
import pytest

from se2geodesic.geodesic_engine import Pose, angle_diff


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


def pose_err(a: Pose, b) -> float:
    """Max-norm distance; ``b`` may be any object with x, y, theta."""
    return max(abs(a.x - b.x), abs(a.y - b.y), abs(angle_diff(a.theta, b.theta)))


def rk4_ode(rhs, y0, t, steps=4000):
    """Small RK4 used to integrate the defining ODEs of special functions."""
    y = np.array(y0, dtype=float)
    h = t / steps
    for _ in range(steps):
        k1 = rhs(y)
        k2 = rhs(y + 0.5 * h * k1)
        k3 = rhs(y + 0.5 * h * k2)
        k4 = rhs(y + h * k3)
        y = y + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
    return y


TWO_PI = 2.0 * math.pi


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
