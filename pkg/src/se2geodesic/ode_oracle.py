"""Fixed-step RK4 integration of the raw normal Hamiltonian system.

This is the independent reference the closed forms are checked against:
it uses only trigonometric functions, no elliptic machinery.

    gamma' = c,  c' = -sin(gamma),
    x' = sin(gamma/2) cos(theta),  y' = sin(gamma/2) sin(theta),
    theta' = -cos(gamma/2)
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .phase_cylinder import Covector

__all__ = [
    "ResolutionError",
    "FullState",
    "min_steps",
    "default_steps",
    "integrate",
    "integrate_many",
    "integrate_pendulum",
]

# minimum number of steps per unit time
_MIN_STEPS_PER_UNIT = 1000
_DEFAULT_STEPS = 100_000


class ResolutionError(ValueError):
    """Requested step count is below the enforced minimum resolution."""


@dataclass(frozen=True)
class FullState:
    gamma: float
    c: float
    x: float
    y: float
    theta: float


def min_steps(t: float) -> int:
    return math.ceil(_MIN_STEPS_PER_UNIT * abs(t))


def default_steps(t: float) -> int:
    """Step count giving ``h = t / 1e5``, raised to the minimum if needed."""
    return max(_DEFAULT_STEPS, min_steps(t))


def _rhs(z: np.ndarray) -> np.ndarray:
    g, c, _, _, th = z
    sh, ch = np.sin(0.5 * g), np.cos(0.5 * g)
    return np.stack([c, -np.sin(g), sh * np.cos(th), sh * np.sin(th), -ch])


def _rhs_pendulum(z: np.ndarray) -> np.ndarray:
    return np.stack([z[1], -np.sin(z[0])])


def _rk4(rhs, z: np.ndarray, h: np.ndarray, steps: int) -> np.ndarray:
    half = 0.5 * h
    sixth = h / 6.0
    for _ in range(steps):
        k1 = rhs(z)
        k2 = rhs(z + half * k1)
        k3 = rhs(z + half * k2)
        k4 = rhs(z + h * k3)
        z = z + sixth * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return z


def _check_steps(ts: np.ndarray, steps: int) -> None:
    need = min_steps(float(np.max(np.abs(ts)))) if ts.size else 0
    if steps < need:
        raise ResolutionError(f"{steps} steps is below the minimum {need} for t = {np.max(np.abs(ts))}")


def integrate_many(gammas, cs, ts, steps: int | None = None) -> np.ndarray:
    """Integrate a batch of geodesics at once.

    Returns an array of shape ``(5, n)`` with rows ``gamma, c, x, y, theta``.
    Each column ``j`` uses the step ``ts[j] / steps``.
    """
    gammas, cs, ts = np.broadcast_arrays(
        np.asarray(gammas, float), np.asarray(cs, float), np.asarray(ts, float)
    )
    gammas, cs, ts = gammas.ravel(), cs.ravel(), ts.ravel()
    if steps is None:
        steps = default_steps(float(np.max(np.abs(ts))) if ts.size else 0.0)
    _check_steps(ts, steps)
    z0 = np.stack([gammas, cs, np.zeros_like(ts), np.zeros_like(ts), np.zeros_like(ts)])
    return _rk4(_rhs, z0, ts / steps, steps)


def integrate(lambda0: Covector, t: float, steps: int | None = None) -> FullState:
    """State at time ``t`` of the geodesic with initial covector ``lambda0``.

    ``theta`` is left unwrapped.
    """
    z = integrate_many(lambda0.gamma, lambda0.c, t, steps)[:, 0]
    return FullState(*(float(v) for v in z))


def integrate_pendulum(lambda0: Covector, t: float, steps: int | None = None) -> Covector:
    """Pendulum alone: ``(gamma_t, c_t)`` with ``gamma`` unwrapped."""
    ts = np.atleast_1d(float(t))
    if steps is None:
        steps = default_steps(float(t))
    _check_steps(ts, steps)
    z0 = np.array([[lambda0.gamma], [lambda0.c]], dtype=float)
    z = _rk4(_rhs_pendulum, z0, ts / steps, steps)
    return Covector(float(z[0, 0]), float(z[1, 0]))
