"""Discrete reflections ``eps^1 .. eps^7`` of the exponential map.

The reflections of the pendulum phase portrait

    eps^1: (g, c) -> (g, -c)          eps^5: (g, c) -> (g + 2pi, -c)
    eps^2: (g, c) -> (-g, c)          eps^6: (g, c) -> (-g + 2pi, c)
    eps^3: (g, c) -> (-g, -c)         eps^7: (g, c) -> (-g + 2pi, -c)
    eps^4: (g, c) -> (g + 2pi, c)

extend to extremals, endpoints and covectors; ``eps^1, eps^2, eps^5,
eps^6`` reverse time along pendulum trajectories.  For every ``i``,
``eps^i(Exp(nu)) = Exp(eps^i(nu))``.
"""
from __future__ import annotations

import math

import numpy as np

from .geodesic_engine import (
    ExtendedCovector,
    GeodesicSample,
    Pose,
    curvature,
    exp_map_arrays,
)
from .phase_cylinder import (
    Covector,
    StratumError,
    StratumId,
    classify,
    flow_arrays,
    pendulum_flow,
    reduce_gamma,
    to_elliptic,
)
from .special_functions import jacobi

__all__ = [
    "REFLECTIONS",
    "TIME_REVERSING",
    "reflect_phase",
    "reflect_covector",
    "reflect_pose",
    "reflect_trajectory",
    "fixed_point_test",
]

REFLECTIONS = (1, 2, 3, 4, 5, 6, 7)
TIME_REVERSING = frozenset({1, 2, 5, 6})

TWO_PI = 2.0 * math.pi

# (sign of gamma, shift of gamma, sign of c)
_PHASE_ACTION = {
    1: (1.0, 0.0, -1.0),
    2: (-1.0, 0.0, 1.0),
    3: (-1.0, 0.0, -1.0),
    4: (1.0, TWO_PI, 1.0),
    5: (1.0, TWO_PI, -1.0),
    6: (-1.0, TWO_PI, 1.0),
    7: (-1.0, TWO_PI, -1.0),
}


def _check(i: int) -> int:
    if i not in _PHASE_ACTION:
        raise ValueError(f"reflection index must be in 1..7, got {i!r}")
    return i


def _phase(i: int, gamma, c):
    sg, shift, sc = _PHASE_ACTION[i]
    return sg * gamma + shift, sc * c


def reflect_phase(i: int, gc: tuple[float, float]) -> tuple[float, float]:
    """Apply ``eps^i`` to a point of the phase cylinder; ``gamma`` in ``[0, 4pi)``."""
    g, c = _phase(_check(i), gc[0], gc[1])
    return reduce_gamma(g), c


def reflect_covector(i: int, nu: ExtendedCovector) -> ExtendedCovector:
    """``nu^i = (lambda^i, t)``, the initial point of the reflected extremal.

    Time-reversing reflections act on the pendulum endpoint
    ``(gamma_t, c_t)`` rather than on ``lambda``.
    """
    _check(i)
    lam = pendulum_flow(nu.lam, nu.t) if i in TIME_REVERSING else nu.lam
    g, c = reflect_phase(i, (lam.gamma, lam.c))
    return ExtendedCovector(Covector(g, c), nu.t)


def reflect_pose(i: int, q: Pose) -> Pose:
    """Action of ``eps^i`` on an endpoint ``q = (x, y, theta)``."""
    _check(i)
    x, y, th = q.x, q.y, q.theta
    ct, st = math.cos(th), math.sin(th)
    if i == 1:
        return Pose(x * ct + y * st, x * st - y * ct, th)
    if i == 2:
        return Pose(-x * ct - y * st, -x * st + y * ct, th)
    if i == 3:
        return Pose(-x, -y, th)
    if i == 4:
        return Pose(-x, y, -th)
    if i == 5:
        return Pose(-x * ct - y * st, x * st - y * ct, -th)
    if i == 6:
        return Pose(x * ct + y * st, -x * st + y * ct, -th)
    return Pose(x, -y, -th)


def reflect_trajectory(i: int, nu: ExtendedCovector, n: int) -> list[GeodesicSample]:
    """Samples of the reflected extremal ``s -> (gamma^i_s, c^i_s, q^i_s)``.

    Built from the original trajectory on the same uniform grid; for the
    time-reversing reflections sample ``j`` uses the original at ``t - s_j``.
    """
    _check(i)
    if n < 2:
        raise ValueError("n must be at least 2")
    t = nu.t
    s = np.linspace(0.0, t, n)
    x, y, th = exp_map_arrays(nu.lam, s)
    x[0] = y[0] = th[0] = 0.0
    g, c = flow_arrays(nu.lam, s)
    g_i, c_i = _phase(i, g, c)
    if i in TIME_REVERSING:
        rev = slice(None, None, -1)
        g_i, c_i = g_i[rev], c_i[rev]
        xt, yt, tht = x[-1], y[-1], th[-1]
        ct, st = math.cos(tht), math.sin(tht)
        dx, dy = xt - x[rev], yt - y[rev]
        dth = tht - th[rev]
        if i == 1:
            xi, yi, thi = ct * dx + st * dy, st * dx - ct * dy, dth
        elif i == 2:
            xi, yi, thi = -ct * dx - st * dy, -st * dx + ct * dy, dth
        elif i == 5:
            xi, yi, thi = -ct * dx - st * dy, st * dx - ct * dy, -dth
        else:
            xi, yi, thi = ct * dx + st * dy, -st * dx + ct * dy, -dth
    elif i == 3:
        xi, yi, thi = -x, -y, th
    elif i == 4:
        xi, yi, thi = -x, y, -th
    else:
        xi, yi, thi = x, -y, -th
    thi = np.angle(np.exp(1j * thi))
    kappa, cusp = curvature(g_i)
    return [
        GeodesicSample(
            float(s[j]),
            Pose(float(xi[j]), float(yi[j]), float(thi[j])),
            float(g_i[j]),
            float(c_i[j]),
            float(kappa[j]),
            bool(cusp[j]),
        )
        for j in range(n)
    ]


def _tau(nu: ExtendedCovector):
    ec = to_elliptic(nu.lam)
    if ec.chart is StratumId.C2:
        return ec, ec.psi + nu.t / (2.0 * ec.k)
    return ec, ec.phi + 0.5 * nu.t


def fixed_point_test(i: int, nu: ExtendedCovector, tol: float = 1e-9) -> bool:
    """Whether ``lambda^i = lambda`` for ``i`` in ``{1, 2, 5, 6}``.

    ====  ==============  ==============  ==========
    i     C1              C2              C3
    ====  ==============  ==============  ==========
    1     ``cn tau = 0``  never           never
    2     ``sn tau = 0``  ``sn tau = 0``  ``tau = 0``
    5     never           never           never
    6     never           ``cn tau = 0``  never
    ====  ==============  ==============  ==========
    """
    if i not in TIME_REVERSING:
        raise ValueError(f"fixed-point test is defined for reflections 1, 2, 5, 6, not {i!r}")
    st = classify(nu.lam)
    if st.id not in (StratumId.C1, StratumId.C2, StratumId.C3):
        raise StratumError(f"fixed-point test needs lambda in C1, C2 or C3, got {st.id.value}")
    if i == 5:
        return False
    ec, tau = _tau(nu)
    chart = ec.chart
    if chart is StratumId.C3:
        return i == 2 and abs(tau) <= tol
    sn, cn, _, _ = jacobi(tau, ec.k)
    if i == 1:
        return chart is StratumId.C1 and abs(cn) <= tol
    if i == 2:
        return abs(sn) <= tol
    return chart is StratumId.C2 and abs(cn) <= tol
