"""Closed-form exponential map of the sub-Riemannian problem on SE(2).

Arclength-parametrized geodesics from the identity satisfy

    x' = sin(gamma/2) cos(theta),  y' = sin(gamma/2) sin(theta),
    theta' = -cos(gamma/2),

with ``(gamma, c)`` following the pendulum.  On each stratum the endpoint
``Exp(lambda, t) = (x_t, y_t, theta_t)`` is an explicit expression in Jacobi
functions (C1, C2), hyperbolic functions (C3), or elementary ones (C4, C5).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .phase_cylinder import (
    Covector,
    EllipticCoords,
    StratumError,
    StratumId,
    classify,
    flow_arrays,
    to_elliptic,
)
from .special_functions import jacobi, p_minus_E

__all__ = [
    "CUSP_TOL",
    "Pose",
    "ExtendedCovector",
    "GeodesicSample",
    "EndpointFunctions",
    "exp_map",
    "exp_map_arrays",
    "trace",
    "closed_form_endpoint_functions",
    "angle_diff",
    "pose_distance",
    "curvature",
]

CUSP_TOL = 1e-9


def angle_diff(a: float, b: float) -> float:
    """Signed difference ``a - b`` reduced to ``[-pi, pi]``."""
    return math.remainder(a - b, 2.0 * math.pi)


@dataclass(frozen=True)
class Pose:
    """Element ``(x, y, theta)`` of SE(2); ``theta`` is an angle mod ``2 pi``."""

    x: float
    y: float
    theta: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.theta)


def pose_distance(q1: Pose, q2: Pose) -> float:
    """Max-norm distance with ``theta`` compared on the circle."""
    return max(abs(q1.x - q2.x), abs(q1.y - q2.y), abs(angle_diff(q1.theta, q2.theta)))


@dataclass(frozen=True)
class ExtendedCovector:
    """Argument ``nu = (lambda, t)`` of the exponential map."""

    lam: Covector
    t: float

    def __post_init__(self):
        if not (math.isfinite(self.lam.gamma) and math.isfinite(self.lam.c)):
            raise ValueError("covector components must be finite")
        if not (math.isfinite(self.t) and self.t > 0.0):
            raise ValueError(f"time must be finite and positive, got {self.t!r}")


@dataclass(frozen=True)
class GeodesicSample:
    s: float
    pose: Pose
    gamma_s: float
    c_s: float
    curvature: float
    cusp: bool


@dataclass(frozen=True)
class EndpointFunctions:
    """Endpoint quantities in the reduced variables ``p`` and ``tau``.

    The half-angle pair fixes the branch of ``theta_t / 2``; ``R1`` and
    ``R2`` are taken with respect to that same branch.
    """

    stratum: StratumId
    k: float
    p: float
    tau: float
    sin_theta: float
    cos_half_theta: float
    sin_half_theta: float
    R1: float
    R2: float


def _pose_C1(ec: EllipticCoords, t: np.ndarray):
    k, s1 = ec.k, ec.s1
    a, b = ec.phi, ec.phi + t
    sa, ca, da, _ = jacobi(a, k)
    sb, cb, db, _ = jacobi(b, k)
    # t + E(a) - E(b), and (dn a - dn b) / k, both without cancellation
    w_over_k = (p_minus_E(b, k) - p_minus_E(a, k)) / k
    ddn_over_k = k * (sb * sb - sa * sa) / (da + db)
    cos_th = ca * cb + sa * sb
    sin_th = s1 * (sa * cb - ca * sb)
    x = s1 * (ca * ddn_over_k + sa * w_over_k)
    y = sa * ddn_over_k - ca * w_over_k
    return x, y, np.arctan2(sin_th, cos_th)


def _pose_C2(ec: EllipticCoords, t: np.ndarray):
    k, s2 = ec.k, ec.s2
    a = ec.psi
    b = a + t / k
    sa, ca, da, _ = jacobi(a, k)
    sb, cb, db, _ = jacobi(b, k)
    w = p_minus_E(b, k) - p_minus_E(a, k)  # t/k + E(psi) - E(psi_t)
    cos_th = k * k * sa * sb + da * db
    sin_th = k * (sa * db - da * sb)
    x = s2 * k * (da * (ca - cb) + sa * w)
    y = s2 * (k * k * sa * (ca - cb) - da * w)
    return x, y, np.arctan2(sin_th, cos_th)


def _pose_C3(ec: EllipticCoords, t: np.ndarray):
    s1, s2 = ec.s1, ec.s2
    a = ec.phi
    b = a + t
    tha, thb = np.tanh(a), np.tanh(b)
    sha, shb = 1.0 / np.cosh(a), 1.0 / np.cosh(b)
    cos_th = sha * shb + tha * thb
    sin_th = s1 * (tha * shb - thb * sha)
    w = t + tha - thb
    x = s1 * s2 * (sha * (sha - shb) + tha * w)
    y = s2 * (tha * (sha - shb) - sha * w)
    return x, y, np.arctan2(sin_th, cos_th)


_CHART_POSES = {
    StratumId.C1: _pose_C1,
    StratumId.C2: _pose_C2,
    StratumId.C3: _pose_C3,
}


def exp_map_arrays(lam: Covector, ts) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(x, y, theta)`` arrays of ``Exp(lam, s)`` for each ``s`` in ``ts``.

    ``theta`` is returned in ``(-pi, pi]``.  ``ts`` may contain 0.
    """
    ts = np.asarray(ts, dtype=float)
    if not (math.isfinite(lam.gamma) and math.isfinite(lam.c)) or not np.all(np.isfinite(ts)):
        raise ValueError("non-finite input to the exponential map")
    st = classify(lam)
    half = 0.5 * lam.gamma
    if st.id is StratumId.C4:
        s1 = 1.0 if math.cos(half) > 0.0 else -1.0
        zero = np.zeros_like(ts)
        return zero, zero.copy(), np.angle(np.exp(-1j * s1 * ts))
    if st.id is StratumId.C5:
        sgn = 1.0 if math.sin(half) > 0.0 else -1.0
        zero = np.zeros_like(ts)
        return sgn * ts, zero, zero.copy()
    ec = to_elliptic(lam)
    return _CHART_POSES[ec.chart](ec, ts)


def exp_map(nu: ExtendedCovector) -> Pose:
    """Endpoint ``Exp(lambda, t)`` of the arclength geodesic."""
    x, y, th = exp_map_arrays(nu.lam, nu.t)
    return Pose(float(x), float(y), float(th))


def curvature(gamma_s) -> tuple[np.ndarray, np.ndarray]:
    """Signed curvature ``-cot(gamma/2)`` and the cusp mask.

    The sign refers to the heading ``(cos theta, sin theta)``; at cusps the
    curvature is reported as ``inf``.
    """
    half = 0.5 * np.asarray(gamma_s, dtype=float)
    sin_h, cos_h = np.sin(half), np.cos(half)
    cusp = np.abs(sin_h) < CUSP_TOL
    with np.errstate(divide="ignore", invalid="ignore"):
        kappa = np.where(cusp, np.inf, -cos_h / np.where(cusp, 1.0, sin_h))
    return kappa, cusp


def trace(nu: ExtendedCovector, n_samples: int) -> list[GeodesicSample]:
    """``n_samples`` equally spaced points of the geodesic on ``[0, t]``."""
    if n_samples < 2:
        raise ValueError("n_samples must be at least 2")
    s = np.linspace(0.0, nu.t, n_samples)
    x, y, th = exp_map_arrays(nu.lam, s)
    x[0] = y[0] = th[0] = 0.0
    g, c = flow_arrays(nu.lam, s)
    kappa, cusp = curvature(g)
    end = exp_map(nu)
    out = []
    for j in range(n_samples):
        pose = end if j == n_samples - 1 else Pose(float(x[j]), float(y[j]), float(th[j]))
        out.append(
            GeodesicSample(
                float(s[j]), pose, float(g[j]), float(c[j]), float(kappa[j]), bool(cusp[j])
            )
        )
    return out


def closed_form_endpoint_functions(nu: ExtendedCovector) -> EndpointFunctions:
    """``sin theta``, ``theta/2`` half-angles, ``R1`` and ``R2`` of ``Exp(nu)``.

    Here ``R1 = y cos(theta/2) - x sin(theta/2)`` and
    ``R2 = x cos(theta/2) + y sin(theta/2)``.  With
    ``Delta = 1 - k^2 sn^2 p sn^2 tau``:

    on C1 (``p = t/2``, ``tau = phi + p``)::

        cos(theta/2) = cn p / sqrt(Delta)
        sin(theta/2) = -s1 sn p dn tau / sqrt(Delta)
        R1 = -2 (p - E(p)) cn tau / (k sqrt(Delta))
        R2 = 2 s1 (k^2 sn p cn p + dn p (p - E(p))) sn tau / (k sqrt(Delta))

    on C2 (``p = t/(2k)``, ``tau = psi + p``)::

        cos(theta/2) = dn p / sqrt(Delta)
        sin(theta/2) = -k sn p cn tau / sqrt(Delta)
        R1 = -2 s2 (p - E(p)) dn tau / sqrt(Delta)
        R2 = -2 s2 k f1(p) sn tau / sqrt(Delta)
    """
    lam = nu.lam
    st = classify(lam)
    if st.id not in (StratumId.C1, StratumId.C2):
        raise StratumError(f"closed forms in (p, tau) are given on C1 and C2, not {st.id.value}")
    ec = to_elliptic(lam)
    if ec.chart is StratumId.C3:
        raise StratumError("covector lies in the separatrix band; use the C3 limit")
    k = ec.k
    if ec.chart is StratumId.C1:
        p = 0.5 * nu.t
        tau = ec.phi + p
    else:
        p = nu.t / (2.0 * k)
        tau = ec.psi + p
    sp, cp, dp, _ = jacobi(p, k)
    st_, ct, dt, _ = jacobi(tau, k)
    pme = p_minus_E(p, k)
    delta = 1.0 - k * k * sp * sp * st_ * st_
    root = math.sqrt(delta)
    if ec.chart is StratumId.C1:
        s1 = ec.s1
        sin_theta = -s1 * 2.0 * cp * sp * dt / delta
        ch = cp / root
        sh = -s1 * sp * dt / root
        R1 = -2.0 * pme * ct / (k * root)
        R2 = 2.0 * s1 * (k * k * sp * cp + dp * pme) * st_ / (k * root)
    else:
        s2 = ec.s2
        f1 = -cp * pme - dp * sp
        sin_theta = -2.0 * k * sp * dp * ct / delta
        ch = dp / root
        sh = -k * sp * ct / root
        R1 = -2.0 * s2 * pme * dt / root
        R2 = -2.0 * s2 * k * f1 * st_ / root
    return EndpointFunctions(ec.chart, k, p, tau, sin_theta, ch, sh, R1, R2)
