"""Jacobi elliptic functions and elliptic integrals in double precision.

Everything here is built on the arithmetic-geometric mean (AGM) of
``1`` and ``k' = sqrt(1 - k**2)``:

* ``K(k) = pi / (2 a_N)``;
* ``sn, cn, dn, am`` by the descending Landen recursion started from
  ``phi_N = 2**N a_N u`` (DLMF 22.20.ii);
* Jacobi's epsilon ``E(u) = int_0^u dn^2`` as ``(E/K) u + Z(u)`` where the
  zeta function is the sum ``sum_n c_n sin(phi_n)`` over the same phases;
* the inverse amplitude ``F(phi, k)`` by the forward Landen recursion.

The modulus ``k`` is always a scalar; the argument ``u`` may be a scalar
or a numpy array.  Scalar input gives float output.
"""
from __future__ import annotations

import math
from functools import lru_cache
from typing import NamedTuple

import numpy as np

__all__ = [
    "EllipticDomainError",
    "NearSeparatrixError",
    "K_MAX",
    "JacobiTriple",
    "complete_K",
    "complete_E",
    "jacobi",
    "epsilon_incomplete",
    "incomplete_F",
    "p_minus_E",
]

#: Largest modulus accepted by the table-driven routines.
K_MAX = 1.0 - 1e-9

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)
_PANEL_WIDTH = 0.5


class EllipticDomainError(ValueError):
    """Argument or modulus outside the supported domain."""


class NearSeparatrixError(EllipticDomainError):
    """Modulus too close to 1 for the AGM/Landen machinery.

    Callers are expected to switch to the hyperbolic (``k = 1``) formulas.
    """


class JacobiTriple(NamedTuple):
    sn: float | np.ndarray
    cn: float | np.ndarray
    dn: float | np.ndarray
    am: float | np.ndarray


class _AGM(NamedTuple):
    k: float
    kp: float
    a: tuple[float, ...]
    b: tuple[float, ...]
    c: tuple[float, ...]
    K: float
    E: float
    # k^2 * int_0^{2K} sn^2 = 2 (K - E), kept in cancellation-free form
    two_K_minus_E: float


def _check_modulus(k: float) -> float:
    k = float(k)
    if not math.isfinite(k) or k < 0.0 or k >= 1.0:
        raise EllipticDomainError(f"modulus must satisfy 0 <= k < 1, got {k!r}")
    if k > K_MAX:
        raise NearSeparatrixError(
            f"modulus k = {k!r} is within 1e-9 of 1; use the k = 1 formulas"
        )
    return k


@lru_cache(maxsize=4096)
def _agm(k: float) -> _AGM:
    kp = math.sqrt((1.0 - k) * (1.0 + k))
    a, b, c = [1.0], [kp], [k]
    while c[-1] > 1e-17 * a[-1] and len(a) < 40:
        an, bn = a[-1], b[-1]
        a.append(0.5 * (an + bn))
        b.append(math.sqrt(an * bn))
        c.append(0.5 * (an - bn))
    K = math.pi / (2.0 * a[-1])
    # sum 2^n c_n^2 over n >= 0 (c_0 = k)
    s = sum(2.0**n * cn * cn for n, cn in enumerate(c))
    return _AGM(k, kp, tuple(a), tuple(b), tuple(c), K, K * (1.0 - 0.5 * s), K * s)


def _as_array(u, name: str = "u") -> tuple[np.ndarray, bool]:
    arr = np.asarray(u, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise EllipticDomainError(f"{name} must be finite")
    return arr, arr.ndim == 0


def _out(x: np.ndarray, scalar: bool):
    return float(x) if scalar else x


def complete_K(k: float) -> float:
    """Complete elliptic integral of the first kind ``K(k)``."""
    return _agm(_check_modulus(k)).K


def complete_E(k: float) -> float:
    """Complete elliptic integral of the second kind ``E(k)``."""
    return _agm(_check_modulus(k)).E


def _landen_phases(u0: np.ndarray, g: _AGM) -> list[np.ndarray]:
    """Phases ``phi_0 .. phi_N`` for reduced arguments ``|u0| <= K``."""
    n = len(g.a) - 1
    phi = (2.0**n) * g.a[-1] * u0
    phases = [phi]
    for j in range(n, 0, -1):
        phi = 0.5 * (phi + np.arcsin(g.c[j] / g.a[j] * np.sin(phi)))
        phases.append(phi)
    phases.reverse()
    return phases


def _reduce(u: np.ndarray, K: float) -> tuple[np.ndarray, np.ndarray]:
    m = np.rint(u / (2.0 * K))
    return u - 2.0 * K * m, m


def jacobi(u, k: float) -> JacobiTriple:
    """Jacobi ``sn, cn, dn`` and the continuous amplitude ``am`` at ``(u, k)``.

    ``am`` is unwrapped with ``am(0) = 0`` and ``am(u + 2K) = am(u) + pi``.
    """
    k = _check_modulus(k)
    u, scalar = _as_array(u)
    g = _agm(k)
    u0, m = _reduce(u, g.K)
    if k == 0.0:
        am = u.copy()
    else:
        am = _landen_phases(u0, g)[0] + np.pi * m
    sn = np.sin(am)
    cn = np.cos(am)
    # dn^2 = k'^2 + k^2 cn^2 avoids cancellation near the separatrix
    dn = np.sqrt(g.kp * g.kp + k * k * cn * cn)
    return JacobiTriple(*(_out(v, scalar) for v in (sn, cn, dn, am)))


def epsilon_incomplete(u, k: float):
    """Jacobi's epsilon function ``E(u, k) = int_0^u dn(t, k)^2 dt``."""
    k = _check_modulus(k)
    u, scalar = _as_array(u)
    g = _agm(k)
    if k == 0.0:
        return _out(u.copy(), scalar)
    u0, m = _reduce(u, g.K)
    phases = _landen_phases(u0, g)
    zeta = np.zeros_like(u0)
    for j in range(1, len(phases)):
        zeta = zeta + g.c[j] * np.sin(phases[j])
    return _out(g.E / g.K * u0 + zeta + 2.0 * g.E * m, scalar)


def incomplete_F(phi, k: float):
    """Incomplete integral of the first kind; the inverse of ``am(., k)``.

    ``phi`` is an unwrapped amplitude; ``F(phi + pi) = F(phi) + 2K``.
    """
    k = _check_modulus(k)
    phi, scalar = _as_array(phi, "phi")
    g = _agm(k)
    j = np.rint(phi / np.pi)
    ph = phi - np.pi * j
    if k == 0.0:
        return _out(phi.copy(), scalar)
    for n in range(len(g.a) - 1):
        ph = ph + np.arctan(g.b[n] / g.a[n] * np.tan(ph)) + np.pi * np.rint(ph / np.pi)
    n = len(g.a) - 1
    return _out(ph / (2.0**n * g.a[-1]) + 2.0 * g.K * j, scalar)


def _sn2_integral(u0: np.ndarray, k: float) -> np.ndarray:
    """``int_0^{u0} sn^2`` by composite Gauss-Legendre, for ``|u0| <= K``."""
    g = _agm(k)
    panels = max(1, math.ceil(g.K / _PANEL_WIDTH))
    flat = u0.reshape(-1)
    h = flat / panels
    # nodes of panel j: (j + (x + 1)/2) h
    offsets = (np.arange(panels)[:, None] + 0.5 * (_GL_NODES[None, :] + 1.0)).ravel()
    w = np.tile(_GL_WEIGHTS, panels)
    pts = h[:, None] * offsets[None, :]
    sn = jacobi(pts, k).sn
    total = 0.5 * h * ((sn * sn) @ w)
    return total.reshape(u0.shape)


def p_minus_E(u, k: float):
    """``u - E(u, k)`` computed as ``k^2 int_0^u sn^2`` without cancellation.

    Odd in ``u``; positive for ``u > 0`` and ``k > 0``.
    """
    k = _check_modulus(k)
    u, scalar = _as_array(u)
    if k == 0.0:
        return _out(np.zeros_like(u), scalar)
    g = _agm(k)
    u0, m = _reduce(u, g.K)
    val = g.two_K_minus_E * m + k * k * _sn2_integral(u0, k)
    return _out(val, scalar)
