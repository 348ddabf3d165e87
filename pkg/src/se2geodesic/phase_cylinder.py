"""The pendulum phase cylinder ``C = {(gamma, c)}`` and its elliptic charts.

The vertical part of the normal Hamiltonian system is the pendulum
``gamma' = c, c' = -sin(gamma)`` on ``(R / 4 pi Z) x R``.  Its energy
``E = c^2/2 - cos(gamma)`` splits ``C`` into five invariant strata:

====  ============================  ==========================
C1    ``-1 < E < 1``                oscillations
C2    ``E > 1``                     rotations
C3    ``E = 1, c != 0``             separatrix motions
C4    ``E = -1``                    stable equilibria
C5    ``E = 1, c = 0``              unstable equilibria
====  ============================  ==========================

On ``C1 u C2 u C3`` the coordinates ``(phi, k)`` rectify the flow:
``phi_t = phi + t`` with ``k`` constant.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .special_functions import K_MAX, NearSeparatrixError, complete_K, incomplete_F, jacobi

__all__ = [
    "FOUR_PI",
    "STRATUM_TOL",
    "SEPARATRIX_BAND",
    "StratumError",
    "StratumId",
    "Covector",
    "Stratum",
    "EllipticCoords",
    "energy",
    "classify",
    "to_elliptic",
    "from_elliptic",
    "pendulum_flow",
    "reduce_gamma",
]

FOUR_PI = 4.0 * math.pi

#: Width of the energy band assigned to the boundary strata C3, C4, C5.
STRATUM_TOL = 1e-10

#: Points with ``|E - 1|`` below this use the hyperbolic (k = 1) chart.
#: ``1 - k ~ |E - 1| / 4`` on both sides, so this is the narrowest band
#: outside of which the AGM routines (which refuse ``1 - k < 1e-9``) run.
#: The elliptic closed forms stay accurate right up to that cutoff, whereas
#: the k = 1 formulas are only an O(|E - 1|) approximation off the separatrix.
SEPARATRIX_BAND = 4.2e-9


class StratumError(ValueError):
    """Operation not defined on the stratum of the given covector."""


class StratumId(str, Enum):
    C1 = "C1"
    C2 = "C2"
    C3 = "C3"
    C4 = "C4"
    C5 = "C5"

    def __str__(self) -> str:
        return self.value


def reduce_gamma(gamma: float) -> float:
    """Representative of ``gamma`` in ``[0, 4 pi)``."""
    g = math.fmod(gamma, FOUR_PI)
    if g < 0.0:
        g += FOUR_PI
    return 0.0 if g >= FOUR_PI else g


@dataclass(frozen=True)
class Covector:
    """Initial covector ``lambda = (gamma, c)``; ``gamma`` is kept unwrapped."""

    gamma: float
    c: float

    @property
    def reduced_gamma(self) -> float:
        return reduce_gamma(self.gamma)

    def distance(self, other: Covector) -> float:
        """Distance on the cylinder, ``gamma`` compared modulo ``4 pi``."""
        dg = math.remainder(self.gamma - other.gamma, FOUR_PI)
        return math.hypot(dg, self.c - other.c)


@dataclass(frozen=True)
class Stratum:
    """Stratum with its connected-component tag.

    ``component`` is ``i`` in ``{0, 1}`` for C1, C4, C5; ``"+"``/``"-"`` for
    C2; and ``(i, "+"/"-")`` for C3.
    """

    id: StratumId
    component: int | str | tuple[int, str]

    def __str__(self) -> str:
        comp = self.component
        if isinstance(comp, tuple):
            comp = f"{comp[0]}{comp[1]}"
        return f"{self.id.value}^{comp}"


@dataclass(frozen=True)
class EllipticCoords:
    """Elliptic chart coordinates on ``C1 u C2 u C3``.

    ``phi`` is the time-of-motion coordinate.  On C2 the Jacobi functions
    are evaluated at ``psi = phi / k``.  ``s1 = sgn cos(gamma/2)`` is used on
    C1 and C3, ``s2 = sgn c`` on C2 and C3; the unused sign is stored as +1.
    """

    chart: StratumId
    phi: float
    k: float
    s1: int = 1
    s2: int = 1

    @property
    def psi(self) -> float:
        return self.phi / self.k

    def shifted(self, t: float) -> EllipticCoords:
        return EllipticCoords(self.chart, self.phi + t, self.k, self.s1, self.s2)


def _sgn(x: float) -> int:
    return 1 if x >= 0.0 else -1


def energy(lam: Covector) -> float:
    """Pendulum energy ``c^2/2 - cos(gamma)``."""
    return 0.5 * lam.c * lam.c - math.cos(lam.gamma)


def classify(lam: Covector, tol: float = STRATUM_TOL) -> Stratum:
    """Stratum and connected component of ``lam``.

    Energies within ``tol`` of -1 or 1 are assigned to the boundary strata.
    """
    if not tol > 0.0:
        raise ValueError("tol must be positive")
    E = energy(lam)
    half = 0.5 * lam.gamma
    i_cos = 0 if math.cos(half) > 0.0 else 1
    sign_c = "+" if lam.c > 0.0 else "-"
    if abs(E + 1.0) <= tol:
        return Stratum(StratumId.C4, i_cos)
    if abs(E - 1.0) <= tol:
        if abs(lam.c) <= tol:
            return Stratum(StratumId.C5, 0 if math.sin(half) > 0.0 else 1)
        return Stratum(StratumId.C3, (i_cos, sign_c))
    if E < 1.0:
        return Stratum(StratumId.C1, i_cos)
    return Stratum(StratumId.C2, sign_c)


def _separatrix_coords(lam: Covector) -> EllipticCoords:
    half = 0.5 * lam.gamma
    s1, s2 = _sgn(math.cos(half)), _sgn(lam.c)
    if lam.c != 0.0:
        # sinh(phi) = tanh(phi) cosh(phi); stays well conditioned near the saddle
        phi = math.asinh(2.0 * s1 * s2 * math.sin(half) / abs(lam.c))
    else:
        arg = min(max(s1 * s2 * math.sin(half), -1.0 + 1e-16), 1.0 - 1e-16)
        phi = math.atanh(arg)
    return EllipticCoords(StratumId.C3, phi, 1.0, s1, s2)


def to_elliptic(
    lam: Covector,
    tol: float = STRATUM_TOL,
    separatrix_band: float = SEPARATRIX_BAND,
) -> EllipticCoords:
    """Elliptic coordinates of ``lam``.

    Covectors whose energy is within ``separatrix_band`` of 1 are mapped by
    the C3 chart even if they lie strictly inside C1 or C2; pass
    ``separatrix_band=0`` to disable this.
    """
    st = classify(lam, tol)
    if st.id in (StratumId.C4, StratumId.C5):
        raise StratumError(f"no elliptic coordinates on {st.id.value}")
    if st.id is StratumId.C3 or abs(energy(lam) - 1.0) <= separatrix_band:
        return _separatrix_coords(lam)
    half = 0.5 * lam.gamma
    sin_h, cos_h = math.sin(half), math.cos(half)
    r = math.sqrt(sin_h * sin_h + 0.25 * lam.c * lam.c)
    k = r if st.id is StratumId.C1 else 1.0 / r
    if k > K_MAX:
        if separatrix_band > 0.0:
            return _separatrix_coords(lam)
        raise NearSeparatrixError(f"covector {lam} is too close to the separatrix")
    if st.id is StratumId.C1:
        s1 = _sgn(cos_h)
        # sn phi = s1 sin(gamma/2) / k, cn phi = c / (2k)
        am = math.atan2(s1 * sin_h, 0.5 * lam.c)
        period = 4.0 * complete_K(k)
        phi = float(incomplete_F(am, k)) % period
        return EllipticCoords(StratumId.C1, phi, k, s1, 1)
    s2 = _sgn(lam.c)
    # sn psi = s2 sin(gamma/2), cn psi = cos(gamma/2)
    am = math.atan2(s2 * sin_h, cos_h)
    period = 4.0 * complete_K(k)
    psi = float(incomplete_F(am, k)) % period
    return EllipticCoords(StratumId.C2, k * psi, k, 1, s2)


def _validate(ec: EllipticCoords) -> None:
    if ec.s1 not in (1, -1) or ec.s2 not in (1, -1):
        raise ValueError("signs s1, s2 must be +1 or -1")
    if not math.isfinite(ec.phi):
        raise ValueError("phi must be finite")
    if ec.chart is StratumId.C3:
        if ec.k != 1.0:
            raise ValueError("chart C3 requires k = 1")
    elif ec.chart in (StratumId.C1, StratumId.C2):
        if not 0.0 < ec.k <= K_MAX:
            raise ValueError(f"chart {ec.chart.value} requires 0 < k < 1")
    else:
        raise ValueError(f"{ec.chart} is not an elliptic chart")


def _half_angle_and_c(ec: EllipticCoords, phi):
    """Continuous branch of ``gamma/2`` and ``c`` along the chart at ``phi``."""
    if ec.chart is StratumId.C1:
        sn, cn, dn, _ = jacobi(phi, ec.k)
        half = np.arctan2(ec.k * sn, dn) + (0.0 if ec.s1 > 0 else math.pi)
        return half, 2.0 * ec.k * cn
    if ec.chart is StratumId.C2:
        sn, cn, dn, am = jacobi(np.asarray(phi) / ec.k, ec.k)
        return ec.s2 * am, 2.0 * ec.s2 * dn / ec.k
    half = np.arctan(ec.s2 * np.sinh(phi)) + (0.0 if ec.s1 > 0 else math.pi)
    return half, 2.0 * ec.s2 / np.cosh(phi)


def from_elliptic(ec: EllipticCoords) -> Covector:
    """Covector with the given elliptic coordinates, ``gamma`` in ``[0, 4 pi)``."""
    _validate(ec)
    half, c = _half_angle_and_c(ec, ec.phi)
    return Covector(reduce_gamma(2.0 * float(half)), float(c))


def flow_arrays(lam: Covector, ts, ec: EllipticCoords | None = None):
    """Pendulum flow ``(gamma_t, c_t)`` for an array of times.

    ``gamma_t`` is continuous in ``t`` and starts at the unwrapped
    ``lam.gamma``.
    """
    ts = np.asarray(ts, dtype=float)
    if ec is None:
        st = classify(lam)
        if st.id in (StratumId.C4, StratumId.C5):
            return np.full_like(ts, lam.gamma), np.full_like(ts, lam.c)
        ec = to_elliptic(lam)
    half0, _ = _half_angle_and_c(ec, ec.phi)
    half, c = _half_angle_and_c(ec, ec.phi + ts)
    return lam.gamma + 2.0 * (half - half0), c


def pendulum_flow(lam: Covector, t: float) -> Covector:
    """Image of ``lam`` under the pendulum flow after time ``t``.

    Equilibria (C4, C5) are fixed.  The returned ``gamma`` is the continuous
    continuation of ``lam.gamma``.
    """
    g, c = flow_arrays(lam, float(t))
    return Covector(float(g), float(c))
