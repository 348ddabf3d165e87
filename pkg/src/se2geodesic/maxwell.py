"""Maxwell strata of the reflections and the cut-time bound ``t(lambda)``.

All conditions are written in the reduced variables

    C1, C3:  p = t / 2,        tau = phi + p
    C2:      p = t / (2k),     tau = psi + p

Nonempty strata (the others are empty):

    MAX^5 on N1:  p = K + 2Kn
    MAX^6 on N1:  p = 2Kn
    MAX^6 on N2:  p = 2Kn,      cn tau != 0
    MAX^2 on N2:  p = p1^n(k),  sn tau != 0

where ``p1^n(k)`` is the n-th positive root of
``f1(p) = cn p (E(p) - p) - dn p sn p``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .geodesic_engine import ExtendedCovector
from .phase_cylinder import (
    SEPARATRIX_BAND,
    STRATUM_TOL,
    Covector,
    StratumError,
    StratumId,
    classify,
    energy,
    to_elliptic,
)
from .special_functions import K_MAX, complete_K, jacobi, p_minus_E

__all__ = [
    "MAXWELL_TOL",
    "RootSearchError",
    "MaxwellVerdict",
    "RootTable",
    "FirstMaxwellTime",
    "f1",
    "f2",
    "p1_root",
    "reduced_variables",
    "maxwell_membership",
    "cut_time_bound",
    "tt_of_energy",
    "first_maxwell_time",
    "is_conjugate_limit_point",
]

MAXWELL_TOL = 1e-9
_ROOT_TOL = 1e-12
_INSET = 1e-8


class RootSearchError(RuntimeError):
    """Bisection bracket for a root of ``f1`` did not change sign."""


def f1(p, k: float):
    """``f1(p, k) = cn p (E(p) - p) - dn p sn p``; odd in ``p``."""
    sn, cn, dn, _ = jacobi(p, k)
    return -cn * p_minus_E(p, k) - dn * sn


def f2(p, k: float):
    """``f2(p, k) = k^2 cn p sn p + dn p (p - E(p))``; positive for ``p > 0``.

    This is the factor of ``sn tau`` in ``R2`` on C1; ``f2 / dn`` has
    derivative ``k^2 cn^2 / dn^2``.
    """
    sn, cn, dn, _ = jacobi(p, k)
    return k * k * cn * sn + dn * p_minus_E(p, k)


def _g1(p: float, k: float) -> float:
    # f1 / cn, strictly decreasing between consecutive zeros of cn
    sn, cn, dn, _ = jacobi(p, k)
    return -p_minus_E(p, k) - dn * sn / cn


def _bisect(fun, lo: float, hi: float, tol: float) -> float:
    flo, fhi = fun(lo), fun(hi)
    if not (flo > 0.0 > fhi):
        raise RootSearchError(f"no sign change on [{lo}, {hi}]: g = {flo}, {fhi}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = fun(mid)
        if fm == 0.0:
            return mid
        if fm > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@lru_cache(maxsize=8192)
def p1_root(n: int, k: float) -> float:
    """n-th positive root ``p1^n(k)`` of ``f1``, in ``(2Kn - K, 2Kn]``."""
    if n < 1:
        raise ValueError("root index must be >= 1")
    k = float(k)
    if not 0.0 <= k <= K_MAX:
        raise ValueError(f"p1_root needs 0 <= k <= 1 - 1e-9, got {k!r}")
    if k == 0.0:
        return math.pi * n
    K = complete_K(k)
    centre = 2.0 * K * n
    lo, hi = centre - K + _INSET * K, centre + K - _INSET * K
    root = _bisect(lambda p: _g1(p, k), lo, hi, _ROOT_TOL)
    if not (centre - K < root <= centre + _ROOT_TOL):
        raise RootSearchError(f"root {root} of f1 escaped ({centre - K}, {centre}]")
    return root


@dataclass
class RootTable:
    """First roots ``p1^1(k)`` on a Chebyshev grid in ``k``.

    ``p1^1`` is increasing in ``k``, so neighbouring table entries bracket the
    root at any intermediate ``k`` and bisection can start from there.
    """

    k: np.ndarray
    p11: np.ndarray

    @classmethod
    def build(cls, size: int = 512, k_max: float = 0.999) -> RootTable:
        j = np.arange(size)
        ks = 0.5 * k_max * (1.0 - np.cos(np.pi * j / (size - 1)))
        return cls(ks, np.array([p1_root(1, float(kk)) for kk in ks]))

    def __call__(self, k: float) -> float:
        k = float(k)
        idx = int(np.searchsorted(self.k, k))
        if idx < len(self.k) and self.k[idx] == k:
            return float(self.p11[idx])
        if 0 < idx < len(self.k):
            lo, hi = float(self.p11[idx - 1]), float(self.p11[idx])
            try:
                return _bisect(lambda p: _g1(p, k), lo, hi, _ROOT_TOL)
            except RootSearchError:
                pass
        return p1_root(1, k)


@dataclass
class MaxwellVerdict:
    in_max1: bool = False
    in_max2: bool = False
    in_max5: bool = False
    in_max6: bool = False
    p: float = math.nan
    tau: float = math.nan
    k: float = math.nan
    stratum: str = ""
    root_index: int | None = None
    # a p-condition holds but its "!= 0" companion fails within tol
    boundary: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def any(self) -> bool:
        return self.in_max1 or self.in_max2 or self.in_max5 or self.in_max6

    def as_dict(self) -> dict:
        return {
            "stratum": self.stratum,
            "in_max1": self.in_max1,
            "in_max2": self.in_max2,
            "in_max5": self.in_max5,
            "in_max6": self.in_max6,
            "p": self.p,
            "tau": self.tau,
            "k": self.k,
            "root_index": self.root_index,
            "boundary": self.boundary,
            "notes": list(self.notes),
        }


def reduced_variables(nu: ExtendedCovector):
    """Elliptic chart together with ``(p, tau)`` for ``nu`` in N1, N2 or N3."""
    st = classify(nu.lam)
    if st.id not in (StratumId.C1, StratumId.C2, StratumId.C3):
        raise StratumError(f"reduced variables need lambda in C1, C2 or C3, got {st.id.value}")
    ec = to_elliptic(nu.lam)
    if ec.chart is StratumId.C2:
        p = nu.t / (2.0 * ec.k)
        return ec, p, ec.psi + p
    p = 0.5 * nu.t
    return ec, p, ec.phi + p


def _near_multiple(p: float, period: float, offset: float, tol: float, n_min: int):
    n = round((p - offset) / period)
    if n >= n_min and abs(p - offset - period * n) <= tol:
        return n
    return None


def maxwell_membership(nu: ExtendedCovector, tol: float = MAXWELL_TOL) -> MaxwellVerdict:
    """Which reflection Maxwell strata contain ``nu``."""
    if not tol > 0.0:
        raise ValueError("tol must be positive")
    ec, p, tau = reduced_variables(nu)
    v = MaxwellVerdict(p=p, tau=tau, k=ec.k, stratum=ec.chart.value)
    if ec.chart is StratumId.C3:
        return v
    k = ec.k
    K = complete_K(k)
    sn, cn, _, _ = jacobi(tau, k)
    if ec.chart is StratumId.C1:
        v.in_max5 = _near_multiple(p, 2.0 * K, K, tol, 0) is not None
        v.in_max6 = _near_multiple(p, 2.0 * K, 0.0, tol, 1) is not None
        return v
    if _near_multiple(p, 2.0 * K, 0.0, tol, 1) is not None:
        if abs(cn) > tol:
            v.in_max6 = True
        else:
            v.boundary = True
            v.notes.append("p = 2Kn with cn tau = 0")
    n = max(1, round(p / (2.0 * K)))
    root = p1_root(n, k)
    if abs(p - root) <= tol:
        if abs(sn) > tol:
            v.in_max2 = True
            v.root_index = n
        else:
            v.boundary = True
            v.notes.append(f"p = p1^{n}(k) with sn tau = 0 (conjugate limit)")
    return v


def _tt_from_k(stratum: StratumId, k: float, table: RootTable | None) -> float:
    if stratum is StratumId.C1:
        return 2.0 * complete_K(k)
    p11 = table(k) if table is not None else p1_root(1, k)
    return 2.0 * k * p11


def _k_or_separatrix(stratum: StratumId, E: float) -> float | None:
    if abs(E - 1.0) <= SEPARATRIX_BAND:
        return None
    k = math.sqrt(0.5 * (E + 1.0)) if stratum is StratumId.C1 else math.sqrt(2.0 / (E + 1.0))
    return None if k > K_MAX else k


def cut_time_bound(lam: Covector, table: RootTable | None = None) -> float:
    """Upper bound ``t(lambda) >= t_cut(lambda)``.

    ``2K(k)`` on C1, ``2k p1^1(k)`` on C2, ``pi`` on C4, ``inf`` on C3, C5.
    """
    st = classify(lam)
    if st.id is StratumId.C4:
        return math.pi
    if st.id in (StratumId.C3, StratumId.C5):
        return math.inf
    k = _k_or_separatrix(st.id, energy(lam))
    if k is None:
        return math.inf
    return _tt_from_k(st.id, k, table)


def tt_of_energy(E: float, table: RootTable | None = None) -> float:
    """``t`` as a function of the pendulum energy alone."""
    E = float(E)
    if not math.isfinite(E) or E < -1.0:
        raise ValueError(f"energy must be finite and >= -1, got {E!r}")
    if E + 1.0 <= STRATUM_TOL:
        return math.pi
    if abs(E - 1.0) <= STRATUM_TOL:
        return math.inf
    stratum = StratumId.C1 if E < 1.0 else StratumId.C2
    k = _k_or_separatrix(stratum, E)
    if k is None:
        return math.inf
    return _tt_from_k(stratum, k, table)


class FirstMaxwellTime(NamedTuple):
    t: float
    # the first candidate p = p1^1 was skipped because sn tau = 0 there
    conjugate: bool = False


def first_maxwell_time(lam: Covector, tol: float = MAXWELL_TOL) -> FirstMaxwellTime:
    """First time the geodesic of ``lam`` meets a reflection Maxwell stratum."""
    st = classify(lam)
    if st.id not in (StratumId.C1, StratumId.C2, StratumId.C3):
        raise StratumError(f"first Maxwell time needs lambda in C1, C2 or C3, got {st.id.value}")
    ec = to_elliptic(lam)
    if ec.chart is StratumId.C3:
        return FirstMaxwellTime(math.inf)
    k = ec.k
    K = complete_K(k)
    if ec.chart is StratumId.C1:
        return FirstMaxwellTime(2.0 * K)
    # candidates in increasing p: p1^1 < 2K < p1^2 < 4K < ...
    conjugate = False
    psi = ec.psi
    for n in range(1, 64):
        root = p1_root(n, k)
        sn = jacobi(psi + root, k).sn
        if abs(sn) > tol:
            return FirstMaxwellTime(2.0 * k * root, conjugate)
        if n == 1:
            conjugate = True
        cn = jacobi(psi + 2.0 * K * n, k).cn
        if abs(cn) > tol:
            return FirstMaxwellTime(4.0 * k * K * n, conjugate)
    return FirstMaxwellTime(math.inf, conjugate)


def is_conjugate_limit_point(nu: ExtendedCovector, tol: float = MAXWELL_TOL) -> bool:
    """``p = p1^1(k)`` and ``sn tau = 0`` on N2: a limit of Maxwell pairs."""
    ec, p, tau = reduced_variables(nu)
    if ec.chart is not StratumId.C2:
        raise StratumError("conjugate-limit predicate is defined on C2")
    return abs(p - p1_root(1, ec.k)) <= tol and abs(jacobi(tau, ec.k).sn) <= tol
