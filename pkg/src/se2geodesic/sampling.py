"""Random covectors on each stratum, for sweeps and property checks."""
from __future__ import annotations

import math

import numpy as np

from .geodesic_engine import ExtendedCovector
from .phase_cylinder import Covector, EllipticCoords, StratumId, from_elliptic
from .special_functions import complete_K

__all__ = ["STRATA", "random_covector", "random_extended"]

STRATA = (StratumId.C1, StratumId.C2, StratumId.C3, StratumId.C4, StratumId.C5)


def _sign(rng: np.random.Generator) -> int:
    return 1 if rng.random() < 0.5 else -1


def random_covector(
    rng: np.random.Generator,
    stratum: StratumId | None = None,
    k_range: tuple[float, float] = (0.02, 0.98),
) -> Covector:
    """A covector on ``stratum`` (uniform over C1..C5 when omitted).

    Interior strata are sampled through their elliptic charts, so the phase
    is uniform along the level curve.
    """
    if stratum is None:
        stratum = STRATA[int(rng.integers(len(STRATA)))]
    stratum = StratumId(stratum)
    if stratum is StratumId.C4:
        return Covector(2.0 * math.pi * int(rng.integers(2)), 0.0)
    if stratum is StratumId.C5:
        return Covector(math.pi * (1 + 2 * int(rng.integers(2))), 0.0)
    if stratum is StratumId.C3:
        ec = EllipticCoords(StratumId.C3, float(rng.uniform(-3.0, 3.0)), 1.0, _sign(rng), _sign(rng))
        return from_elliptic(ec)
    k = float(rng.uniform(*k_range))
    u = float(rng.uniform(0.0, 4.0 * complete_K(k)))
    if stratum is StratumId.C1:
        return from_elliptic(EllipticCoords(StratumId.C1, u, k, _sign(rng), 1))
    return from_elliptic(EllipticCoords(StratumId.C2, k * u, k, 1, _sign(rng)))


def random_extended(
    rng: np.random.Generator,
    stratum: StratumId | None = None,
    t_max: float = 10.0,
) -> ExtendedCovector:
    """``(lambda, t)`` with ``t`` uniform on ``(0, t_max]``."""
    lam = random_covector(rng, stratum)
    t = t_max * (1.0 - float(rng.random()))
    return ExtendedCovector(lam, t)
