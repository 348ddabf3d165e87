"""Geodesics of the five strata, checked against the RK4 integrator.

Run: python3 demos/03_geodesics.py
"""
import math

import numpy as np

from se2geodesic import Covector, ExtendedCovector, exp_map, integrate, pose_distance, trace
from se2geodesic.geodesic_engine import Pose

cases = {
    "C1 oscillation (cusps)": Covector(0.0, 1.0),
    "C1 wide oscillation": Covector(0.0, 1.9),
    "C2 rotation (inflections)": Covector(0.0, 3.0),
    "C3 separatrix": Covector(0.0, 2.0),
    "C4 turn in place": Covector(0.0, 0.0),
    "C5 straight line": Covector(math.pi, 0.0),
}
t = 10.0
for name, lam in cases.items():
    nu = ExtendedCovector(lam, t)
    q = exp_map(nu)
    z = integrate(lam, t)
    err = pose_distance(q, Pose(z.x, z.y, z.theta))
    samples = trace(nu, 400)
    kappa = np.array([s.curvature for s in samples])
    finite = kappa[np.isfinite(kappa)]
    cusps = sum(s.cusp for s in samples)
    sign_changes = int(np.sum(np.sign(finite[:-1]) != np.sign(finite[1:])))
    print(f"{name:28s} Exp = ({q.x:+.6f}, {q.y:+.6f}, {q.theta:+.6f})  |Exp - RK4| = {err:.1e}"
          f"  cusp samples {cusps}, curvature sign changes {sign_changes}")
