"""The seven reflections commute with the exponential map.

Run: python3 demos/04_reflections.py
"""
import numpy as np

from se2geodesic import REFLECTIONS, StratumId, exp_map, reflect_covector, reflect_pose
from se2geodesic.geodesic_engine import pose_distance
from se2geodesic.sampling import random_extended

rng = np.random.default_rng(0)
nu = random_extended(rng, StratumId.C2)
q = exp_map(nu)
print(f"nu = {nu}\nExp(nu) = {q}\n")
for i in REFLECTIONS:
    nu_i = reflect_covector(i, nu)
    lhs = reflect_pose(i, q)
    rhs = exp_map(nu_i)
    print(f"eps^{i}: lambda^{i} = ({nu_i.lam.reduced_gamma:.6f}, {nu_i.lam.c:+.6f})"
          f"  eps^{i}(Exp nu) = ({lhs.x:+.6f}, {lhs.y:+.6f}, {lhs.theta:+.6f})  residual {pose_distance(lhs, rhs):.1e}")
