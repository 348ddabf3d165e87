"""Maxwell points of the reflections and the cut-time bound t(lambda).

Run: python3 demos/05_maxwell_and_cut_time.py
"""
import math

from se2geodesic import (
    EllipticCoords,
    ExtendedCovector,
    StratumId,
    complete_K,
    cut_time_bound,
    exp_map,
    first_maxwell_time,
    from_elliptic,
    maxwell_membership,
    p1_root,
    reflect_covector,
    tt_of_energy,
)
from se2geodesic.geodesic_engine import pose_distance

k = 0.5
K = complete_K(k)
print(f"k = {k}: K = {K:.12f}  p1^1 = {p1_root(1, k):.12f}  2K = {2 * K:.12f}\n")

# oscillation: the first Maxwell point comes from eps^5 at t = 2K
lam = from_elliptic(EllipticCoords(StratumId.C1, 0.7, k))
nu = ExtendedCovector(lam, cut_time_bound(lam))
v = maxwell_membership(nu)
other = reflect_covector(5, nu)
print(f"C1 {lam}: t = {nu.t:.12f}, in MAX5 {v.in_max5}")
print(f"   two geodesics of length t meet: |Exp(nu) - Exp(nu^5)| = {pose_distance(exp_map(nu), exp_map(other)):.1e}")
print(f"   the initial covectors differ by {other.lam.distance(lam):.3f}\n")

# rotation: eps^2 at p = p1^1(k)
lam = from_elliptic(EllipticCoords(StratumId.C2, k * 0.4, k))
nu = ExtendedCovector(lam, cut_time_bound(lam))
other = reflect_covector(2, nu)
print(f"C2 {lam}: t = {nu.t:.12f}, in MAX2 {maxwell_membership(nu).in_max2}")
print(f"   |Exp(nu) - Exp(nu^2)| = {pose_distance(exp_map(nu), exp_map(other)):.1e}; first Maxwell time {first_maxwell_time(lam)}\n")

print("t(E) near the special energies:")
for E in (-1.0, -0.999, 0.0, 0.9, 1 - 1e-6, 1.0, 1 + 1e-6, 3.0, 100.0, 1e4):
    t = tt_of_energy(E)
    asym = 2 * math.sqrt(2) * math.pi / math.sqrt(E + 1) if E > 1 else float("nan")
    print(f"  E = {E:<12} t = {t:<20.12f} high-energy asymptote {asym:.6f}")
