"""The pendulum phase cylinder and its rectifying elliptic coordinates.

Run: python3 demos/02_phase_cylinder.py
"""
import math

import numpy as np

from se2geodesic import Covector, classify, energy, from_elliptic, pendulum_flow, to_elliptic

points = [
    Covector(0.0, 0.0),
    Covector(math.pi / 2, 0.0),
    Covector(0.0, 2.0),
    Covector(0.0, 3.0),
    Covector(math.pi, 0.0),
    Covector(2 * math.pi, -0.5),
]
for lam in points:
    st = classify(lam)
    line = f"{str(lam):45s} E = {energy(lam):+.3f}  {st}"
    try:
        ec = to_elliptic(lam)
        line += f"  chart {ec.chart.value}: phi = {ec.phi:.6f}, k = {ec.k:.6f}, s1 = {ec.s1:+d}, s2 = {ec.s2:+d}"
    except ValueError as exc:
        line += f"  ({exc})"
    print(line)

# in these coordinates the flow is a translation: phi_t = phi + t
lam = Covector(1.0, 1.0)
ec = to_elliptic(lam)
for t in np.linspace(0.0, 6.0, 4):
    moved = pendulum_flow(lam, t)
    via_chart = from_elliptic(ec.shifted(t))
    print(f"t = {t:.1f}: flow {moved.reduced_gamma:.12f}, {moved.c:+.12f}   chart {via_chart.gamma:.12f}, {via_chart.c:+.12f}")
