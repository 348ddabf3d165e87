"""Jacobi elliptic functions from the arithmetic-geometric mean.

Run: python3 demos/01_special_functions.py
"""
import math

import numpy as np

from se2geodesic import complete_E, complete_K, epsilon_incomplete, jacobi, p_minus_E

# K and E over the modulus range; K blows up logarithmically as k -> 1
for k in (0.0, 0.5, 0.9, 0.99, 0.999999):
    print(f"k = {k:<9} K = {complete_K(k):.15f}  E = {complete_E(k):.15f}")

# sn, cn, dn have period 4K, 4K, 2K; am is unwrapped and grows by pi every 2K
k = 0.8
K = complete_K(k)
u = np.array([0.0, K, 2 * K, 3 * K, 4 * K])
sn, cn, dn, am = jacobi(u, k)
print("\nu / K :", u / K)
print("sn    :", np.round(sn, 12))
print("cn    :", np.round(cn, 12))
print("dn    :", np.round(dn, 12))
print("am/pi :", np.round(am / math.pi, 12))

# p - E(p) is computed directly, so it keeps full relative precision near 0
for p in (1e-6, 1e-3, 1.0, 10.0):
    naive = p - epsilon_incomplete(p, k)
    print(f"p = {p:<6}  p - E(p) = {p_minus_E(p, k):.16e}   naive difference = {naive:.16e}")
