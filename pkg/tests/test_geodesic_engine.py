import math

import numpy as np
import pytest

from conftest import pose_err
from se2geodesic.geodesic_engine import (
    CUSP_TOL,
    ExtendedCovector,
    Pose,
    closed_form_endpoint_functions,
    curvature,
    exp_map,
    exp_map_arrays,
    trace,
)
from se2geodesic.ode_oracle import integrate, integrate_many
from se2geodesic.phase_cylinder import (
    Covector,
    EllipticCoords,
    StratumError,
    StratumId,
    flow_arrays,
    from_elliptic,
    to_elliptic,
)
from se2geodesic.sampling import STRATA, random_covector, random_extended
from se2geodesic.special_functions import complete_K


def test_straight_line_on_C5():
    q = exp_map(ExtendedCovector(Covector(math.pi, 0.0), 2.0))
    assert q.as_tuple() == pytest.approx((2.0, 0.0, 0.0), abs=1e-15)
    q = exp_map(ExtendedCovector(Covector(3 * math.pi, 0.0), 2.0))
    assert q.x == pytest.approx(-2.0)


def test_rotation_in_place_on_C4():
    q = exp_map(ExtendedCovector(Covector(0.0, 0.0), 1.0))
    assert pose_err(q, Pose(0.0, 0.0, -1.0)) < 1e-15
    q = exp_map(ExtendedCovector(Covector(2 * math.pi, 0.0), 1.0))
    assert pose_err(q, Pose(0.0, 0.0, 1.0)) < 1e-15


def test_matches_oracle_example():
    lam = Covector(1.0, 0.8)
    q = exp_map(ExtendedCovector(lam, 3.0))
    assert pose_err(q, integrate(lam, 3.0)) < 1e-9


def test_matches_oracle_per_stratum(rng):
    for stratum in STRATA:
        nus = [random_extended(rng, stratum) for _ in range(8)]
        z = integrate_many([n.lam.gamma for n in nus], [n.lam.c for n in nus], [n.t for n in nus])
        for j, nu in enumerate(nus):
            assert pose_err(exp_map(nu), Pose(*z[2:, j])) < 1e-8, (stratum, nu)


def test_near_separatrix_inside_band():
    # 2e-9 above the separatrix: routed to the hyperbolic chart.  Away from
    # the saddle the stand-in is off by O(E - 1); next to the saddle every
    # separatrix point is O(sqrt(E - 1)) away in the phase plane.
    far = Covector(0.0, math.sqrt(2.0 * (2.0 + 2e-9)))
    near = Covector(math.pi, math.sqrt(4e-9))
    for lam in (far, near):
        assert to_elliptic(lam).chart is StratumId.C3
    for t in (1.0, 5.0):
        assert pose_err(exp_map(ExtendedCovector(far, t)), integrate(far, t)) < 10 * 2e-9 * math.exp(t)
        assert pose_err(exp_map(ExtendedCovector(near, t)), integrate(near, t)) < 10 * math.sqrt(2e-9) * math.exp(t)


def test_elliptic_forms_converge_to_separatrix():
    k = 1.0 - 1e-6
    for phi in (-1.0, 0.3, 1.5):
        ref = EllipticCoords(StratumId.C3, phi, 1.0)
        for chart, coord in ((StratumId.C1, phi), (StratumId.C2, phi)):
            lam = from_elliptic(EllipticCoords(chart, coord, k))
            lam3 = from_elliptic(ref)
            for t in (0.5, 2.0):
                a = exp_map(ExtendedCovector(lam, t))
                b = exp_map(ExtendedCovector(lam3, t))
                assert pose_err(a, b) < 1e-4


def test_trace_two_samples():
    nu = ExtendedCovector(Covector(0.4, 1.1), 2.5)
    s = trace(nu, 2)
    assert s[0].pose == Pose(0.0, 0.0, 0.0)
    assert s[1].pose == exp_map(nu) and s[1].s == 2.5


def test_trace_cusps_follow_sign_changes():
    # gamma_s crosses 0 mod 2pi exactly at phi_s = 2Kn; place one on the grid
    k = 0.6
    K = complete_K(k)
    lam = from_elliptic(EllipticCoords(StratumId.C1, 2 * K - 1.0, k))
    nu = ExtendedCovector(lam, 2.0)
    samples = trace(nu, 201)
    flags = [s.cusp for s in samples]
    assert flags[100] and sum(flags) == 1
    sin_h = np.sin(0.5 * np.array([s.gamma_s for s in samples]))
    changes = np.nonzero(np.sign(sin_h[:-2]) * np.sign(sin_h[2:]) < 0)[0] + 1
    assert list(changes) == [100]
    assert math.isinf(samples[100].curvature)


def test_rotation_geodesics_have_inflections():
    samples = trace(ExtendedCovector(Covector(0.0, 3.0), 10.0), 200)
    kappa = np.array([s.curvature for s in samples])
    assert np.any(np.sign(kappa[:-1]) != np.sign(kappa[1:]))


def test_arclength_normalisation(rng):
    for stratum in (StratumId.C1, StratumId.C2, StratumId.C3):
        lam = random_covector(rng, stratum)
        s = np.linspace(0.0, 6.0, 24001)
        x, y, th = exp_map_arrays(lam, s)
        th = np.unwrap(th)
        h = s[1] - s[0]
        speed2 = (np.gradient(x, h) ** 2 + np.gradient(y, h) ** 2 + np.gradient(th, h) ** 2)[2:-2]
        assert np.max(np.abs(speed2 - 1.0)) < 1e-5


def _d5(f, h):
    # fourth-order central difference; NaN on the two-point margins
    d = np.full_like(f, np.nan)
    d[2:-2] = (f[:-4] - 8.0 * f[1:-3] + 8.0 * f[3:-1] - f[4:]) / (12.0 * h)
    return d


def test_curvature_matches_finite_differences(rng):
    h = 1e-3
    s = np.arange(0.0, 8.0, h)
    for stratum in (StratumId.C1, StratumId.C2, StratumId.C3):
        for _ in range(3):
            lam = random_covector(rng, stratum)
            x, y, _ = exp_map_arrays(lam, s)
            g, _ = flow_arrays(lam, s)
            dx, dy = _d5(x, h), _d5(y, h)
            ddx, ddy = _d5(dx, h), _d5(dy, h)
            planar = (dx * ddy - dy * ddx) / (dx * dx + dy * dy) ** 1.5
            # the heading (cos theta, sin theta) is the velocity direction times sgn sin(gamma/2)
            orient = np.sign(np.sin(0.5 * g))
            kappa, _ = curvature(g)
            ok = (np.abs(np.sin(0.5 * g)) > 0.1) & np.isfinite(planar)
            assert np.max(np.abs(orient[ok] * planar[ok] - kappa[ok])) < 1e-4


def test_curvature_cusp_threshold():
    kappa, cusp = curvature(np.array([0.0, 2 * CUSP_TOL, 4 * math.pi - 1e-12, math.pi]))
    assert list(cusp) == [True, False, True, False]
    assert abs(kappa[3]) < 1e-15


def _C1_point_with(k, phi):
    return from_elliptic(EllipticCoords(StratumId.C1, phi, k))


def test_endpoint_sin_half_theta_vanishes_at_full_period():
    k = 0.7
    K = complete_K(k)
    ef = closed_form_endpoint_functions(ExtendedCovector(_C1_point_with(k, 0.9), 4 * K))
    assert abs(ef.sin_half_theta) < 1e-14 and abs(ef.p - 2 * K) < 1e-14


def test_endpoint_R1_vanishes_when_cn_tau_zero():
    k, t = 0.7, 1.3
    K = complete_K(k)
    phi = K - 0.5 * t  # tau = phi + p = K
    ef = closed_form_endpoint_functions(ExtendedCovector(_C1_point_with(k, phi), t))
    assert abs(ef.R1) < 1e-14


def _direct_endpoint(q):
    half = 0.5 * q.theta
    return (
        math.sin(q.theta),
        q.y * math.cos(half) - q.x * math.sin(half),
        q.x * math.cos(half) + q.y * math.sin(half),
    )


def test_endpoint_functions_agree_with_pose(rng):
    for stratum in (StratumId.C1, StratumId.C2):
        for _ in range(100):
            nu = random_extended(rng, stratum)
            ef = closed_form_endpoint_functions(nu)
            q = exp_map(nu)
            # closed-form half angle fixes the branch of theta/2
            assert abs(math.atan2(2 * ef.sin_half_theta * ef.cos_half_theta, ef.cos_half_theta**2 - ef.sin_half_theta**2) - q.theta) < 1e-9 or \
                abs(abs(q.theta) - math.pi) < 1e-9
            half = math.atan2(ef.sin_half_theta, ef.cos_half_theta)
            R1 = q.y * math.cos(half) - q.x * math.sin(half)
            R2 = q.x * math.cos(half) + q.y * math.sin(half)
            assert abs(ef.sin_theta - math.sin(q.theta)) < 1e-9
            assert abs(ef.R1 - R1) < 1e-9 and abs(ef.R2 - R2) < 1e-9


def test_endpoint_functions_outside_C1_C2():
    with pytest.raises(StratumError):
        closed_form_endpoint_functions(ExtendedCovector(Covector(0.0, 2.0), 1.0))
    with pytest.raises(StratumError):
        closed_form_endpoint_functions(ExtendedCovector(Covector(0.0, 0.0), 1.0))


def test_invalid_arguments():
    with pytest.raises(ValueError):
        ExtendedCovector(Covector(0.0, 1.0), 0.0)
    with pytest.raises(ValueError):
        ExtendedCovector(Covector(math.nan, 1.0), 1.0)
    with pytest.raises(ValueError):
        trace(ExtendedCovector(Covector(0.0, 1.0), 1.0), 1)
