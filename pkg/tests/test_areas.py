import math

import numpy as np
import pytest

from pentamod import areas, moduli
from pentamod.charts import solid_constants

SOLIDS = (3, 4, 5)

# totals published for the three families, as multiples of pi
TOTAL_OVER_PI = {3: 0.8600517493, 4: 0.4602931496, 5: 0.1954959087}


def simpson_F(t, lam, pieces=1 << 14):
    """Composite-Simpson oracle for the imaginary-modulus elliptic integral."""
    if t == 0.0:
        return 0.0
    u = np.linspace(0.0, t, 2 * pieces + 1)
    y = 1.0 / np.sqrt(1.0 + (np.sin(u) / lam) ** 2)
    h = t / (2 * pieces)
    return h / 3.0 * (y[0] + y[-1] + 4.0 * y[1:-1:2].sum() + 2.0 * y[2:-1:2].sum())


def test_elliptic_trivial_cases():
    assert areas.elliptic_F_imag(0.0, 0.3) == 0.0
    # lambda -> infinity degenerates to F(t, 0) = t
    t = 1.1
    assert abs(areas.elliptic_F_imag(t, 1e8) - t) < 1e-7


def test_elliptic_against_simpson_oracle():
    lam = 1.0 / (4.0 * math.sqrt(2.0))
    got = areas.elliptic_F_imag(math.pi / 6.0, lam)
    assert abs(got - simpson_F(math.pi / 6.0, lam)) < 1e-12
    assert got == pytest.approx(0.321991385091131, abs=1e-12)   # frozen oracle value
    for n in SOLIDS:
        c = solid_constants(n)
        for lam in (c.lambda_a, c.lambda_b, c.lambda_c):
            for t in (0.3, math.pi / 6.0, 0.5 * math.pi):
                assert abs(areas.elliptic_F_imag(t, lam) - simpson_F(t, lam)) < 1e-12


def test_elliptic_monotonicity():
    lam = 0.7
    ts = np.linspace(0.05, 0.5 * math.pi, 12)
    vals = [areas.elliptic_F_imag(t, lam) for t in ts]
    assert all(b > a for a, b in zip(vals, vals[1:]))
    t = 0.9
    lams = (0.2, 0.5, 1.0, 3.0)
    vals = [areas.elliptic_F_imag(t, lam) for lam in lams]
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_fan_area_trivial_cases():
    assert areas.fan_area_quadrature(lambda t: 0.0, 0.0, 1.0) == 0.0
    got = areas.fan_area_quadrature(lambda t: 1.0, 0.0, 0.5 * math.pi)
    assert got == pytest.approx(0.5 * math.pi, abs=1e-12)


def test_gamma_a_fan_equals_elliptic_formula():
    # A5 both ways for the tetrahedral family
    c = solid_constants(3)
    spec = moduli.curve_spec("gamma_A", 3)
    quad = areas.fan_area_quadrature(lambda t: moduli.curve_radius(spec, t),
                                     spec.theta_lo, spec.theta_hi)
    closed = math.pi / 6.0 - areas.elliptic_F_imag(math.pi / 6.0, c.lambda_a)
    assert abs(quad - closed) < 1e-9


def test_part_areas_totals():
    for n in SOLIDS:
        rep = areas.part_areas(n)
        assert abs(rep.total / math.pi - TOTAL_OVER_PI[n]) < 1e-8
        assert rep.A1 == rep.A2 == rep.A3 == rep.A7
        assert rep.A1 == pytest.approx(4.0 * math.pi / (6.0 * solid_constants(n).faces), abs=1e-15)
        parts = rep.A1 + rep.A2 + rep.A3 + rep.A7 + rep.A4 + rep.A5 + rep.A8 + rep.A13
        assert rep.total == pytest.approx(parts, abs=1e-15)


def test_part_areas_fractions_and_monotonicity():
    fr = {n: areas.part_areas(n).fraction_of_sphere for n in SOLIDS}
    assert fr[3] > fr[4] > fr[5]
    assert fr[3] == pytest.approx(0.215013, abs=1e-5)
    assert fr[4] == pytest.approx(0.115073, abs=1e-5)
    assert fr[5] == pytest.approx(0.048874, abs=1e-5)


def test_elliptic_vs_quadrature_all_parts():
    for n in SOLIDS:
        rep = areas.part_areas(n)
        quad = areas.part_areas_quadrature(n)
        for key, val in quad.items():
            assert abs(getattr(rep, key) - val) < 1e-9, (n, key)


def test_consistency_a2_a4_a8():
    for n in SOLIDS:
        assert areas.consistency_A2A4A8(n) < 1e-9


def test_monte_carlo_determinism_and_accuracy():
    est1 = areas.monte_carlo_area(4, 200_000, 42)
    est2 = areas.monte_carlo_area(4, 200_000, 42)
    assert est1.estimate == est2.estimate and est1.hits == est2.hits
    want = areas.part_areas(4).total
    assert abs(est1.estimate - want) < 3.0 * est1.stderr


def test_monte_carlo_rejects_tiny_sample():
    with pytest.raises(ValueError):
        areas.monte_carlo_area(3, 10, 1)


def test_elliptic_input_validation():
    with pytest.raises(ValueError):
        areas.elliptic_F_imag(-0.1, 1.0)
    with pytest.raises(ValueError):
        areas.elliptic_F_imag(2.0, 1.0)
    with pytest.raises(ValueError):
        areas.elliptic_F_imag(0.3, 0.0)
