"""Moduli areas: elliptic-integral formulas, fan quadrature, Monte Carlo.

The boundary-curve fans have area integral 2 r^2/(1+r^2) d(theta), which for
the generic curve reduces to (pi/2 - alpha) - F(pi/2 - alpha, i/lambda) with
F the incomplete elliptic integral of the first kind.  For purely imaginary
modulus the integrand 1/sqrt(1 + sin^2(u)/lambda^2) is real and smooth, so F
is evaluated as an ordinary adaptive quadrature rather than through a
complex-modulus special function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .charts import solid_constants
from .moduli import analytic_in_moduli_batch
from ._kernels import sample_sphere

# quadrature targets: absolute 1e-13 for the elliptic kernel, 1e-12 for fans
_EPS_ELLIPTIC = 1e-13
_EPS_FAN = 1e-12


def elliptic_F_imag(t: float, lam: float) -> float:
    """F(t, i/lambda): integral of du / sqrt(1 + sin(u)^2 / lambda^2) on [0, t]."""
    if not 0.0 <= t <= 0.5 * math.pi + 1e-12:
        raise ValueError("amplitude t must lie in [0, pi/2]")
    if lam <= 0.0:
        raise ValueError("lambda must be positive")
    if t == 0.0:
        return 0.0
    inv2 = 1.0 / (lam * lam)
    val, _ = integrate.quad(lambda u: 1.0 / math.sqrt(1.0 + inv2 * math.sin(u) ** 2),
                            0.0, t, epsabs=_EPS_ELLIPTIC, epsrel=_EPS_ELLIPTIC, limit=200)
    return val


def fan_area_quadrature(r_of_theta, alpha: float, beta: float) -> float:
    """Spherical area of the chart fan 0 <= r <= r(theta), theta in [alpha, beta]."""
    val, _ = integrate.quad(lambda t: 2.0 * r_of_theta(t) ** 2 / (1.0 + r_of_theta(t) ** 2),
                            alpha, beta, epsabs=_EPS_FAN, epsrel=_EPS_FAN, limit=200)
    return val


@dataclass(frozen=True)
class AreaReport:
    """Part areas (steradians) of one family's moduli."""

    n: int
    A1: float
    A2: float
    A3: float
    A7: float
    A4: float
    A5: float
    A8: float
    A13: float
    total: float
    fraction_of_sphere: float


def part_areas(n: int) -> AreaReport:
    """Exact-formula areas of the eight moduli parts and their total.

    The four core triangles each cover 1/(6N) of the sphere.  A5 and A13 are
    the gamma_A / gamma_B fans, A4 and A8 the two gamma_C fans (A13 and A8
    absorb the extra regions of the icosahedral family).
    """
    c = solid_constants(n)
    tri = 4.0 * math.pi / (6.0 * c.faces)
    half_angle = (0.5 - 1.0 / n) * math.pi
    a5 = math.pi / 6.0 - elliptic_F_imag(math.pi / 6.0, c.lambda_a)
    a13 = half_angle - elliptic_F_imag(half_angle, c.lambda_b)
    a4 = math.pi / 6.0 - elliptic_F_imag(math.pi / 6.0, c.lambda_c)
    a8 = half_angle - elliptic_F_imag(half_angle, c.lambda_c)
    total = 4.0 * tri + a5 + a13 + a4 + a8
    return AreaReport(n=n, A1=tri, A2=tri, A3=tri, A7=tri,
                      A4=a4, A5=a5, A8=a8, A13=a13,
                      total=total, fraction_of_sphere=total / (4.0 * math.pi))


def part_areas_quadrature(n: int) -> dict:
    """The four curve-fan areas by direct quadrature of 2r^2/(1+r^2).

    Independent route against the elliptic formulas in part_areas: the
    integrand runs over the curve radius functions in their home charts.
    """
    from . import moduli

    spec_a = moduli.curve_spec("gamma_A", n)
    spec_b = moduli.curve_spec("gamma_B", n)
    spec_ca = moduli.curve_spec("gamma_C_A", n)
    spec_cb = moduli.curve_spec("gamma_C_B", n)
    return {
        "A5": fan_area_quadrature(lambda t: moduli.curve_radius(spec_a, t),
                                  spec_a.theta_lo, spec_a.theta_hi),
        "A13": fan_area_quadrature(lambda t: moduli.curve_radius(spec_b, t),
                                   spec_b.theta_lo, spec_b.theta_hi),
        "A4": fan_area_quadrature(lambda t: moduli.curve_radius(spec_ca, t),
                                  -0.5 * math.pi, -math.pi / 3.0),
        "A8": fan_area_quadrature(lambda t: moduli.curve_radius(spec_cb, t),
                                  -(1.0 - 1.0 / n) * math.pi, -0.5 * math.pi),
    }


def consistency_A2A4A8(n: int) -> float:
    """|A2 + A4 + A8 - (pi/2 - F(pi/2, i/lambda_C))|: the gamma_C fan closes
    over the whole quarter-turn because the curve has one equation on both
    sides of C."""
    rep = part_areas(n)
    lhs = rep.A2 + rep.A4 + rep.A8
    rhs = 0.5 * math.pi - elliptic_F_imag(0.5 * math.pi, solid_constants(n).lambda_c)
    return abs(lhs - rhs)


@dataclass(frozen=True)
class MonteCarloEstimate:
    n: int
    samples: int
    seed: int
    hits: int
    estimate: float
    stderr: float


def monte_carlo_area(n: int, samples: int, seed: int) -> MonteCarloEstimate:
    """Area estimate from uniform sphere sampling of the analytic predicate.

    Deterministic given (seed, samples): the counter-based generator and the
    single evaluation pass do not depend on scheduling.
    """
    if samples < 1000:
        raise ValueError("samples must be >= 1000")
    pts = sample_sphere(samples, seed)
    hits = int(np.count_nonzero(analytic_in_moduli_batch(n, pts)))
    p = hits / samples
    area = 4.0 * math.pi * p
    err = 4.0 * math.pi * math.sqrt(max(p * (1.0 - p), 0.0) / samples)
    return MonteCarloEstimate(n=n, samples=samples, seed=seed, hits=hits,
                              estimate=area, stderr=err)
