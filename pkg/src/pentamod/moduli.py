"""Region division, boundary curves, analytic membership and reduction loci.

The sphere is cut into 6n regions by rotating the great circle AB about A in
multiples of pi/3 and about B in multiples of pi/n.  Region indices follow
the labelling of the source figures: going around A the inner band is
Omega_1..Omega_6, each further band of B-sectors adds 6, odd indices on the
M-side of circle AB and even indices mirrored.

The moduli boundary consists of two straight arcs (in the M-chart) plus the
three curves gamma_A, gamma_B, gamma_C.  Every curve is carried in four
equivalent representations (polar, cartesian, complex, spherical quadratic)
in its home chart, plus closed polar forms in the M-chart.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import charts
from .charts import SQ2, SQ3, SQ5, ChartPoint, geometry, solid_constants
from .errors import NoRootInDisk, OutOfRange
from .sphere import DEFAULT_TOL

CORE_REGIONS = (1, 2, 3, 7)

# angular half-width treated as "on" a dividing circle or at a vertex
_REGION_TOL = DEFAULT_TOL

# clamp width at the sec-singular curve endpoints (eqD blows up there; the
# limiting radius 0 is substituted inside this band)
_SINGULAR_CLAMP = 1e-9

# the open moduli excludes its bounding curves; comparisons against a curve
# radius leave this margin so an exactly-on-curve sample lands outside
# deterministically (the oracle's own transition sits a few 1e-10 inside)
CURVE_EXCLUSION = 1e-11


# ---------------------------------------------------------------------------
# division circles and vertices


@dataclass(frozen=True)
class Division:
    """Dividing great circles (unit normals) and the vertices on the moduli
    closure, in world coordinates."""

    n: int
    circle_names: tuple[str, ...]
    normals: np.ndarray          # (n+2, 3)
    vertices: dict               # name -> unit vector


@lru_cache(maxsize=None)
def division(n: int) -> Division:
    geo = geometry(n)
    names = ["AB", "A60", "A120"]
    normals = [np.cross(geo.A, geo.B)]
    for k in (1, 2):
        q = charts.to_sphere(ChartPoint(cmath.rect(0.5, k * math.pi / 3.0), "A", n))
        normals.append(np.cross(geo.A, q))
    for k in range(1, n):
        q = charts.to_sphere(ChartPoint(cmath.rect(0.5, k * math.pi / n), "B", n))
        names.append(f"B{k}")
        normals.append(np.cross(geo.B, q))
    normals = np.array([v / np.linalg.norm(v) for v in normals])
    verts = {"A": geo.A, "B": geo.B, "M": geo.M, "C": geo.C,
             "B'": geo.B_prime, "A'": geo.A_prime}
    return Division(n=n, circle_names=tuple(names), normals=normals, vertices=verts)


@dataclass(frozen=True)
class Boundary:
    """Returned by region_of for points within tolerance of the division."""

    kind: str                    # "arc" or "vertex"
    regions: tuple[int, ...]     # adjacent region indices
    vertex: str | None = None    # named construction vertex, when recognized


def _chart_polar(geo, p: np.ndarray, chart: str) -> tuple[float, float]:
    """(theta, r) of p in the chart; r is +inf at the origin's antipode."""
    xi = geo.frame(chart) @ p
    theta = math.atan2(xi[1], xi[0])
    denom = 1.0 - xi[2]
    if denom < 1e-15:
        return theta, math.inf
    return theta, math.sqrt(max(0.0, (1.0 + xi[2]) / denom))


def _sector_region(n: int, jA: int, jB: int) -> int:
    """Region index for the (A-sector, B-sector) pair; 0 if unrealized."""
    if jA <= 2 and jB <= n - 1:
        return 6 * (n - 1 - jB) + 2 * jA + 1
    if jA >= 3 and jB >= n:
        return 6 * (jB - n) + 2 * (5 - jA) + 2
    return 0


def region_pair(n: int, m: int) -> tuple[int, int]:
    """(A-sector, B-sector) pair of region m; inverse of the lookup."""
    if not 1 <= m <= 6 * n:
        raise ValueError(f"region index out of range: {m}")
    k, r = divmod(m - 1, 6)
    if r % 2 == 0:   # odd region index
        return r // 2, n - 1 - k
    return 5 - r // 2, n + k


def _region_of_interior(n: int, p: np.ndarray) -> int:
    geo = geometry(n)
    thA, _ = _chart_polar(geo, p, "A")
    thB, _ = _chart_polar(geo, p, "B")
    jA = int((thA % (2.0 * math.pi)) // (math.pi / 3.0)) % 6
    jB = int((thB % (2.0 * math.pi)) // (math.pi / n)) % (2 * n)
    m = _sector_region(n, jA, jB)
    if m == 0:
        # the two hemisphere readings disagree, so p sits in the float-noise
        # band of circle AB; nudge off the plane and reclassify
        nab = division(n).normals[0]
        side = 1.0 if float(p @ nab) >= 0.0 else -1.0
        q = p + side * 1e-7 * nab
        return _region_of_interior(n, q / np.linalg.norm(q))
    return m


def region_of(n: int, p: np.ndarray, tol: float = _REGION_TOL):
    """Classify a sphere point into its region, or a Boundary descriptor.

    Points within tol (radians) of a dividing circle report the adjacent
    regions; points near two or more circles are vertices.
    """
    solid_constants(n)
    div = division(n)
    p = np.asarray(p, dtype=float)
    dists = np.arcsin(np.clip(div.normals @ p, -1.0, 1.0))
    on = np.flatnonzero(np.abs(dists) <= math.sin(tol) + 1e-15)
    if len(on) == 0:
        return _region_of_interior(n, p)
    vertex_name = None
    chord = 2.0 * math.sin(0.5 * max(tol, 1e-7))
    for name, v in div.vertices.items():
        if np.linalg.norm(p - v) <= chord:
            vertex_name = name
            break
    kind = "vertex" if (len(on) >= 2 or vertex_name) else "arc"
    # probe a small circle around p for the adjacent regions
    radius = max(200.0 * tol, 1e-6)
    e1 = div.normals[on[0]]
    e2 = np.cross(p, e1)
    e2 /= np.linalg.norm(e2)
    e1 = np.cross(e2, p)
    neighbours = set()
    for k in range(16):
        ang = 2.0 * math.pi * (k + 0.31) / 16.0
        q = p + radius * (math.cos(ang) * e1 + math.sin(ang) * e2)
        q /= np.linalg.norm(q)
        if np.min(np.abs(np.arcsin(np.clip(div.normals @ q, -1.0, 1.0)))) > 0.2 * radius:
            neighbours.add(_region_of_interior(n, q))
    return Boundary(kind=kind, regions=tuple(sorted(neighbours)), vertex=vertex_name)


# ---------------------------------------------------------------------------
# boundary curves in their home charts

CURVE_NAMES = ("gamma_A", "gamma_B", "gamma_C_A", "gamma_C_B")


@dataclass(frozen=True)
class CurveSpec:
    """One boundary curve in its home chart.

    The generic curve equation is written in a rotated/reflected variable v;
    phi(theta) = phi_const + phi_sign * theta maps the chart polar angle to
    the angle of v.
    """

    which: str
    n: int
    lam: float
    alpha: float
    chart: str
    theta_lo: float
    theta_hi: float
    phi_const: float
    phi_sign: float
    singular_end: str   # "lo" or "hi": which endpoint has r -> 0


@dataclass(frozen=True)
class CurveSample:
    theta: float
    r: float
    z: ChartPoint
    xi: np.ndarray = field(repr=False)
    line_locus: bool = False


def curve_spec(which: str, n: int) -> CurveSpec:
    c = solid_constants(n)
    if which == "gamma_A":
        return CurveSpec(which, n, c.lambda_a, math.pi / 3.0, "A",
                         2.0 * math.pi / 3.0, 5.0 * math.pi / 6.0, 0.0, 1.0, "hi")
    if which == "gamma_B":
        return CurveSpec(which, n, c.lambda_b, math.pi / n, "B",
                         (0.5 - 1.0 / n) * math.pi, (1.0 - 2.0 / n) * math.pi,
                         math.pi, -1.0, "lo")
    if which == "gamma_C_A":
        return CurveSpec(which, n, c.lambda_c, math.pi / 3.0, "A",
                         -0.5 * math.pi, 0.0, math.pi / 3.0, -1.0, "lo")
    if which == "gamma_C_B":
        return CurveSpec(which, n, c.lambda_c, math.pi / n, "B",
                         -math.pi, -0.5 * math.pi, math.pi + math.pi / n, -1.0, "hi")
    raise ValueError(f"unknown curve {which!r}")


def _eqd_radius(lam: float, alpha: float, phi: float) -> float:
    # rationalized form of sqrt(1 + (lam*sec)^2) - lam*sec: no cancellation
    # as sec grows toward the r -> 0 endpoint (sec > 0 over every admissible
    # range)
    s = 1.0 / math.cos(phi - alpha)
    return 1.0 / (math.sqrt(1.0 + lam * lam * s * s) + lam * s)


def curve_radius(spec: CurveSpec, theta: float) -> float:
    """Polar radius of the curve at chart angle theta (the explicit solution
    of the quadratic in r), with the sec-singular endpoint clamped to 0."""
    if theta < spec.theta_lo - 1e-12 or theta > spec.theta_hi + 1e-12:
        raise OutOfRange(f"theta {theta} outside [{spec.theta_lo}, {spec.theta_hi}]")
    singular = spec.theta_lo if spec.singular_end == "lo" else spec.theta_hi
    if abs(theta - singular) < _SINGULAR_CLAMP:
        return 0.0
    return _eqd_radius(spec.lam, spec.alpha, spec.phi_const + spec.phi_sign * theta)


def gamma_point(spec: CurveSpec, theta: float) -> CurveSample:
    """Curve sample at chart angle theta."""
    r = curve_radius(spec, theta)
    z = ChartPoint(cmath.rect(r, theta), spec.chart, spec.n)
    return CurveSample(theta=theta, r=r, z=z, xi=charts.to_sphere(z))


def gamma_residual(spec: CurveSpec, p: np.ndarray) -> float:
    """Spherical quadratic of the curve, evaluated in its chart frame.

    Zero exactly on the curve's supporting quadric.
    """
    xi = geometry(spec.n).frame(spec.chart) @ np.asarray(p, dtype=float)
    x1, x2, x3 = float(xi[0]), float(xi[1]), float(xi[2])
    rr = x1 * x1 + x2 * x2
    if spec.which == "gamma_A":
        return 2.0 * spec.lam * rr + (x1 + SQ3 * x2) * x3
    if spec.which == "gamma_B":
        cn, sn = math.cos(math.pi / spec.n), math.sin(math.pi / spec.n)
        return spec.lam * rr - (x1 * cn - x2 * sn) * x3
    if spec.which == "gamma_C_A":
        return spec.lam * rr + x1 * x3
    return spec.lam * rr - x1 * x3


def gamma_cartesian_residual(spec: CurveSpec, z: complex) -> float:
    """Cartesian (cubic) form of the curve at chart coordinate z."""
    x, y = z.real, z.imag
    rr = x * x + y * y
    if spec.which == "gamma_A":
        return 4.0 * spec.lam * rr + (x + SQ3 * y) * (rr - 1.0)
    if spec.which == "gamma_B":
        cn, sn = math.cos(math.pi / spec.n), math.sin(math.pi / spec.n)
        return 2.0 * spec.lam * rr - (x * cn - y * sn) * (rr - 1.0)
    if spec.which == "gamma_C_A":
        return 2.0 * spec.lam * rr + x * (rr - 1.0)
    return 2.0 * spec.lam * rr - x * (rr - 1.0)


def gamma_complex_residual(spec: CurveSpec, z: complex) -> float:
    """Complex form of the curve at chart coordinate z; z e^(-ia) + conj both
    ways collapses to twice a real part, so the value is real."""
    rr = abs(z) ** 2
    if spec.which == "gamma_A":
        w = z * cmath.exp(-1j * math.pi / 3.0)
        return 4.0 * spec.lam * rr + 2.0 * w.real * (rr - 1.0)
    if spec.which == "gamma_B":
        w = z * cmath.exp(1j * math.pi / spec.n)
        return 4.0 * spec.lam * rr - 2.0 * w.real * (rr - 1.0)
    if spec.which == "gamma_C_A":
        return 4.0 * spec.lam * rr + 2.0 * z.real * (rr - 1.0)
    return 4.0 * spec.lam * rr - 2.0 * z.real * (rr - 1.0)


# ---------------------------------------------------------------------------
# M-chart closed polar forms and cartesian equations

M_THETA_RANGE = {
    "gamma_A": (0.5 * math.pi, math.pi),
    "gamma_B": (1.5 * math.pi, 2.0 * math.pi),
    "gamma_C": (math.pi, 1.5 * math.pi),
}


def _m_chart_R(which: str, n: int, t: float) -> float:
    if which == "gamma_A":
        if n == 3:
            return SQ2 * math.cos(t) + math.sqrt(5.0 + 3.0 * math.cos(2.0 * t))
        if n == 4:
            return math.sqrt(6.0 + 2.0 * math.cos(2.0 * t))
        return (1.0 - SQ5) * math.cos(t) + math.sqrt(11.0 + SQ5 + (5.0 - SQ5) * math.cos(2.0 * t))
    if which == "gamma_B":
        if n == 3:
            return SQ2 * math.sin(t) + math.sqrt(5.0 - 3.0 * math.cos(2.0 * t))
        if n == 4:
            return 2.0 * math.sin(t) + 2.0 * math.sqrt(3.0 - math.cos(2.0 * t))
        return (1.0 + SQ5) * math.sin(t) + math.sqrt(19.0 + 7.0 * SQ5 - (5.0 + SQ5) * math.cos(2.0 * t))
    if which == "gamma_C":
        c, s = math.cos(t), math.sin(t)
        if n == 3:
            return SQ2 * (2.0 * c * s - 1.0) / (c + s)
        if n == 4:
            # prose denominator sqrt2*cos+sin is a misprint; the figure code
            # and the Mobius transport both give cos+sqrt2*sin
            return 2.0 * (c * s - SQ2) / (c + SQ2 * s)
        return 2.0 * (SQ5 - 1.0) * (c * s - SQ5 - 2.0) / (2.0 * c + (SQ5 + 1.0) * s)
    raise ValueError(f"unknown curve {which!r}")


def gamma_m_chart(which: str, n: int, theta: float) -> CurveSample:
    """Curve sample in the M-chart from the closed polar forms."""
    solid_constants(n)
    lo, hi = M_THETA_RANGE[which]
    if theta < lo - 1e-12 and lo - 1e-12 <= theta + 2.0 * math.pi <= hi + 1e-12:
        theta += 2.0 * math.pi
    elif theta > hi + 1e-12 and lo - 1e-12 <= theta - 2.0 * math.pi <= hi + 1e-12:
        theta -= 2.0 * math.pi
    if theta < lo - 1e-12 or theta > hi + 1e-12:
        raise OutOfRange(f"theta {theta} outside [{lo}, {hi}]")
    R = _m_chart_R(which, n, theta)
    r = 0.5 * (math.sqrt(R * R + 4.0) - R)
    z = ChartPoint(cmath.rect(r, theta), "M", n)
    return CurveSample(theta=theta, r=r, z=z, xi=charts.to_sphere(z))


def m_chart_cartesian_residual(which: str, n: int, z: complex) -> float:
    """M-chart cartesian equation of the curve (quartic for gamma_A/B, cubic
    for gamma_C).  The n=3 linear terms are -2*sqrt2*x and -2*sqrt2*y; the
    source prints -x and -y, inconsistent with its own polar forms."""
    x, y = z.real, z.imag
    rr = x * x + y * y
    if which == "gamma_A":
        if n == 3:
            return rr * rr + 2.0 * SQ2 * rr * x - 8.0 * x * x - 4.0 * y * y - 2.0 * SQ2 * x + 1.0
        if n == 4:
            return rr * rr - 10.0 * x * x - 6.0 * y * y + 1.0
        return (rr * rr - 2.0 * (SQ5 - 1.0) * rr * x - 2.0 * (SQ5 + 6.0) * x * x
                - 2.0 * (SQ5 + 4.0) * y * y + 2.0 * (SQ5 - 1.0) * x + 1.0)
    if which == "gamma_B":
        if n == 3:
            return rr * rr + 2.0 * SQ2 * rr * y - 4.0 * x * x - 8.0 * y * y - 2.0 * SQ2 * y + 1.0
        if n == 4:
            return rr * rr + 4.0 * rr * y - 10.0 * x * x - 14.0 * y * y - 4.0 * y + 1.0
        return (rr * rr + 2.0 * (SQ5 + 1.0) * rr * y - 2.0 * (3.0 * SQ5 + 8.0) * x * x
                - 2.0 * (3.0 * SQ5 + 10.0) * y * y - 2.0 * (SQ5 + 1.0) * y + 1.0)
    if which == "gamma_C":
        if n == 3:
            return (rr - 1.0) * (x + y) - SQ2 * (x - y) ** 2
        if n == 4:
            return (rr - 1.0) * (x + SQ2 * y) - 2.0 * SQ2 * rr + 2.0 * x * y
        return ((rr - 1.0) * (2.0 * x + (SQ5 + 1.0) * y)
                - 2.0 * (SQ5 + 3.0) * rr + 2.0 * (SQ5 - 1.0) * x * y)
    raise ValueError(f"unknown curve {which!r}")


# ---------------------------------------------------------------------------
# analytic membership


@lru_cache(maxsize=None)
def _fan_ray_radii(n: int) -> tuple[float, float]:
    """For n=5: moduli extent along the internal rays Omega13^Omega19 and
    Omega8^Omega14 (B-chart angles 2pi/5 and -3pi/5)."""
    if n != 5:
        return (0.0, 0.0)
    rb = curve_radius(curve_spec("gamma_B", 5), 2.0 * math.pi / 5.0)
    rc = curve_radius(curve_spec("gamma_C_B", 5), -3.0 * math.pi / 5.0)
    return (rb, rc)


def analytic_in_moduli(n: int, p: np.ndarray, tol: float = _REGION_TOL) -> bool:
    """Membership from the region division and the closed boundary curves.

    True on the open core triangles, on their included internal arcs, and on
    the open fan regions between the curves and the core; False on the
    curves, the excluded arcs and all division vertices.
    """
    geo = geometry(n)
    c = geo.constants
    div = division(n)
    p = np.asarray(p, dtype=float)
    chord = 2.0 * math.sin(0.5 * tol)
    for v in div.vertices.values():
        if np.linalg.norm(p - v) <= chord:
            return False
    dists = np.arcsin(np.clip(div.normals @ p, -1.0, 1.0))
    on = np.flatnonzero(np.abs(dists) <= math.sin(tol) + 1e-15)
    if len(on) >= 2:
        return False
    thA, rA = _chart_polar(geo, p, "A")
    thB, rB = _chart_polar(geo, p, "B")
    if len(on) == 1:
        return _on_circle_membership(n, div.circle_names[on[0]], thA, rA, thB, rB, c)
    jA = int((thA % (2.0 * math.pi)) // (math.pi / 3.0)) % 6
    jB = int((thB % (2.0 * math.pi)) // (math.pi / n)) % (2 * n)
    m = _sector_region(n, jA, jB)
    if m in CORE_REGIONS:
        return True
    if m == 5:
        return (2.0 * math.pi / 3.0 < thA < 5.0 * math.pi / 6.0
                and rA < curve_radius(curve_spec("gamma_A", n), thA) - CURVE_EXCLUSION)
    if m == 4:
        return (-0.5 * math.pi < thA < -math.pi / 3.0
                and rA < curve_radius(curve_spec("gamma_C_A", n), thA) - CURVE_EXCLUSION)
    if m == 13 or (n == 5 and m == 19):
        return ((0.5 - 1.0 / n) * math.pi < thB < (1.0 - 2.0 / n) * math.pi
                and rB < curve_radius(curve_spec("gamma_B", n), thB) - CURVE_EXCLUSION)
    if m == 8 or (n == 5 and m == 14):
        return (-(1.0 - 1.0 / n) * math.pi < thB < -0.5 * math.pi
                and rB < curve_radius(curve_spec("gamma_C_B", n), thB) - CURVE_EXCLUSION)
    return False


def _on_circle_membership(n, circle, thA, rA, thB, rB, c) -> bool:
    """Inclusion rules for points on exactly one dividing circle."""
    if circle == "AB":
        return math.cos(thA) > 0.0 and rA < c.d_ab
    if circle == "A60":
        return math.cos(thA - math.pi / 3.0) > 0.0 and rA < c.d_am
    if circle == "A120":
        if math.cos(thA - 2.0 * math.pi / 3.0) > 0.0:
            return rA < c.d_ab          # arc A-B' (Omega3^Omega5 side)
        return rA < c.d_am              # arc A-C
    k = int(circle[1:])
    beta = k * math.pi / n
    if math.cos(thB - beta) > 0.0:      # ray through B at angle k*pi/n
        if k == n - 1:
            return rB < c.d_bm          # arc B-M
        if k == n - 2:
            return rB < c.d_ab          # arc B-A'
        if n == 5 and k == 2:
            return rB < _fan_ray_radii(5)[0] - CURVE_EXCLUSION
        return False
    # opposite ray, angle k*pi/n - pi
    if k == 1:
        return rB < c.d_bm              # arc B-C
    if n == 5 and k == 2:
        return rB < _fan_ray_radii(5)[1] - CURVE_EXCLUSION
    return False


def analytic_in_moduli_batch(n: int, pts: np.ndarray, tol: float = _REGION_TOL) -> np.ndarray:
    """Vectorized membership over an (N, 3) array of unit vectors."""
    from . import _kernels
    return _kernels.membership_batch(n, np.asarray(pts, dtype=float), tol)


def oracle_in_moduli_batch(n: int, pts: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Vectorized simplicity oracle over an (N, 3) array of unit vectors."""
    from . import _kernels
    return _kernels.oracle_batch(n, np.asarray(pts, dtype=float), tol)


# quadric coefficients (scale, c1, c2) of L(x1^2+x2^2) + (c1 x1 + c2 x2) x3
# for the first-order distance estimate in boundary_band_mask
def _quadric_coeffs(spec: CurveSpec) -> tuple[float, float, float]:
    if spec.which == "gamma_A":
        return 2.0 * spec.lam, 1.0, SQ3
    if spec.which == "gamma_B":
        return spec.lam, -math.cos(math.pi / spec.n), math.sin(math.pi / spec.n)
    if spec.which == "gamma_C_A":
        return spec.lam, 1.0, 0.0
    return spec.lam, -1.0, 0.0


def boundary_band_mask(n: int, pts: np.ndarray, band: float) -> np.ndarray:
    """True for points within `band` radians of any moduli-boundary locus.

    Covers the division circles, the division vertices and the supporting
    quadrics of the three curves; curve distance is the first-order estimate
    |Q| / |grad Q| (exact to O(band^2)).
    """
    pts = np.asarray(pts, dtype=float)
    div = division(n)
    near = np.zeros(pts.shape[0], dtype=bool)
    if band <= 0.0:
        return near
    for v in div.vertices.values():
        near |= np.linalg.norm(pts - v, axis=1) <= 2.0 * math.sin(0.5 * band)
    near |= (np.abs(np.arcsin(np.clip(pts @ div.normals.T, -1.0, 1.0))) <= band).any(axis=1)
    geo = geometry(n)
    for which in CURVE_NAMES:
        spec = curve_spec(which, n)
        L, c1, c2 = _quadric_coeffs(spec)
        xi = pts @ geo.frame(spec.chart).T
        x1, x2, x3 = xi[:, 0], xi[:, 1], xi[:, 2]
        q = L * (x1 * x1 + x2 * x2) + (c1 * x1 + c2 * x2) * x3
        g = np.column_stack([2.0 * L * x1 + c1 * x3,
                             2.0 * L * x2 + c2 * x3,
                             c1 * x1 + c2 * x2])
        g -= (np.einsum("ij,ij->i", g, xi))[:, None] * xi
        gn = np.linalg.norm(g, axis=1)
        near |= np.abs(q) <= band * np.maximum(gn, 1e-12)
    return near


# ---------------------------------------------------------------------------
# reduction loci (a=b, a=c, b=c)

REDUCTION_KINDS = ("a=b", "a=c", "b=c")


@lru_cache(maxsize=None)
def _ab_plane(n: int) -> np.ndarray:
    """Coefficients (l1, l2, l3) of the a=b plane l.xi = 0 in the M-frame.

    The locus of equal distance to A and B is the great circle with normal
    A - B.  The normal is rescaled to the coefficient pattern of the source
    (leading coefficients 1, sqrt2, 2*5^(1/4) for n = 3, 4, 5).
    """
    geo = geometry(n)
    nrm = geo.A - geo.B
    lead = {3: 1.0, 4: SQ2, 5: 2.0 * 5.0 ** 0.25}[n]
    return nrm * (lead / nrm[0])


def _ac_cylinder(n: int, xi: np.ndarray) -> float:
    x1, x3 = float(xi[0]), float(xi[2])
    if n == 3:
        return 2.0 * SQ3 * x3 * x3 + SQ2 * x1 + x3 - SQ3
    if n == 4:
        return 2.0 * SQ3 * x3 * x3 + x1 + SQ2 * x3 - SQ3
    return 4.0 * SQ3 * x3 * x3 + (SQ5 - 1.0) * x1 + (SQ5 + 1.0) * x3 - 2.0 * SQ3


def _bc_cylinder(n: int, xi: np.ndarray) -> float:
    x2, x3 = float(xi[1]), float(xi[2])
    if n == 3:
        return 2.0 * SQ3 * x3 * x3 + SQ2 * x2 + x3 - SQ3
    if n == 4:
        return 2.0 * SQ2 * x3 * x3 + x2 + x3 - SQ2
    q = 5.0 ** 0.25
    return 2.0 * SQ2 * q * x3 * x3 + math.sqrt(SQ5 - 1.0) * x2 + math.sqrt(SQ5 + 1.0) * x3 - SQ2 * q


def reduction_residual(kind: str, n: int, p: np.ndarray) -> float:
    """Plane form (a=b) or parabolic-cylinder form (a=c, b=c) at p.

    Coordinates are the M-chart frame (= world coordinates).  Zero exactly on
    the reduction locus.
    """
    solid_constants(n)
    xi = np.asarray(p, dtype=float)
    if kind == "a=b":
        return float(_ab_plane(n) @ xi)
    if kind == "a=c":
        return _ac_cylinder(n, xi)
    if kind == "b=c":
        return _bc_cylinder(n, xi)
    raise ValueError(f"unknown reduction kind {kind!r}")


def _reduction_quartic(kind: str, n: int) -> tuple[float, float, float]:
    """(c1, c2, c0) of r^4 + c2 r^2 + c0 + c1 r (r^2+1) trig(theta) = 0 in the
    M-chart, trig = cos for a=c and sin for b=c."""
    if kind == "a=c":
        if n == 3:
            return (SQ2 * (SQ3 - 1.0), -3.0 * SQ3 * (SQ3 - 1.0), 2.0 - SQ3)
        if n == 4:
            return (2.0 * (SQ3 - SQ2), -6.0 * SQ3 * (SQ3 - SQ2), 5.0 - 2.0 * math.sqrt(6.0))
        return ((SQ5 - SQ3) * (SQ3 - 1.0),
                3.0 * (2.0 * math.sqrt(15.0) - 3.0 * SQ5 + 4.0 * SQ3 - 9.0),
                -2.0 * math.sqrt(15.0) + 3.0 * SQ5 - 4.0 * SQ3 + 8.0)
    if kind == "b=c":
        if n == 3:
            return (SQ2 * (SQ3 - 1.0), -3.0 * SQ3 * (SQ3 - 1.0), 2.0 - SQ3)
        if n == 4:
            return (2.0 * (SQ2 - 1.0), -6.0 * SQ2 * (SQ2 - 1.0), 3.0 - 2.0 * SQ2)
        q = 5.0 ** 0.25
        c1 = SQ2 * math.sqrt(SQ5 + 1.0) * q - SQ5 - 1.0
        c2 = 3.0 * ((SQ5 + 1.0) ** 1.5 * q / SQ2 - SQ5 - 5.0)
        c0 = -((SQ5 + 1.0) ** 1.5) * q / SQ2 + SQ5 + 4.0
        return (c1, c2, c0)
    raise ValueError(f"no radial quartic for {kind!r}")


def _bracket_root(f, lo: float = 1e-9, hi: float = 1.0 - 1e-9, pieces: int = 64,
                  rtol: float = 1e-13) -> float | None:
    """Smallest root of f in (lo, hi): bracket scan plus bisection."""
    xs = np.linspace(lo, hi, pieces + 1)
    vals = [f(x) for x in xs]
    for i in range(pieces):
        if vals[i] == 0.0:
            return float(xs[i])
        if vals[i] * vals[i + 1] < 0.0:
            a, b, fa = xs[i], xs[i + 1], vals[i]
            while b - a > rtol:
                mid = 0.5 * (a + b)
                fm = f(mid)
                if fa * fm <= 0.0:
                    b = mid
                else:
                    a, fa = mid, fm
            return 0.5 * (a + b)
    return None


def reduction_point(kind: str, n: int, theta: float) -> CurveSample:
    """Radial sample of a reduction locus at M-chart angle theta.

    For a=c and b=c the smallest quartic root in (0, 1) is returned; for the
    circle locus a=b the ray/circle intersection.  Raises NoRootInDisk when
    the ray misses the locus.  The degenerate n=3 diagonal (a=b) returns the
    midpoint of the in-moduli segment, flagged line_locus.
    """
    solid_constants(n)
    if kind == "a=b":
        return _ab_point(n, theta)
    c1, c2, c0 = _reduction_quartic(kind, n)
    trig = math.cos(theta) if kind == "a=c" else math.sin(theta)
    r = _bracket_root(lambda x: x ** 4 + c2 * x * x + c0 + c1 * x * (x * x + 1.0) * trig)
    if r is None:
        raise NoRootInDisk(f"{kind} locus does not meet the ray theta={theta}")
    z = ChartPoint(cmath.rect(r, theta), "M", n)
    return CurveSample(theta=theta, r=r, z=z, xi=charts.to_sphere(z))


def ab_circle(n: int) -> tuple[complex, float]:
    """M-chart center and radius of the a=b circle (radius inf for n=3)."""
    l1, l2, l3 = _ab_plane(n)
    if abs(l3) < 1e-14:
        return complex(0.0, 0.0), math.inf
    # xi.l = 0 with xi = (2x, 2y, r^2-1)/(r^2+1) gives a chart circle
    cx, cy = -l1 / l3, -l2 / l3
    return complex(cx, cy), math.sqrt(cx * cx + cy * cy + 1.0)


def _ab_point(n: int, theta: float) -> CurveSample:
    center, radius = ab_circle(n)
    u = cmath.rect(1.0, theta)
    if math.isinf(radius):
        diag = math.atan2(-_ab_plane(n)[0], _ab_plane(n)[1])  # direction of the line
        if min(abs((theta - diag) % math.pi), math.pi - abs((theta - diag) % math.pi)) > 1e-9:
            raise NoRootInDisk("diagonal locus does not meet this ray")
        r = 0.5 * gamma_m_chart("gamma_C", n, theta).r if math.pi <= theta <= 1.5 * math.pi else 0.25
        z = ChartPoint(cmath.rect(r, theta), "M", n)
        return CurveSample(theta=theta, r=r, z=z, xi=charts.to_sphere(z), line_locus=True)
    b = (u.real * center.real + u.imag * center.imag)
    disc = b * b - (abs(center) ** 2 - radius * radius)
    if disc < 0.0:
        raise NoRootInDisk("ray misses the a=b circle")
    roots = [b - math.sqrt(disc), b + math.sqrt(disc)]
    roots = [r for r in roots if 1e-12 < r < 1.0]
    if not roots:
        raise NoRootInDisk("a=b circle crossing lies outside the unit disk")
    r = min(roots)
    z = ChartPoint(cmath.rect(r, theta), "M", n)
    return CurveSample(theta=theta, r=r, z=z, xi=charts.to_sphere(z))


@dataclass(frozen=True)
class BcGapReport:
    """Radial comparison of the b=c locus against gamma_A in the M-chart."""

    n: int
    min_gap: float
    max_gap: float
    tangency_theta: float
    samples: int


def check_bc_below_gammaA(n: int, samples: int = 1024) -> BcGapReport:
    """Sample gap(theta) = r_gammaA - r_bc over the gamma_A angular range.

    A nonnegative gap means the b=c locus is on the moduli side of gamma_A.
    The reported tangency angle is where the gap is smallest (refined by
    golden-section search around the grid minimum).
    """
    solid_constants(n)

    def gap(t: float) -> float:
        ga = gamma_m_chart("gamma_A", n, t).r
        return ga - reduction_point("b=c", n, t).r

    lo, hi = M_THETA_RANGE["gamma_A"]
    thetas = np.linspace(lo, hi, samples)
    gaps = np.array([gap(t) for t in thetas])
    i = int(np.argmin(gaps))
    a = thetas[max(0, i - 1)]
    b = thetas[min(samples - 1, i + 1)]
    phi = 0.5 * (math.sqrt(5.0) - 1.0)
    x1, x2 = b - phi * (b - a), a + phi * (b - a)
    f1, f2 = gap(x1), gap(x2)
    for _ in range(80):
        if f1 < f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - phi * (b - a)
            f1 = gap(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + phi * (b - a)
            f2 = gap(x2)
    t_star = 0.5 * (a + b)
    g_star = gap(t_star)
    return BcGapReport(n=n, min_gap=min(float(gaps.min()), g_star),
                       max_gap=float(gaps.max()), tangency_theta=float(t_star),
                       samples=samples)
