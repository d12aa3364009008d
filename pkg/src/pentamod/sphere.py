"""Floating-point spherical primitives: unit vectors, rotations, minor arcs.

Points on the sphere are plain numpy arrays of shape (3,), kept unit length.
All angles are radians.  Distances are computed with atan2 of cross-norm and
dot, never acos, so they stay accurate near 0 and pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AntipodalEndpoints, DegenerateArc

# Default angular tolerance for incidence predicates.  Closed-form constants
# leave ~1e-12 of double noise; 1e-9 gives three decades of margin.
DEFAULT_TOL = 1e-9

# |u + v| below this means antipodal endpoints.
ANTIPODAL_EPS = 1e-9

# Angular separation below this means coincident endpoints.
DEGENERATE_EPS = 1e-12


def unit(v) -> np.ndarray:
    """Normalize a 3-vector to unit length."""
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v)


def angular_distance(u: np.ndarray, v: np.ndarray) -> float:
    """Spherical distance between two unit vectors, in [0, pi]."""
    return math.atan2(np.linalg.norm(np.cross(u, v)), float(u @ v))


@dataclass(frozen=True)
class Rotation:
    """Rotation about a unit axis by an angle, right-hand rule."""

    axis: np.ndarray
    angle: float

    def matrix(self) -> np.ndarray:
        """Rodrigues rotation matrix."""
        k = unit(self.axis)
        kx = np.array([[0.0, -k[2], k[1]],
                       [k[2], 0.0, -k[0]],
                       [-k[1], k[0], 0.0]])
        return np.eye(3) + math.sin(self.angle) * kx + (1.0 - math.cos(self.angle)) * (kx @ kx)


def rotate(p: np.ndarray, r: Rotation) -> np.ndarray:
    """Apply a rotation to a unit vector; the result is renormalized."""
    return unit(r.matrix() @ np.asarray(p, dtype=float))


@dataclass(frozen=True)
class GreatArc:
    """Minor geodesic arc from u to v, with the unit normal of its great circle.

    The normal is oriented along u x v, and length is the angular extent,
    always in (0, pi).
    """

    u: np.ndarray
    v: np.ndarray
    normal: np.ndarray = field(repr=False)
    length: float

    def point_at(self, t: float) -> np.ndarray:
        """Point at fraction t in [0, 1] along the arc (slerp)."""
        s = math.sin(self.length)
        w = (math.sin((1.0 - t) * self.length) * self.u + math.sin(t * self.length) * self.v) / s
        return unit(w)


def minor_arc(u: np.ndarray, v: np.ndarray) -> GreatArc:
    """Minor arc between two non-antipodal, non-coincident unit vectors."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if np.linalg.norm(u + v) <= ANTIPODAL_EPS:
        raise AntipodalEndpoints("arc endpoints are antipodal")
    length = angular_distance(u, v)
    if length < DEGENERATE_EPS:
        raise DegenerateArc("arc endpoints coincide")
    return GreatArc(u=u, v=v, normal=unit(np.cross(u, v)), length=length)


def point_on_arc(p: np.ndarray, s: GreatArc, tol: float = DEFAULT_TOL) -> bool:
    """True iff p lies on the supporting circle and within the arc's span.

    Both the distance to the circle and the angular overshoot past the
    endpoints are compared against tol.
    """
    d = float(p @ s.normal)
    if abs(d) > math.sin(min(abs(tol), 1.0)) + 1e-15:
        return False
    e2 = np.cross(s.normal, s.u)
    ang = math.atan2(float(p @ e2), float(p @ s.u))
    return -tol <= ang <= s.length + tol


def _circle_interval(ref: GreatArc, other: GreatArc) -> tuple[float, float]:
    """Angular interval of `other` measured along `ref`'s circle frame."""
    e2 = np.cross(ref.normal, ref.u)
    a0 = math.atan2(float(other.u @ e2), float(other.u @ ref.u))
    a1 = math.atan2(float(other.v @ e2), float(other.v @ ref.u))
    lo, hi = min(a0, a1), max(a0, a1)
    if hi - lo > math.pi:  # interval wraps through the branch cut
        lo, hi = hi, lo + 2.0 * math.pi
    return lo, hi


@dataclass(frozen=True)
class ArcIntersection:
    """Result of intersecting two arcs.

    points holds the transversal intersection points (possibly empty).  When
    the supporting circles coincide, overlap is True and shared holds the
    endpoints of the common sub-arc (empty tuple when the arcs merely touch
    or are disjoint on the circle).
    """

    points: tuple
    overlap: bool
    shared: tuple = ()


def arc_intersect(s: GreatArc, t: GreatArc, tol: float = DEFAULT_TOL) -> ArcIntersection:
    """Intersect two minor arcs.

    Transversal case: candidates are +-(normal_s x normal_t) normalized,
    filtered by on-arc tests on both inputs.  Coplanar case: reported via the
    overlap flag together with the shared sub-arc endpoints.
    """
    m = np.cross(s.normal, t.normal)
    nm = np.linalg.norm(m)
    if nm < tol:
        lo, hi = _circle_interval(s, t)
        a, b = max(0.0, lo), min(s.length, hi)
        # retry with a 2*pi shift in case t's interval sits across the cut
        a2, b2 = max(0.0, lo - 2.0 * math.pi), min(s.length, hi - 2.0 * math.pi)
        if b2 - a2 > b - a:
            a, b = a2, b2
        if b - a > tol:
            e2 = np.cross(s.normal, s.u)
            p0 = unit(math.cos(a) * s.u + math.sin(a) * e2)
            p1 = unit(math.cos(b) * s.u + math.sin(b) * e2)
            return ArcIntersection(points=(), overlap=True, shared=(p0, p1))
        if b - a > -tol:
            p0 = unit(math.cos(0.5 * (a + b)) * s.u + math.sin(0.5 * (a + b)) * np.cross(s.normal, s.u))
            return ArcIntersection(points=(p0,), overlap=True, shared=())
        return ArcIntersection(points=(), overlap=True, shared=())
    m = m / nm
    pts = []
    for cand in (m, -m):
        if point_on_arc(cand, s, tol) and point_on_arc(cand, t, tol):
            pts.append(cand)
    return ArcIntersection(points=tuple(pts), overlap=False)
