import math

import numpy as np
import pytest

from pentamod import sphere
from pentamod.errors import AntipodalEndpoints, DegenerateArc

EX = np.array([1.0, 0.0, 0.0])
EY = np.array([0.0, 1.0, 0.0])
EZ = np.array([0.0, 0.0, 1.0])


def random_units(rng, k):
    v = rng.normal(size=(k, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def test_angular_distance_basic():
    assert sphere.angular_distance(EZ, EZ) == 0.0
    assert sphere.angular_distance(EX, -EX) == pytest.approx(math.pi, abs=1e-15)
    assert sphere.angular_distance(EX, EY) == pytest.approx(math.pi / 2, abs=1e-15)


def test_angular_distance_near_poles_stable():
    # acos would lose digits here; atan2 must not
    u = sphere.unit([1.0, 1e-9, 0.0])
    assert sphere.angular_distance(EX, u) == pytest.approx(1e-9, rel=1e-6)
    assert sphere.angular_distance(-EX, u) == pytest.approx(math.pi - 1e-9, abs=1e-14)


def test_rotate_fixes_axis_and_rotates_coordinates():
    r = sphere.Rotation(axis=EZ, angle=0.7)
    assert np.allclose(sphere.rotate(EZ, r), EZ, atol=1e-15)
    r90 = sphere.Rotation(axis=EZ, angle=math.pi / 2)
    assert np.allclose(sphere.rotate(EX, r90), EY, atol=1e-15)


def test_rotate_is_isometry():
    rng = np.random.default_rng(11)
    for _ in range(50):
        axis = random_units(rng, 1)[0]
        rot = sphere.Rotation(axis=axis, angle=rng.uniform(-math.pi, math.pi))
        p, q = random_units(rng, 2)
        d0 = sphere.angular_distance(p, q)
        d1 = sphere.angular_distance(sphere.rotate(p, rot), sphere.rotate(q, rot))
        assert abs(d0 - d1) < 1e-11
        assert abs(sphere.angular_distance(axis, p)
                   - sphere.angular_distance(axis, sphere.rotate(p, rot))) < 1e-12


def test_minor_arc_basic():
    a = sphere.minor_arc(EX, EY)
    assert np.allclose(a.normal, EZ, atol=1e-15)
    assert a.length == pytest.approx(math.pi / 2, abs=1e-15)
    with pytest.raises(AntipodalEndpoints):
        sphere.minor_arc(EX, -EX)
    with pytest.raises(DegenerateArc):
        sphere.minor_arc(EX, EX)


def test_minor_arc_length_symmetry():
    rng = np.random.default_rng(3)
    for _ in range(100):
        u, v = random_units(rng, 2)
        if np.linalg.norm(u + v) < 1e-6:
            continue
        assert abs(sphere.minor_arc(u, v).length - sphere.minor_arc(v, u).length) < 1e-12


def test_point_on_arc_midpoint_and_antipode():
    a = sphere.minor_arc(EX, EY)
    mid = a.point_at(0.5)
    assert sphere.point_on_arc(mid, a)
    assert not sphere.point_on_arc(-mid, a)


def test_arc_intersect_shared_endpoint():
    a = sphere.minor_arc(EX, EY)
    b = sphere.minor_arc(EZ, EY)
    res = sphere.arc_intersect(a, b)
    assert not res.overlap
    assert len(res.points) == 1
    assert np.allclose(res.points[0], EY, atol=1e-12)


def test_arc_intersect_coplanar_overlap():
    p30 = sphere.unit([math.cos(0.5), math.sin(0.5), 0.0])
    p80 = sphere.unit([math.cos(1.4), math.sin(1.4), 0.0])
    a = sphere.minor_arc(EX, p80)
    b = sphere.minor_arc(p30, EY)
    res = sphere.arc_intersect(a, b)
    assert res.overlap
    assert len(res.shared) == 2
    ang = sphere.angular_distance(res.shared[0], res.shared[1])
    assert ang == pytest.approx(0.9, abs=1e-12)   # [0.5, 1.4] along the equator


def test_arc_intersect_coplanar_disjoint():
    a = sphere.minor_arc(EX, sphere.unit([math.cos(0.3), math.sin(0.3), 0.0]))
    b = sphere.minor_arc(sphere.unit([math.cos(1.0), math.sin(1.0), 0.0]), EY)
    res = sphere.arc_intersect(a, b)
    assert res.overlap
    assert res.shared == () and res.points == ()


def test_arc_intersect_symmetric_and_on_both():
    rng = np.random.default_rng(17)
    found = 0
    for _ in range(300):
        u, v, s, t = random_units(rng, 4)
        try:
            a = sphere.minor_arc(u, v)
            b = sphere.minor_arc(s, t)
        except (AntipodalEndpoints, DegenerateArc):
            continue
        r1 = sphere.arc_intersect(a, b)
        r2 = sphere.arc_intersect(b, a)
        assert len(r1.points) == len(r2.points)
        for p in r1.points:
            found += 1
            assert sphere.point_on_arc(p, a) and sphere.point_on_arc(p, b)
            assert min(np.linalg.norm(p - q) for q in r2.points) < 1e-10
    assert found > 20   # the sample must actually exercise intersections
