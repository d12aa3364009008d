"""The numba kernels and the pure-numpy fallback must agree bit for bit."""

import numpy as np
import pytest

from pentamod import _kernels


@pytest.mark.parametrize("n", [3, 4, 5])
def test_backends_agree_on_random_points(n):
    pts = _kernels.sample_sphere(5000, 99)
    packed = _kernels._pack(n)
    FA, FB, normals, verts, scal, A, B, C, RA, RB = packed
    mem_np = _kernels._membership_np(pts, FA, FB, normals, verts, scal, 1e-9)
    orc_np = _kernels._oracle_np(pts, A, B, C, RA, RB, 1e-9)
    if _kernels.HAS_NUMBA:
        mem_nb = np.empty(len(pts), dtype=np.bool_)
        _kernels._membership_nb(pts, FA, FB, normals, verts, scal, 1e-9, mem_nb)
        orc_nb = np.empty(len(pts), dtype=np.bool_)
        _kernels._oracle_nb(pts, A, B, C, RA, RB, 1e-9, orc_nb)
        assert np.array_equal(mem_np, mem_nb)
        assert np.array_equal(orc_np, orc_nb)
    # and the public entry points match whichever backend is active
    assert np.array_equal(_kernels.membership_batch(n, pts, 1e-9), mem_np)
    assert np.array_equal(_kernels.oracle_batch(n, pts, 1e-9), orc_np)


def test_backends_agree_on_boundary_points():
    # points sitting exactly on arcs and vertices take the special branches
    from pentamod import charts, sphere
    for n in (3, 4, 5):
        geo = charts.geometry(n)
        pts = np.vstack([
            sphere.minor_arc(geo.A, geo.B).point_at(0.5),
            sphere.minor_arc(geo.M, geo.B_prime).point_at(0.5),
            sphere.minor_arc(geo.B, geo.A_prime).point_at(0.3),
            geo.M, geo.C, -geo.A, -geo.B,
        ])
        packed = _kernels._pack(n)
        FA, FB, normals, verts, scal, A, B, C, RA, RB = packed
        mem_np = _kernels._membership_np(pts, FA, FB, normals, verts, scal, 1e-9)
        orc_np = _kernels._oracle_np(pts, A, B, C, RA, RB, 1e-9)
        assert list(mem_np) == [True, False, True, False, False, False, False]
        if _kernels.HAS_NUMBA:
            mem_nb = np.empty(len(pts), dtype=np.bool_)
            _kernels._membership_nb(pts, FA, FB, normals, verts, scal, 1e-9, mem_nb)
            orc_nb = np.empty(len(pts), dtype=np.bool_)
            _kernels._oracle_nb(pts, A, B, C, RA, RB, 1e-9, orc_nb)
            assert np.array_equal(mem_np, mem_nb)
            assert np.array_equal(orc_np, orc_nb)


def test_sample_sphere_deterministic_and_uniformish():
    a = _kernels.sample_sphere(1000, 5)
    b = _kernels.sample_sphere(1000, 5)
    assert np.array_equal(a, b)
    assert np.allclose(np.linalg.norm(a, axis=1), 1.0, atol=1e-12)
    assert abs(a[:, 2].mean()) < 0.1
    with pytest.raises(ValueError):
        _kernels.sample_sphere(0, 1)
