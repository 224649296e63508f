import math

import numpy as np
import pytest

from icosaharm.icosa import STANDARD_AXES, q_basis
from icosaharm.poly3 import Cubic, axis_harmonic, harmonic_projection, rotate, special_form
from icosaharm.search import (
    UNIT_AXES,
    SearchConfig,
    Solution,
    axis_angle_matrix,
    axis_set,
    axis_set_distance,
    dedup,
    find_icosahedra,
    matrix_to_quat,
    quat_exp,
    quat_mul,
    quat_to_matrix,
    quasi_uniform_quaternions,
    residual,
    verify_extended,
)
from icosaharm.icosa import build_group

PHI = (1 + math.sqrt(5)) / 2
XYZ = Cubic.monomial((1, 1, 1))


def _random_harmonic(rng):
    return harmonic_projection(Cubic(tuple(rng.standard_normal(10))))


def _random_quat(rng):
    q = rng.standard_normal(4)
    return q / np.linalg.norm(q)


def test_quaternion_helpers(rng):
    q = _random_quat(rng)
    R = quat_to_matrix(q)
    assert np.allclose(R @ R.T, np.eye(3)) and np.linalg.det(R) == pytest.approx(1)
    q2 = matrix_to_quat(R)
    assert min(np.linalg.norm(q2 - q), np.linalg.norm(q2 + q)) < 1e-12
    p = _random_quat(rng)
    assert np.allclose(quat_to_matrix(quat_mul(p, q)), quat_to_matrix(p) @ R)
    v = rng.standard_normal(3)
    assert np.allclose(quat_to_matrix(quat_exp(v)), axis_angle_matrix(v, np.linalg.norm(v)))


def test_starts_are_unit():
    q = quasi_uniform_quaternions(100, seed=3)
    assert q.shape == (100, 4) and np.allclose(np.linalg.norm(q, axis=1), 1)


def test_residual_examples():
    assert residual(XYZ, [1, 0, 0, 0])[0] == pytest.approx(0, abs=1e-30)
    quarter = [math.cos(math.pi / 4), 0, 0, math.sin(math.pi / 4)]
    assert residual(XYZ, quarter)[0] == pytest.approx(0, abs=1e-28)


def test_gradient_vs_finite_differences(rng):
    h = 1e-6
    for _ in range(100):
        f = _random_harmonic(rng)
        q = _random_quat(rng)
        val, grad = residual(f, q)
        fd = np.array(
            [
                (residual(f, quat_mul(quat_exp(h * e), q))[0] - residual(f, quat_mul(quat_exp(-h * e), q))[0]) / (2 * h)
                for e in np.eye(3)
            ]
        )
        assert np.linalg.norm(fd - grad) <= 1e-6 * max(np.linalg.norm(grad), 1e-3)


def test_xyz_two_icosahedra():
    out = find_icosahedra(XYZ)
    assert out.count == 2 and not out.flags
    first = np.array([[0, PHI, 1], [0, PHI, -1], [1, 0, PHI], [-1, 0, PHI], [PHI, 1, 0], [PHI, -1, 0]])
    second = np.array([[0, 1, PHI], [0, 1, -PHI], [PHI, 0, 1], [-PHI, 0, 1], [1, PHI, 0], [1, -PHI, 0]])
    targets = [t / np.linalg.norm(t, axis=1, keepdims=True) for t in (first, second)]
    for t in targets:
        assert min(axis_set_distance(s.axes, t) for s in out.icosahedra) < 1e-8
    assert all(s.verified_residual < 1e-8 for s in out.icosahedra)


def test_axis_harmonic_none():
    out = find_icosahedra(axis_harmonic((0, 0, 1)))
    assert out.count == 0 and out.icosahedra == []


def test_clebsch_line_unique():
    qs = q_basis()
    assert find_icosahedra(qs[0] - qs[1]).count == 1


def test_special_form_family():
    out = find_icosahedra(special_form((0, 1, 0), (0, 0, 1)))
    assert out.count == "family"
    fam = out.family
    assert abs(abs(fam.axis[2]) - 1) < 1e-8
    assert len(fam.samples) >= 8
    assert all(s.max_residual < 1e-9 and s.verified_residual < 1e-8 for s in fam.samples)


def test_dedup_group_and_sign():
    G = build_group().as_float()
    q = np.array([0.3, -0.2, 0.9, 0.1])
    q /= np.linalg.norm(q)
    R = quat_to_matrix(q)
    sols = [Solution(tuple(q), axis_set(R), 0.0), Solution(tuple(-q), axis_set(R), 0.0)]
    for g in G[:10]:
        Rg = R @ g
        sols.append(Solution(tuple(matrix_to_quat(Rg)), axis_set(Rg), 0.0))
    assert len(dedup(sols)) == 1
    R2 = axis_angle_matrix([0, 0, 1], math.pi / 2) @ R
    sols.append(Solution(tuple(matrix_to_quat(R2)), axis_set(R2), 0.0))
    assert len(dedup(sols)) == 2


def test_equivariance(rng):
    f = XYZ.to_float()
    base = find_icosahedra(f, SearchConfig(starts=256))
    for _ in range(20):
        R = axis_angle_matrix(rng.standard_normal(3), rng.uniform(0, math.pi))
        out = find_icosahedra(rotate(f, R), SearchConfig(starts=256))
        assert out.count == base.count
        for s in base.icosahedra:
            img = s.axes @ R.T
            assert min(axis_set_distance(img, t.axes) for t in out.icosahedra) < 1e-6


def test_extended_verification():
    assert verify_extended(XYZ.coeffs, (1, 0, 0, 0)) < 1e-30
    assert verify_extended(axis_harmonic((0, 0, 1)).coeffs, (1, 0, 0, 0)) > 1e-3


def test_zero_cubic_rejected():
    with pytest.raises(ValueError):
        find_icosahedra(Cubic.zero())


def test_isotropy_cross_check():
    from icosaharm.skew import isotropic_check

    out = find_icosahedra(XYZ)
    for s in out.icosahedra:
        X = [axis_harmonic(tuple(a)) for a in s.axes]
        assert isotropic_check(X, tol=1e-9).isotropic
