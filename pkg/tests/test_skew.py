from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from icosaharm.icosa import STANDARD_AXES, rational_rotation
from icosaharm.linalg import det
from icosaharm.poly3 import Cubic, axis_harmonic, proportional, random_rational_harmonic, rotate, standard_h_basis
from icosaharm.skew import (
    harmonic_vanishing_at,
    isotropic_check,
    kernel_on_H,
    omega_matrix,
    omega_rank_on_W,
    pfaffian,
    pfaffian_cubic,
    reduce_to_basis,
)

HB = standard_h_basis()
small = st.integers(-5, 5).map(Fraction)
vecs = st.lists(small, min_size=3, max_size=3).filter(any)


def test_pfaffian_small():
    a, b = Fraction(3), Fraction(-7)
    assert pfaffian([[0, a], [-a, 0]]) == a
    Z = Fraction(0)
    M = [[Z, a, Z, Z], [-a, Z, Z, Z], [Z, Z, Z, b], [Z, Z, -b, Z]]
    assert pfaffian(M) == a * b
    with pytest.raises(ValueError):
        pfaffian([[0]])


@given(st.lists(small, min_size=15, max_size=15))
def test_pfaffian_squared_is_det(entries):
    n = 6
    M = [[Fraction(0)] * n for _ in range(n)]
    it = iter(entries)
    for i in range(n):
        for j in range(i + 1, n):
            v = next(it)
            M[i][j], M[j][i] = v, -v
    assert pfaffian(M) ** 2 == det(M)


@given(vecs)
def test_omega_skew_and_linear(u):
    Om = omega_matrix(u, HB.basis)
    n = len(HB.basis)
    assert all(Om.entries[i][j] == -Om.entries[j][i] for i in range(n) for j in range(n))
    parts = [omega_matrix(e, HB.basis).entries for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    for i in range(n):
        for j in range(n):
            assert Om.entries[i][j] == sum(u[k] * parts[k][i][j] for k in range(3))


@settings(max_examples=20)
@given(vecs)
def test_rank_six_kernel_axis_harmonic(u):
    assert omega_matrix(u, HB.basis).rank() == 6
    ker = kernel_on_H(u, HB)
    assert len(ker) == 1 and proportional(ker[0], axis_harmonic(u))


@pytest.mark.parametrize("p", [Cubic.monomial((1, 1, 1)), axis_harmonic((0, 0, 1))])
def test_pfaffian_cubic_examples(p):
    assert proportional(pfaffian_cubic(p, HB), p)


def test_pfaffian_cubic_random(rng):
    for _ in range(5):
        p = random_rational_harmonic(rng, lo=-4, hi=4, den=3)
        assert proportional(pfaffian_cubic(p, HB), p)


def test_rank_four_at_roots(rng):
    assert omega_rank_on_W(Cubic.monomial((1, 1, 1)), (1, 0, 0), HB) == 4
    assert omega_rank_on_W(Cubic.monomial((1, 1, 1)), (1, 2, 3), HB) == 6
    for _ in range(4):
        u = tuple(Fraction(int(x)) for x in rng.integers(-4, 5, 3))
        if not any(u):
            continue
        p = harmonic_vanishing_at(u, rng, HB)
        if not p.is_zero():
            assert omega_rank_on_W(p, u, HB) == 4


def test_isotropic_icosahedral():
    X = [axis_harmonic(a) for a in STANDARD_AXES]
    assert len(reduce_to_basis(X)) == 3
    assert isotropic_check(X).isotropic
    res = isotropic_check([axis_harmonic(e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))])
    assert not res.isotropic and res.witness[3] != 0


@given(st.tuples(*[st.integers(-3, 3)] * 4).filter(any))
def test_isotropy_equivariant(q):
    R = rational_rotation(q)
    X = [rotate(axis_harmonic(a), R) for a in STANDARD_AXES]
    assert isotropic_check(X).isotropic


def test_isotropic_float_path():
    from icosaharm.search import axis_angle_matrix

    R = axis_angle_matrix([0.2, -0.4, 0.9], 1.1)
    A = np.array([[float(x) for x in a] for a in STANDARD_AXES]) @ R.T
    assert isotropic_check([axis_harmonic(tuple(a)) for a in A], tol=1e-12).isotropic


def test_wrong_dimension_rejected():
    with pytest.raises(ValueError):
        isotropic_check([axis_harmonic((1, 0, 0)), axis_harmonic((0, 1, 0))])
