from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from icosaharm.poly3 import (
    BOMBIERI_WEIGHTS,
    MONOMIALS,
    Cubic,
    HarmonicCubic,
    Poly,
    axis_harmonic,
    bombieri_inner,
    evaluate,
    harmonic_projection,
    laplacian,
    lie_action,
    proportional,
    proportionality_constant,
    rotate,
    special_form,
    standard_h_basis,
)
from icosaharm.icosa import rational_rotation

small = st.integers(-5, 5).map(Fraction)
cubics = st.lists(small, min_size=10, max_size=10).map(lambda c: Cubic(tuple(c)))
vecs = st.lists(small, min_size=3, max_size=3).filter(any)


def test_monomial_order_and_weights():
    assert len(MONOMIALS) == 10 and len(set(MONOMIALS)) == 10
    assert BOMBIERI_WEIGHTS[MONOMIALS.index((3, 0, 0))] == 1
    assert BOMBIERI_WEIGHTS[MONOMIALS.index((1, 1, 1))] == Fraction(1, 6)


@given(cubics)
def test_projection_is_harmonic_and_idempotent(p):
    h = harmonic_projection(p)
    assert h.is_harmonic()
    assert harmonic_projection(h) == h
    # removed part is a multiple of (x,x) times a linear form
    d = (p - h).to_poly()
    lap = laplacian(p)
    r2 = Poly({(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): 1})
    assert d == r2 * Poly.linear([l / 10 for l in lap])


@given(vecs)
def test_axis_harmonic(a):
    f = axis_harmonic(a)
    assert f.is_harmonic()
    # f_a(a) = |a|^6 - 3/5 |a|^6
    aa = sum(x * x for x in a)
    assert evaluate(f, a) == aa ** 3 * Fraction(2, 5)


def test_axis_harmonic_rejects_zero():
    with pytest.raises(ValueError):
        axis_harmonic((0, 0, 0))


@given(cubics, vecs)
def test_bombieri_reproducing(p, a):
    ax = Poly.linear(a)
    assert bombieri_inner(p, Cubic.from_poly(ax ** 3)) == evaluate(p, a)


@given(cubics, cubics, vecs)
def test_lie_action_skew_adjoint(p, q, u):
    assert bombieri_inner(lie_action(u, p), q) == -bombieri_inner(p, lie_action(u, q))


@given(vecs)
def test_lie_action_kills_axis_harmonic(u):
    assert lie_action(u, axis_harmonic(u)).is_zero()


def test_lie_action_is_derivative_of_rotation():
    # oracle: central finite difference of p(R(t)^T x) at t = 0
    rng = np.random.default_rng(5)
    c = rng.standard_normal(10)
    p = Cubic(tuple(c))
    u = rng.standard_normal(3)
    x = rng.standard_normal(3)
    h = 1e-5

    def rot(t):
        from icosaharm.search import axis_angle_matrix

        return axis_angle_matrix(u, t * np.linalg.norm(u))

    fd = (evaluate(rotate(p, rot(h)), x) - evaluate(rotate(p, rot(-h)), x)) / (2 * h)
    assert fd == pytest.approx(evaluate(lie_action(u, p), x), rel=1e-7)


@given(cubics, st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)).filter(any))
def test_rotation_preserves_harmonicity_and_inner_product(p, q):
    R = rational_rotation(q)
    h = harmonic_projection(p)
    assert rotate(h, R).is_harmonic()
    assert bombieri_inner(rotate(p, R), rotate(p, R)) == bombieri_inner(p, p)


def test_special_form_harmonic_iff_orthogonal():
    assert special_form((0, 1, 0), (0, 0, 1)).is_harmonic()
    assert not special_form((0, 1, 1), (0, 0, 1)).is_harmonic()


def test_standard_basis():
    hb = standard_h_basis()
    assert len(hb) == 7
    assert all(b.is_harmonic() for b in hb.basis)


def test_harmonic_cubic_validates():
    with pytest.raises(ValueError):
        HarmonicCubic(Cubic.monomial((3, 0, 0)).coeffs)
    assert HarmonicCubic(Cubic.monomial((1, 1, 1)).coeffs).is_harmonic()


def test_bad_length():
    with pytest.raises(ValueError):
        Cubic((1, 2, 3))


@given(cubics, small.filter(bool))
def test_proportionality(p, c):
    if p.is_zero():
        return
    assert proportional(p * c, p)
    assert proportionality_constant(p * c, p) == c


def test_float_harmonicity_tolerance():
    f = axis_harmonic((0.3, -1.1, 0.7))
    assert f.is_harmonic()
    g = Cubic(tuple(float(x) for x in f.coeffs))
    assert g.is_harmonic()
    assert not Cubic(tuple(float(x) + (1e-6 if i == 0 else 0) for i, x in enumerate(f.coeffs))).is_harmonic()
