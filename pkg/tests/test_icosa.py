import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from icosaharm.icosa import (
    CYCLIC_MATRIX,
    G_MATRIX,
    STANDARD_AXES,
    NotInSpanError,
    SigmaCoords,
    build_group,
    clebsch_rho,
    closure,
    conic_family_cubic,
    face_axes,
    is_rotation,
    lambda_mu_nu,
    m_app,
    q_basis,
    second_icosahedron_angle,
    sigma_coords,
    standard_icosahedron,
    vanishing_space,
    z_rotation,
)
from icosaharm.linalg import dot, matmul, matvec
from icosaharm.poly3 import Cubic, axis_harmonic, evaluate, special_form
from icosaharm.scalars import PHI
from icosaharm.verify import rho_linear_term


def test_standard_icosahedron():
    ico = standard_icosahedron()
    assert len(ico.axes) == 6 and len(set(ico.vertices())) == 12
    n = PHI * PHI + 1
    for a in ico.axes:
        assert dot(a, a) == n
    for i in range(6):
        for j in range(i + 1, 6):
            assert dot(ico.axes[i], ico.axes[j]) ** 2 / n ** 2 == Fraction(1, 5)


def test_printed_half_turn():
    assert is_rotation(G_MATRIX)
    assert matmul(G_MATRIX, G_MATRIX) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    v = (0, PHI, 1)
    assert tuple(matvec(G_MATRIX, v)) == (0, -PHI, -1)


def test_two_printed_generators_only_give_the_face_stabilizer():
    # both fix the (1,1,1) line, so a third generator is needed for the full group
    assert len(closure([CYCLIC_MATRIX, G_MATRIX])) == 6


def test_group():
    G = build_group()
    assert len(G) == 60
    assert G.order_statistics() == {1: 1, 2: 15, 3: 20, 5: 24}
    assert all(is_rotation(R) for R in G)


def test_q_basis():
    qs = q_basis()
    assert len(qs.q) == 5
    assert qs[0] == Cubic.monomial((1, 1, 1))
    total = Cubic.zero()
    for q in qs:
        total = total + q
    assert total.is_zero()
    for perm in qs.permutations:
        assert sorted(perm) == list(range(5))


def test_vanishing_space():
    V = vanishing_space()
    assert len(V) == 4
    for p in V:
        assert p.is_harmonic()
        assert all(evaluate(p, a) == 0 for a in STANDARD_AXES)


def test_sigma_coords_examples():
    qs = q_basis()
    sc = sigma_coords(qs[0])
    assert sc.y == (Fraction(4, 5),) + (Fraction(-1, 5),) * 4
    assert (sc.sigma2, sc.sigma3, sc.sigma4) == (Fraction(-2, 5), Fraction(4, 25), Fraction(-3, 125))
    sc = sigma_coords(qs[0] - qs[1])
    assert sc.y == (1, -1, 0, 0, 0) and sc.sigma3 == 0


ys = st.lists(st.integers(-6, 6), min_size=4, max_size=4).map(lambda v: [Fraction(x) for x in v] + [-Fraction(sum(v))])


@given(ys)
def test_sigma_round_trip(y):
    qs = q_basis()
    f = qs.combine(y)
    assert sigma_coords(f).y == tuple(y)
    assert qs.combine(sigma_coords(f).y) == f


def test_outside_span_rejected_with_witness():
    with pytest.raises(NotInSpanError) as exc:
        sigma_coords(axis_harmonic((0, 0, 1)))
    assert exc.value.residual is not None


def test_rho():
    qs = q_basis()
    for a in STANDARD_AXES:
        assert clebsch_rho(a).is_zero()
    f = clebsch_rho((1, 2, 3))
    assert sigma_coords(f).sigma3 == 0


@given(st.lists(st.integers(-4, 4), min_size=3, max_size=3).filter(any))
def test_rho_lands_on_clebsch_surface(u):
    assert sigma_coords(clebsch_rho(u)).sigma3 == 0


def test_rho_blow_up_direction():
    # the linear term of rho(a + t v) is (5/24)*3 times the special form
    a = STANDARD_AXES[0]
    for v in [(1, 0, 0), (0, 1, -PHI)]:
        assert dot(v, a) == 0
        L = rho_linear_term(a, v)
        h = special_form(v, a)
        ratio = None
        for x, y in zip(L.coeffs, h.coeffs):
            if y != 0:
                ratio = x / y
                break
        assert ratio == Fraction(5, 8)
        assert L == h * ratio


def test_face_axes():
    fa = face_axes()
    assert len(fa.pairs) == 10
    assert fa.inner_product_table() == {("disjoint", Fraction(5, 9)): 15, ("sharing", Fraction(1, 9)): 30}
    assert any(fa.vectors[p] == (1, 1, 1) for p in fa.pairs if 0 in p)


def test_lambda_mu_nu():
    lam, mu, nu = lambda_mu_nu()
    assert lam.coeff == Fraction(4, 315) and lam.pi_power == 1
    assert mu == 0
    assert nu == lam * Fraction(-3, 4)


def test_m_app_regression_anchor():
    qs = q_basis()
    M = m_app(sigma_coords(qs[0]).y)
    assert M == [[Fraction(-4, 15) if i == j else 0 for j in range(3)] for i in range(3)]


def test_conic_family_vertices_on_nodal_set():
    phi = float(PHI)
    for a, b in [(1, 0), (1, 1), (2, -3), (Fraction(1, 3), 5)]:
        f = conic_family_cubic(a, b)
        assert f.is_harmonic()
        theta = second_icosahedron_angle(a, b)
        R = z_rotation(theta)
        A = np.array([[float(x) for x in ax] for ax in STANDARD_AXES]) @ R.T
        vals = [float(evaluate(f.to_float(), v)) for v in A]
        assert max(map(abs, vals)) < 1e-12
        assert sum(abs(v[2]) < 1e-12 for v in A) == 2  # four vertices in x3 = 0
    assert second_icosahedron_angle(1, 0) == 0
    assert second_icosahedron_angle(1, 1) == pytest.approx(math.atan(1 / (1 - phi ** 4)))
    assert second_icosahedron_angle(0, 1) == pytest.approx(math.pi / 2)


def test_z_rotation_convention():
    phi = float(PHI)
    t = 0.37
    v = z_rotation(t) @ np.array([0, phi, 1])
    assert np.allclose(v, [phi * math.sin(t), phi * math.cos(t), 1])
