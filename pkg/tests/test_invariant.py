from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from icosaharm.icosa import STANDARD_AXES, build_group, clebsch_rho, q_basis, sigma_coords
from icosaharm.invariant import (
    NotHarmonicError,
    char_poly_j,
    classify,
    detect_special_form,
    j_invariant,
)
from icosaharm.poly3 import Cubic, axis_harmonic, harmonic_projection, random_rational_harmonic, rotate, special_form
from icosaharm.scalars import PiScalar
from icosaharm.search import axis_angle_matrix, SearchConfig


def _diag(a, b, c, scale=Fraction(1)):
    z = PiScalar(0, 1)
    return [[PiScalar(a * scale, 1), z, z], [z, PiScalar(b * scale, 1), z], [z, z, PiScalar(c * scale, 1)]]


@given(st.fractions(max_denominator=100))
def test_char_poly_scalar_matrix(m):
    rep = char_poly_j(_diag(m, m, m))
    assert rep.a1 == PiScalar(-3 * m, 1)
    assert rep.a2 == PiScalar(3 * m * m, 2)
    assert rep.J == PiScalar(33 * m ** 3, 3)
    assert rep.K == PiScalar(8 * m ** 3, 3)  # (2m)^3


def test_char_poly_examples():
    assert char_poly_j(_diag(0, 0, 0)).J == PiScalar(0, 3)
    rep = char_poly_j(_diag(-16, -16, 176, Fraction(1, 7875)))
    assert rep.J == PiScalar(Fraction(-3231744, 7875 ** 3), 3)
    assert rep.sign == -1


def test_anchor_values():
    j = j_invariant(Cubic.monomial((1, 1, 1)))
    assert j.J == PiScalar(33 * Fraction(4, 1575) ** 3, 3) and j.sign == 1
    j = j_invariant(axis_harmonic((0, 0, 1)))
    assert j.J == PiScalar(Fraction(-3231744, 7875 ** 3), 3) and j.sign == -1


def test_special_form_values():
    # J = 3 a3 - 4 a1 a2 does not vanish on the special form; K = a3 - a1 a2 does
    j = j_invariant(special_form((0, 1, 0), (0, 0, 1)))
    assert j.J == PiScalar(Fraction(-131072, 162791015625), 3)
    assert j.K == PiScalar(0, 3) and j.sign_K == 0


def test_non_harmonic_rejected():
    with pytest.raises(NotHarmonicError) as exc:
        j_invariant(Cubic.monomial((3, 0, 0)))
    assert exc.value.laplacian == (6, 0, 0)


@given(st.fractions(max_denominator=20).filter(bool))
def test_scaling(c):
    f = axis_harmonic((1, 2, 0)) + Cubic.monomial((1, 1, 1))
    assert j_invariant(f * c).J == j_invariant(f).J * c ** 6


def test_rotation_invariance_float(rng):
    for _ in range(50):
        f = Cubic(tuple(rng.standard_normal(10)))
        f = harmonic_projection(f)
        R = axis_angle_matrix(rng.standard_normal(3), rng.uniform(0, np.pi))
        a, b = j_invariant(f), j_invariant(rotate(f, R))
        assert b.normalized_J == pytest.approx(a.normalized_J, abs=1e-10)
        assert b.normalized_K == pytest.approx(a.normalized_K, abs=1e-10)


def test_exact_group_invariance(rng):
    f = random_rational_harmonic(rng, lo=-3, hi=3, den=2)
    J0 = j_invariant(f).J
    for R in build_group():
        assert j_invariant(rotate(f, R)).J == J0


def _random_y(rng):
    y = [Fraction(int(x)) for x in rng.integers(-6, 7, 4)]
    return y + [-sum(y)]


def test_invariants_on_V_exact_identities(rng):
    qs = q_basis()
    cj = Fraction(32, 2083725)
    ck = Fraction(32, 6251175)
    for _ in range(40):
        y = _random_y(rng)
        if not any(y):
            continue
        sc = sigma_coords(qs.combine(y))
        rep = j_invariant(qs.combine(y))
        assert rep.J == PiScalar(cj * (sc.sigma2 * sc.sigma4 + sc.sigma3 ** 2), 3)
        assert rep.K == PiScalar(ck * sc.sigma3 ** 2, 3)


def test_K_nonnegative_on_V_and_zero_exactly_on_clebsch(rng):
    qs = q_basis()
    negative_J = 0
    for _ in range(500):
        y = _random_y(rng)
        if not any(y):
            continue
        f = qs.combine(y)
        rep = j_invariant(f)
        s3 = sigma_coords(f).sigma3
        assert rep.sign_K >= 0
        assert (rep.sign_K == 0) == (s3 == 0)
        negative_J += rep.sign < 0
    # the printed sextic takes both signs on V
    assert negative_J > 0
    for _ in range(100):
        u = [Fraction(int(x)) for x in rng.integers(-9, 10, 3)]
        f = clebsch_rho(u)
        if f.is_zero():
            continue
        assert j_invariant(f).sign_K == 0


def test_detect_special_form():
    sf = detect_special_form(special_form((0, 1, 0), (0, 0, 1)))
    assert sf is not None and sf.residual < 1e-12
    assert abs(abs(sf.a[2]) - 1) < 1e-10 and abs(abs(sf.u[1]) - 1) < 1e-10
    assert detect_special_form(Cubic.monomial((1, 1, 1))) is None


def test_detect_rotated_special_form(rng):
    for _ in range(5):
        R = axis_angle_matrix(rng.standard_normal(3), rng.uniform(0, np.pi))
        f = rotate(special_form((0, 1, 0), (0, 0, 1)).to_float(), R)
        sf = detect_special_form(f)
        assert sf is not None
        a = R @ np.array([0, 0, 1.0])
        assert np.linalg.norm(np.cross(a, sf.a)) < 1e-8
        rec = sf.cubic()
        assert np.allclose([float(x) for x in rec.coeffs], [float(x) for x in f.coeffs], atol=1e-9)


def test_detection_silent_on_generic(rng):
    for _ in range(10):
        f = harmonic_projection(Cubic(tuple(rng.standard_normal(10))))
        rep = j_invariant(f)
        if abs(rep.normalized_J) > 1e-6:
            assert detect_special_form(f) is None


@pytest.mark.parametrize(
    "f, expected",
    [
        (Cubic.monomial((1, 1, 1)), "2"),
        (axis_harmonic((0, 0, 1)), "0"),
        (None, "1"),
    ],
)
def test_classify_examples(f, expected):
    if f is None:
        qs = q_basis()
        f = qs[0] - qs[1]
    rep = classify(f, SearchConfig(starts=256))
    assert rep.predicted == expected and str(rep.found) == expected and rep.consistent
    assert rep.to_json()["predicted"] == expected


def test_classify_special_form_by_K():
    rep = classify(special_form((0, 1, 0), (0, 0, 1)), SearchConfig(starts=256), invariant="K")
    assert rep.predicted == "family" and rep.found == "family" and rep.consistent
    assert rep.predicted_J == "0" and rep.consistent_J is False
    assert "J-K-prediction-disagreement" in rep.flags
