"""The sextic invariant J, its sign, and the degenerate special form.

Besides ``J = 3 a3 - 4 a1 a2`` every report carries ``K = a3 - a1 a2``, the
product of the pairwise eigenvalue sums of ``M``. On the cubics vanishing on
the standard icosahedron ``K`` is a positive multiple of ``σ3^2``, and its sign
is what actually separates two icosahedra from none (see ``classify``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.optimize import least_squares

from .poly3 import BOMBIERI_WEIGHTS, MONOMIALS, Cubic, HarmonicCubic, bombieri_norm, special_form
from .scalars import PiScalar, pi_scalar_to_json, sign, simplify
from .sphere import moment_matrices

ZERO_BAND = 1e-10
NEAR_DEGENERATE_BAND = 1e-6


class NotHarmonicError(ValueError):
    def __init__(self, laplacian):
        super().__init__(f"input is not harmonic; Laplacian coefficients {laplacian}")
        self.laplacian = laplacian


@dataclass(frozen=True)
class JReport:
    """Characteristic polynomial ``x^3 + a1 x^2 + a2 x + a3`` of M, ``J = 3 a3 - 4 a1 a2``
    and ``K = a3 - a1 a2 = (l1+l2)(l1+l3)(l2+l3)``."""

    a1: PiScalar
    a2: PiScalar
    a3: PiScalar
    J: PiScalar
    sign: int
    normalized_J: float | None = None
    exact: bool = True
    K: PiScalar | None = None
    sign_K: int | None = None
    normalized_K: float | None = None

    def to_json(self) -> dict:
        return {
            "a1": pi_scalar_to_json(self.a1),
            "a2": pi_scalar_to_json(self.a2),
            "a3": pi_scalar_to_json(self.a3),
            "J": pi_scalar_to_json(self.J) if self.exact else float(self.J),
            "sign": self.sign,
            "normalized_J": self.normalized_J,
            "K": None if self.K is None else (pi_scalar_to_json(self.K) if self.exact else float(self.K)),
            "sign_K": self.sign_K,
            "normalized_K": self.normalized_K,
        }


def char_poly_j(M) -> JReport:
    """Characteristic coefficients and J of a symmetric 3x3 PiScalar matrix."""
    a1 = -(M[0][0] + M[1][1] + M[2][2])
    a2 = (
        M[0][0] * M[1][1] - M[0][1] * M[1][0]
        + M[0][0] * M[2][2] - M[0][2] * M[2][0]
        + M[1][1] * M[2][2] - M[1][2] * M[2][1]
    )
    det = (
        M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
        - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
        + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0])
    )
    a3 = -det
    J = a3 * 3 - a1 * a2 * 4
    K = a3 - a1 * a2
    exact = not isinstance(J.coeff, float)
    if exact:
        a1, a2, a3, J, K = (PiScalar(simplify(x.coeff), x.pi_power) for x in (a1, a2, a3, J, K))
    return JReport(a1, a2, a3, J, sign(J.coeff), exact=exact, K=K, sign_K=sign(K.coeff))


def j_invariant(f: Cubic) -> JReport:
    """J of a harmonic cubic; exact sign for exact input.

    ``normalized_J`` is ``J / ||f||^6`` in the Bombieri norm (pi^3 included),
    which is scale-free and rotation invariant.
    """
    if not f.is_harmonic():
        raise NotHarmonicError(f.laplacian())
    rep = char_poly_j(moment_matrices(f).M)
    norm = bombieri_norm(f)
    nj = float(rep.J) / norm ** 6 if norm > 0 else 0.0
    nk = float(rep.K) / norm ** 6 if norm > 0 else 0.0
    s, sk = rep.sign, rep.sign_K
    if not rep.exact:
        s, sk = _band_sign(nj), _band_sign(nk)
    return JReport(rep.a1, rep.a2, rep.a3, rep.J, s, nj, rep.exact, rep.K, sk, nk)


def _band_sign(x: float) -> int:
    return 0 if abs(x) < ZERO_BAND else (1 if x > 0 else -1)


# special form ------------------------------------------------------------------

_SQRT_W = np.sqrt(np.array([float(w) for w in BOMBIERI_WEIGHTS]))


def _fibonacci_sphere(n: int) -> np.ndarray:
    i = np.arange(n) + 0.5
    z = 1 - 2 * i / n
    r = np.sqrt(1 - z * z)
    t = math.pi * (1 + math.sqrt(5)) * i
    return np.stack([r * np.cos(t), r * np.sin(t), z], axis=1)


def _form_coeffs(u, a) -> np.ndarray:
    return np.array([float(c) for c in special_form(list(u), list(a)).coeffs])


def _form_basis(a: np.ndarray):
    """Two unit vectors spanning ``a^⊥`` and the cubic coefficients of the forms along them."""
    a = a / np.linalg.norm(a)
    t = np.eye(3)[np.argmin(np.abs(a))]
    e1 = np.cross(a, t)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(a, e1)
    B = np.stack([_special_coeffs(e1, a), _special_coeffs(e2, a)], axis=1)
    return e1, e2, B


def _special_coeffs(u, a) -> np.ndarray:
    # (u,x)((a,x)^2 - |a|^2 |x|^2 / 5), expanded in MONOMIALS
    out = np.zeros(10)
    aa = float(a @ a)
    quad = {}
    for i in range(3):
        for j in range(3):
            e = [0, 0, 0]
            e[i] += 1
            e[j] += 1
            quad[tuple(e)] = quad.get(tuple(e), 0.0) + a[i] * a[j] - (aa / 5 if i == j else 0.0)
    for k in range(3):
        for m, c in quad.items():
            e = list(m)
            e[k] += 1
            out[MONOMIALS.index(tuple(e))] += u[k] * c
    return out


@dataclass(frozen=True)
class SpecialForm:
    """``f ≈ scale * (u,x)((a,x)^2 - (x,x)(a,a)/5)`` with unit ``a``, unit ``u ⊥ a``."""

    a: tuple
    u: tuple
    scale: float
    residual: float

    def cubic(self) -> Cubic:
        return Cubic(tuple(self.scale * c for c in _special_coeffs(np.array(self.u), np.array(self.a))))

    def to_json(self) -> dict:
        return {"a": list(self.a), "u": list(self.u), "scale": self.scale, "residual": self.residual}


def detect_special_form(f: Cubic, tol: float = 1e-9, starts: int = 64) -> SpecialForm | None:
    """Fit ``f`` by the special-form family; return the fit if its relative
    Bombieri residual is below ``tol``, else ``None``.

    For fixed ``a`` the family is linear in ``s*u``, so only the axis is
    optimized (multistart least squares over quasi-uniform starting axes).
    """
    c = np.array([float(x) for x in f.coeffs])
    norm = float(np.sqrt(np.sum(_SQRT_W ** 2 * c * c)))
    if norm == 0:
        raise ValueError("zero cubic")
    target = _SQRT_W * c / norm

    def resid(a):
        _, _, B = _form_basis(a)
        Bw = _SQRT_W[:, None] * B
        w, *_ = np.linalg.lstsq(Bw, target, rcond=None)
        return Bw @ w - target

    best = None
    for a0 in _fibonacci_sphere(starts):
        if a0[2] < -1e-12:
            continue  # a and -a give the same family
        r0 = resid(a0)
        if best is not None and np.linalg.norm(r0) > 10 * max(best[0], 1e-3):
            continue
        sol = least_squares(resid, a0, xtol=1e-15, ftol=1e-15, gtol=1e-15, method="lm")
        val = float(np.linalg.norm(sol.fun))
        if best is None or val < best[0]:
            best = (val, sol.x / np.linalg.norm(sol.x))
        if val < tol * 1e-3:
            break
    val, a = best
    if val >= tol:
        return None
    e1, e2, B = _form_basis(a)
    Bw = _SQRT_W[:, None] * B
    w, *_ = np.linalg.lstsq(Bw, target, rcond=None)
    uvec = w[0] * e1 + w[1] * e2
    s = float(np.linalg.norm(uvec))
    return SpecialForm(tuple(a), tuple(uvec / s), s * norm, val)


# classification ------------------------------------------------------------------

PREDICTION = {1: "2", -1: "0"}


@dataclass
class ClassificationReport:
    """Invariant, predicted and found icosahedron counts, and the verdict.

    ``predicted``/``consistent`` use the invariant named by ``invariant``
    ("J" by default); the other invariant's prediction is always reported too.
    """

    jreport: JReport
    invariant: str
    predicted: str
    predicted_J: str
    predicted_K: str
    found: object
    consistent: bool | None
    consistent_J: bool | None
    consistent_K: bool | None
    special_form: SpecialForm | None = None
    search: object = None
    flags: list = field(default_factory=list)

    def to_json(self) -> dict:
        jr = self.jreport.to_json()
        return {
            "J": jr["J"],
            "sign": self.jreport.sign,
            "normalized_J": self.jreport.normalized_J,
            "K": jr["K"],
            "sign_K": self.jreport.sign_K,
            "normalized_K": self.jreport.normalized_K,
            "invariant": self.invariant,
            "predicted": self.predicted,
            "predicted_J": self.predicted_J,
            "predicted_K": self.predicted_K,
            "found": self.search.to_json()["icosahedra"] if self.search is not None else [],
            "found_count": str(self.found),
            "consistent": self.consistent,
            "consistent_J": self.consistent_J,
            "consistent_K": self.consistent_K,
            "special_form": self.special_form.to_json() if self.special_form else None,
            "search": self.search.to_json() if self.search is not None else None,
            "flags": list(self.flags),
            "characteristic": {k: jr[k] for k in ("a1", "a2", "a3")},
        }


def _predict(sgn: int, normalized: float, exact: bool, special) -> str:
    if not exact and ZERO_BAND <= abs(normalized) < NEAR_DEGENERATE_BAND:
        return "near-degenerate"
    if sgn:
        return PREDICTION[sgn]
    return "family" if special is not None else "1"


def _verdict(predicted: str, found) -> bool | None:
    if predicted == "near-degenerate":
        return None
    return predicted == str(found)


def classify(f: Cubic, search_config=None, invariant: str = "J") -> ClassificationReport:
    """Predict the icosahedron count from the invariant's sign (+: 2, -: 0,
    0: family for the special form, else 1), run the search, and compare."""
    from .search import find_icosahedra

    if invariant not in ("J", "K"):
        raise ValueError("invariant must be 'J' or 'K'")
    if f.is_zero():
        raise ValueError("zero cubic")
    rep = j_invariant(f)
    special = None
    if rep.sign == 0 or rep.sign_K == 0 or min(abs(rep.normalized_J), abs(rep.normalized_K)) < NEAR_DEGENERATE_BAND:
        special = detect_special_form(f)
    pj = _predict(rep.sign, rep.normalized_J, rep.exact, special)
    pk = _predict(rep.sign_K, rep.normalized_K, rep.exact, special)
    out = find_icosahedra(f, search_config)
    found = out.count
    cj, ck = _verdict(pj, found), _verdict(pk, found)
    flags = list(out.flags)
    if "near-degenerate" in (pj, pk):
        flags.append("near-degenerate")
    if pj != pk:
        flags.append("J-K-prediction-disagreement")
    if special is not None:
        flags.append("special-form")
    if invariant == "J":
        return ClassificationReport(rep, invariant, pj, pj, pk, found, cj, cj, ck, special, out, flags)
    return ClassificationReport(rep, invariant, pk, pj, pk, found, ck, cj, ck, special, out, flags)
