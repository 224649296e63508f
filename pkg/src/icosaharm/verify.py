"""Exact check suites behind ``icosaharm verify``.

Each suite returns a list of :class:`Check`. ``ok`` is ``True``/``False`` for
hard checks and ``None`` for informational comparisons (printed formulas that
are reported rather than asserted).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .icosa import (
    STANDARD_AXES,
    appendix_verify,
    build_group,
    clebsch_rho,
    preserves_vertices,
    q_basis,
    rational_rotation,
    sigma_coords,
    standard_icosahedron,
    vanishing_space,
)
from .linalg import span_contains
from .poly3 import Cubic, axis_harmonic, proportional, random_rational_harmonic, rotate, special_form, standard_h_basis
from .skew import (
    harmonic_vanishing_at,
    isotropic_check,
    kernel_on_H,
    omega_matrix,
    omega_rank_on_W,
    pfaffian_cubic,
    reduce_to_basis,
)


@dataclass
class Check:
    name: str
    ok: bool | None
    detail: str = ""

    def line(self) -> str:
        tag = {True: "PASS", False: "FAIL", None: "INFO"}[self.ok]
        return f"[{tag}] {self.name}" + (f": {self.detail}" if self.detail else "")


def _rand_vec(rng, lo=-5, hi=5):
    while True:
        u = tuple(Fraction(int(x)) for x in rng.integers(lo, hi + 1, size=3))
        if any(u):
            return u


def rho_linear_term(a, v, qs=None):
    """Coefficient of ``t`` in ``ρ(a + t v)`` (exact)."""
    qs = qs or q_basis()
    coeffs = []
    for qa in qs:
        P = qa.to_poly()
        coeffs.append(sum((P.diff(k).evaluate(a) * v[k] for k in range(3)), Fraction(0)))
    return qs.combine(coeffs)


def verify_clebsch(samples: int = 20, seed: int = 0) -> list:
    rng = np.random.default_rng(seed)
    out = []
    G = build_group()
    out.append(Check("group has 60 elements", len(G) == 60, str(len(G))))
    stats = G.order_statistics()
    out.append(Check("element orders {1:1, 2:15, 3:20, 5:24}", stats == {1: 1, 2: 15, 3: 20, 5: 24}, str(stats)))
    ico = standard_icosahedron()
    out.append(Check("every element preserves the 12 vertices", all(preserves_vertices(R, ico) for R in G)))
    qs = q_basis(G)
    total = Cubic.zero()
    for qa in qs:
        total = total + qa
    out.append(Check("sum of q_alpha is 0", total.is_zero()))
    from .icosa import clebsch_cubic_vanishes

    out.append(Check("sum of q_alpha^3 is 0", clebsch_cubic_vanishes(qs.q)))
    out.append(Check("each q_alpha harmonic", all(qa.is_harmonic() for qa in qs)))
    V = vanishing_space(ico)
    rows_v = [list(p.coeffs) for p in V]
    rows_q = [list(p.coeffs) for p in qs]
    same = span_contains(rows_v, rows_q) and span_contains(rows_q, rows_v)
    out.append(Check("vanishing space (dim 4) equals span q_1..q_5", len(V) == 4 and same))
    out.append(Check("rho(a_i) = 0 for all six axes", all(clebsch_rho(a, qs).is_zero() for a in STANDARD_AXES)))
    ok = True
    for _ in range(samples):
        u = _rand_vec(rng)
        y = [qa.evaluate(u) for qa in qs]
        ok &= sum((c ** 3 for c in y), Fraction(0)) == 0 and sigma_coords(clebsch_rho(u, qs), qs).sigma3 == 0
    out.append(Check(f"rho(u) on the Clebsch surface ({samples} random u)", ok))
    sc = sigma_coords(qs[0], qs)
    want = (Fraction(-2, 5), Fraction(4, 25), Fraction(-3, 125))
    out.append(Check("sigma(q1) = (-2/5, 4/25, -3/125)", (sc.sigma2, sc.sigma3, sc.sigma4) == want))
    # blow-up limit: linear term of rho(a1 + t v) against h = (v,x)((a,x)^2 - (a,a)(x,x)/5)
    a = STANDARD_AXES[0]
    v = (Fraction(1), Fraction(0), Fraction(0))
    L = rho_linear_term(a, v, qs)
    h = special_form(v, a)
    prop = proportional(L, h)
    from .poly3 import proportionality_constant

    const = proportionality_constant(L, h) / 3 if prop else None
    out.append(Check("rho(a1 + t v)/(3t) -> multiple of (v,x)((a1,x)^2 - (a1,a1)(x,x)/5)", prop, f"factor {const}"))
    return out


def verify_pfaffian(samples: int = 20, seed: int = 0) -> list:
    rng = np.random.default_rng(seed)
    hb = standard_h_basis()
    out = []
    ok, detail = True, ""
    for _ in range(samples):
        u = _rand_vec(rng)
        r = omega_matrix(u, hb.basis).rank()
        ker = kernel_on_H(u, hb)
        good = r == 6 and len(ker) == 1 and proportional(ker[0], axis_harmonic(u))
        if not good:
            ok, detail = False, f"u={u} rank={r}"
    out.append(Check(f"rank omega_u on H = 6 with kernel f_u ({samples} random u)", ok, detail))
    ok, n = True, 0
    while n < samples:
        p = random_rational_harmonic(rng, lo=-5, hi=5, den=3)
        if p.is_zero():
            continue
        try:
            pc = pfaffian_cubic(p, hb)
        except ValueError:
            continue  # degenerate draw, re-sample
        ok &= proportional(pc, p)
        n += 1
    out.append(Check(f"Pf(omega_u on p-perp) proportional to p ({samples} random p)", ok))
    ok = True
    for _ in range(max(3, samples // 4)):
        u = _rand_vec(rng)
        p = harmonic_vanishing_at(u, rng, hb)
        if p.is_zero():
            continue
        ok &= omega_rank_on_W(p, u, hb) == 4
    out.append(Check("rank of omega_u on p-perp at a root u of p is 4", ok))
    X = [axis_harmonic(a) for a in STANDARD_AXES]
    rank3 = len(reduce_to_basis(X)) == 3
    out.append(Check("span of the six axis harmonics has rank 3", rank3))
    out.append(Check("icosahedral X is isotropic", bool(isotropic_check(X))))
    res = isotropic_check([axis_harmonic(e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))])
    out.append(Check("span f_e1, f_e2, f_e3 is not isotropic", not res.isotropic, f"witness {res.witness}"))
    R = rational_rotation((1, 2, 3, 4))
    Xr = [rotate(x, R) for x in X]
    out.append(Check("rotated icosahedral X is isotropic", bool(isotropic_check(Xr))))
    return out


HARD_APPENDIX = (
    "lambda == c3/3",
    "mu == 0",
    "nu == -3 lambda/4",
    "c3/c4 == 9",
    "triple product == -1/27",
    "M_app(y(q1)) == -(4/15) I",
    "S_norm == -8 s2 I - 3 M_app",
    "tr S_norm == -30 s2",
    "printed tr M",
    "printed tr M^2",
)


def verify_appendix(samples: int = 12, seed: int = 0) -> list:
    rep = appendix_verify(samples=samples, seed=seed)
    out = [Check("lambda = 4 pi/315", rep.lam.coeff == Fraction(4, 315) and rep.lam.pi_power == 1, str(rep.lam))]
    table = {val: n for (_, val), n in rep.face_table.items()}
    out.append(Check("face-axis squares {5/9 x15, 1/9 x30}", table == {Fraction(5, 9): 15, Fraction(1, 9): 30}, str(table)))
    for name in HARD_APPENDIX:
        out.append(Check(name, bool(rep.verdicts[name])))
    for line in rep.lines():
        if line.startswith(("tr M^", "3 tau3", "J on V", "tau1 tau2", "K on V")) and ": " not in line:
            out.append(Check("fit", None, line))
    for name, v in rep.verdicts.items():
        if name not in HARD_APPENDIX:
            out.append(Check(name, None, str(v)))
    return out


SUITES = {"clebsch": verify_clebsch, "pfaffian": verify_pfaffian, "appendix": verify_appendix}
