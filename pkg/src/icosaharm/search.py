"""Enumerate regular icosahedra whose vertices lie on the nodal set of a
harmonic cubic.

Each rotation ``R`` of the standard icosahedron is scored by the six residuals
``f(R a_i)`` (unit axes, ``f`` normalized in the Bombieri norm). All starts run
Levenberg-Marquardt together as one batched numpy computation. Accepted
minima are deduplicated modulo the icosahedral group and the quaternion sign.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, asdict

import mpmath
import numpy as np
from scipy.stats import qmc

from .poly3 import MONOMIALS, Cubic, bombieri_norm

PHI_F = (1 + math.sqrt(5)) / 2
_AXES_RAW = np.array(
    [
        [0.0, PHI_F, 1.0],
        [0.0, PHI_F, -1.0],
        [1.0, 0.0, PHI_F],
        [-1.0, 0.0, PHI_F],
        [PHI_F, 1.0, 0.0],
        [PHI_F, -1.0, 0.0],
    ]
)
UNIT_AXES = _AXES_RAW / np.linalg.norm(_AXES_RAW, axis=1, keepdims=True)
_EXP = np.array(MONOMIALS)  # (10, 3)


@dataclass
class SearchConfig:
    starts: int = 512
    lm_tol: float = 1e-14
    accept_tol: float = 1e-9
    dedup_tol: float = 1e-6
    seed: int = 0
    max_iter: int = 200
    family_tol: float = 1e-6
    family_samples: int = 12
    max_reps: int = 24
    verify_tol: float = 1e-8


# quaternions (w, x, y, z), v -> q v q^-1 -------------------------------------


def quat_to_matrix(q: np.ndarray) -> np.ndarray:
    q = np.asarray(q, dtype=float)
    w, x, y, z = np.moveaxis(q, -1, 0)
    R = np.stack(
        [
            np.stack([1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)], -1),
            np.stack([2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)], -1),
            np.stack([2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)], -1),
        ],
        -2,
    )
    return R


def matrix_to_quat(R: np.ndarray) -> np.ndarray:
    R = np.asarray(R, dtype=float)
    tr = np.trace(R)
    if tr > 0:
        s = 2 * math.sqrt(tr + 1)
        q = [s / 4, (R[2, 1] - R[1, 2]) / s, (R[0, 2] - R[2, 0]) / s, (R[1, 0] - R[0, 1]) / s]
    else:
        i = int(np.argmax(np.diag(R)))
        j, k = (i + 1) % 3, (i + 2) % 3
        s = 2 * math.sqrt(1 + R[i, i] - R[j, j] - R[k, k])
        q = [0.0] * 4
        q[0] = (R[k, j] - R[j, k]) / s
        q[1 + i] = s / 4
        q[1 + j] = (R[j, i] + R[i, j]) / s
        q[1 + k] = (R[k, i] + R[i, k]) / s
    q = np.array(q)
    q /= np.linalg.norm(q)
    return q if q[0] >= 0 else -q


def quat_mul(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    pw, px, py, pz = np.moveaxis(p, -1, 0)
    qw, qx, qy, qz = np.moveaxis(q, -1, 0)
    return np.stack(
        [
            pw * qw - px * qx - py * qy - pz * qz,
            pw * qx + px * qw + py * qz - pz * qy,
            pw * qy - px * qz + py * qw + pz * qx,
            pw * qz + px * qy - py * qx + pz * qw,
        ],
        -1,
    )


def quat_exp(v: np.ndarray) -> np.ndarray:
    """Unit quaternion of the rotation vector ``v`` (angle ``|v|``)."""
    theta = np.linalg.norm(v, axis=-1, keepdims=True)
    half = theta / 2
    # sin(t/2)/t, stable at 0
    k = np.where(theta > 1e-12, np.sin(half) / np.where(theta > 0, theta, 1), 0.5 - theta ** 2 / 48)
    return np.concatenate([np.cos(half), k * v], axis=-1)


def axis_angle_matrix(axis, theta: float) -> np.ndarray:
    axis = np.asarray(axis, dtype=float)
    return quat_to_matrix(quat_exp(axis / np.linalg.norm(axis) * theta))


def quasi_uniform_quaternions(n: int, seed: int = 0) -> np.ndarray:
    """Scrambled Sobol points pushed to S^3 by Shoemake's uniform map."""
    sampler = qmc.Sobol(d=3, scramble=True, seed=seed)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        u = sampler.random(n)
    u1, u2, u3 = u[:, 0], 2 * math.pi * u[:, 1], 2 * math.pi * u[:, 2]
    a, b = np.sqrt(1 - u1), np.sqrt(u1)
    return np.stack([b * np.cos(u3), a * np.sin(u2), a * np.cos(u2), b * np.sin(u3)], axis=1)


# cubic evaluation ----------------------------------------------------------------


def normalized_coeffs(f) -> np.ndarray:
    if isinstance(f, Cubic):
        c = np.array([float(x) for x in f.coeffs])
        n = bombieri_norm(f)
    else:
        c = np.asarray(f, dtype=float)
        n = bombieri_norm(Cubic(tuple(c)))
    if n == 0:
        raise ValueError("zero cubic")
    return c / n


def eval_cubic(c: np.ndarray, X: np.ndarray):
    """Values and gradients of the cubic with coefficients ``c`` at points ``X`` (..., 3)."""
    P = np.stack([np.ones_like(X), X, X * X, X * X * X], axis=-1)  # (..., 3, 4)
    mono = P[..., 0, _EXP[:, 0]] * P[..., 1, _EXP[:, 1]] * P[..., 2, _EXP[:, 2]]  # (..., 10)
    val = mono @ c
    grads = []
    for k in range(3):
        e = _EXP[:, k]
        dk = e * P[..., k, np.maximum(e - 1, 0)]
        others = [l for l in range(3) if l != k]
        dm = dk * P[..., others[0], _EXP[:, others[0]]] * P[..., others[1], _EXP[:, others[1]]]
        grads.append(dm @ c)
    return val, np.stack(grads, axis=-1)


def _residuals(c, q):
    R = quat_to_matrix(q)  # (N,3,3)
    X = np.einsum("nij,aj->nai", R, UNIT_AXES)  # (N,6,3)
    r, g = eval_cubic(c, X)
    Jac = np.cross(X, g)  # d r / d(left rotation vector)
    return r, Jac


def residual(f, q):
    """Objective ``Σ_i f(R(q) a_i)^2`` and its gradient in the left tangent
    coordinates ``R -> exp([δ]x) R`` at ``q``."""
    c = normalized_coeffs(f)
    r, Jac = _residuals(c, np.asarray(q, dtype=float)[None, :])
    return float(np.sum(r[0] ** 2)), 2 * Jac[0].T @ r[0]


def levenberg_marquardt(c: np.ndarray, q0: np.ndarray, max_iter: int = 200, lm_tol: float = 1e-14):
    """Batched LM over unit quaternions; returns final quaternions and max |residual|."""
    q = q0 / np.linalg.norm(q0, axis=1, keepdims=True)
    n = len(q)
    mu = np.full(n, 1e-3)
    r, Jac = _residuals(c, q)
    cost = np.sum(r * r, axis=1)
    active = np.ones(n, dtype=bool)
    eye = np.eye(3)
    for _ in range(max_iter):
        idx = np.nonzero(active)[0]
        if idx.size == 0:
            break
        Ja, ra = Jac[idx], r[idx]
        H = np.einsum("nai,naj->nij", Ja, Ja)
        g = np.einsum("nai,na->ni", Ja, ra)
        scale = np.trace(H, axis1=1, axis2=2) / 3 + 1e-300
        A = H + (mu[idx] * scale)[:, None, None] * eye
        delta = -np.linalg.solve(A, g[..., None])[..., 0]
        qt = quat_mul(quat_exp(delta), q[idx])
        qt /= np.linalg.norm(qt, axis=1, keepdims=True)
        rt, Jt = _residuals(c, qt)
        ct = np.sum(rt * rt, axis=1)
        ok = ct < cost[idx]
        acc = idx[ok]
        q[acc], r[acc], Jac[acc], cost[acc] = qt[ok], rt[ok], Jt[ok], ct[ok]
        mu[acc] = np.maximum(mu[acc] / 3, 1e-12)
        rej = idx[~ok]
        mu[rej] = mu[rej] * 4
        step = np.linalg.norm(delta, axis=1)
        done = (cost[idx] < lm_tol ** 2) | ((step < lm_tol) & ok) | (mu[idx] > 1e12)
        active[idx[done]] = False
    return q, np.max(np.abs(r), axis=1)


# dedup ---------------------------------------------------------------------------


def axis_set(R: np.ndarray) -> np.ndarray:
    return UNIT_AXES @ np.asarray(R).T


def axis_set_distance(X: np.ndarray, Y: np.ndarray) -> float:
    """Hausdorff distance between axis sets modulo sign, using ``|x × y|``."""
    C = np.linalg.norm(np.cross(X[:, None, :], Y[None, :, :]), axis=-1)
    return float(max(C.min(axis=1).max(), C.min(axis=0).max()))


@dataclass
class Solution:
    quaternion: tuple
    axes: np.ndarray
    max_residual: float
    verified_residual: float | None = None

    @property
    def rotation(self) -> np.ndarray:
        return quat_to_matrix(np.array(self.quaternion))

    def to_json(self) -> dict:
        return {
            "quaternion": [float(x) for x in self.quaternion],
            "axes": self.axes.tolist(),
            "max_residual": self.max_residual,
            "verified_residual": self.verified_residual,
        }


def dedup(solutions, tol: float = 1e-6, max_reps: int | None = None):
    """Keep one representative per icosahedron (axis-set distance below ``tol``).

    Stops once ``max_reps`` representatives exist; past two the answer is a
    family anyway and the quadratic scan only costs time.
    """
    reps: list = []
    for s in sorted(solutions, key=lambda s: s.max_residual):
        if max_reps is not None and len(reps) >= max_reps:
            break
        if not any(axis_set_distance(s.axes, r.axes) < tol for r in reps):
            reps.append(s)
    return reps


@dataclass
class Family:
    axis: np.ndarray
    samples: list

    def to_json(self) -> dict:
        return {"axis": self.axis.tolist(), "samples": [s.to_json() for s in self.samples]}


@dataclass
class SearchOutcome:
    icosahedra: list
    family: Family | None
    starts_used: int
    converged_count: int
    config: SearchConfig = field(default_factory=SearchConfig)
    flags: list = field(default_factory=list)

    @property
    def count(self):
        return "family" if self.family is not None else len(self.icosahedra)

    def to_json(self) -> dict:
        return {
            "count": self.count,
            "icosahedra": [s.to_json() for s in self.icosahedra] if self.family is None else [],
            "family": self.family.to_json() if self.family is not None else None,
            "distinct_minima": len(self.icosahedra),
            "starts_used": self.starts_used,
            "converged_count": self.converged_count,
            "config": asdict(self.config),
            "flags": list(self.flags),
        }


def verify_extended(f, q, dps: int = 40) -> float:
    """``max_i |f(R a_i)| / ||f||`` evaluated with ``dps`` significant digits."""
    with mpmath.workdps(dps):
        c = [mpmath.mpf(float(x)) for x in (f.coeffs if isinstance(f, Cubic) else f)]
        w = [mpmath.mpf(float(x)) for x in q]
        n = mpmath.sqrt(sum(x * x for x in w))
        w, x, y, z = (t / n for t in w)
        R = [
            [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
            [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
            [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
        ]
        phi = (1 + mpmath.sqrt(5)) / 2
        raw = [[0, phi, 1], [0, phi, -1], [1, 0, phi], [-1, 0, phi], [phi, 1, 0], [phi, -1, 0]]
        norm = mpmath.sqrt(1 + phi * phi)
        from .poly3 import BOMBIERI_WEIGHTS

        fn = mpmath.sqrt(sum(mpmath.mpf(wt.numerator) / wt.denominator * ci * ci for wt, ci in zip(BOMBIERI_WEIGHTS, c)))
        worst = mpmath.mpf(0)
        for a in raw:
            v = [sum(R[i][j] * a[j] for j in range(3)) / norm for i in range(3)]
            val = sum(ci * v[0] ** e[0] * v[1] ** e[1] * v[2] ** e[2] for ci, e in zip(c, MONOMIALS))
            worst = max(worst, abs(val))
        return float(worst / fn)


def _common_axis(reps, tol):
    for x in reps[0].axes:
        if all(np.min(np.linalg.norm(np.cross(x, r.axes), axis=1)) < tol for r in reps[1:]):
            return x / np.linalg.norm(x)
    return None


def _solution_from_rotation(c, R) -> Solution:
    q = matrix_to_quat(R)
    r, _ = _residuals(c, q[None, :])
    return Solution(tuple(q), axis_set(R), float(np.max(np.abs(r))))


def find_icosahedra(f, config: SearchConfig | None = None) -> SearchOutcome:
    """All icosahedra inscribed in the nodal set of ``f``, or a one-parameter family."""
    config = config or SearchConfig()
    c = normalized_coeffs(f)
    q0 = quasi_uniform_quaternions(config.starts, config.seed)
    q, res = levenberg_marquardt(c, q0, config.max_iter, config.lm_tol)
    ok = res < config.accept_tol
    sols = [Solution(tuple(qi), axis_set(quat_to_matrix(qi)), float(ri)) for qi, ri in zip(q[ok], res[ok])]
    reps = dedup(sols, config.dedup_tol, config.max_reps)
    flags = []
    fcoeffs = f.coeffs if isinstance(f, Cubic) else tuple(f)
    for s in reps[:3]:
        s.verified_residual = verify_extended(fcoeffs, s.quaternion)
        if s.verified_residual >= config.verify_tol:
            flags.append("extended-precision-verification-failed")
    family = None
    if len(reps) > 2:
        axis = _common_axis(reps, config.family_tol)
        if axis is None:
            flags.append("more-than-two-without-common-vertex")
        else:
            R0 = reps[0].rotation
            samples = []
            for k in range(config.family_samples):
                theta = (2 * math.pi / 5) * k / config.family_samples
                s = _solution_from_rotation(c, axis_angle_matrix(axis, theta) @ R0)
                s.verified_residual = verify_extended(fcoeffs, s.quaternion)
                samples.append(s)
            if any(s.max_residual >= config.accept_tol for s in samples):
                flags.append("family-member-off-nodal-set")
            family = Family(axis, samples)
    return SearchOutcome(reps, family, config.starts, int(ok.sum()), config, flags)
