"""Numerical checks of the sharp inequalities for normalized radial maps.

Every check returns :class:`BoundReport` records. Sphere suprema and infima
are sample estimates, so a passing report means the inequality held on the
samples; ``attained`` is only meaningful when the extremal direction is in
the sample set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .errors import NotInClass, UnsupportedModel
from .geometry_criteria import CriterionConfig, ball_criterion, circle_values
from .norm_models import lp_norm, support_functional
from .radial_maps import RadialMap, homogeneous_sup, slice_series

DEFAULT_TOL = 1e-9
SQRT3 = math.sqrt(3.0)
BLOCH_RADIUS = 1 / SQRT3
BLOCH_COVER = SQRT3 / 4
BLOCH_CLASS_TOL = 1e-3


@dataclass
class BoundReport:
    bound_name: str
    lhs_observed: float
    rhs_bound: float
    slack: float
    attained: bool
    witness: dict = field(default_factory=dict)
    sense: Literal["upper", "lower"] = "upper"
    tol: float = DEFAULT_TOL
    conditions_ok: bool = True

    @property
    def passed(self) -> bool:
        return self.slack >= -self.tol and self.conditions_ok

    def as_record(self) -> dict:
        return {
            "name": self.bound_name,
            "type": "bound",
            "sense": self.sense,
            "lhs": self.lhs_observed,
            "rhs": self.rhs_bound,
            "slack": self.slack,
            "attained": self.attained,
            "witness": self.witness,
            "passed": self.passed,
        }


def _report(name, lhs, rhs, sense, tol, witness=None, **kw) -> BoundReport:
    slack = rhs - lhs if sense == "upper" else lhs - rhs
    return BoundReport(name, float(lhs), float(rhs), float(slack), abs(slack) <= tol, witness or {}, sense, tol, **kw)


def _require_normalized(F: RadialMap):
    if not F.normalized:
        raise NotInClass(f"expected f(0) = 1, got {F.f0}")


# ---------------------------------------------------------------------------
# coefficients
# ---------------------------------------------------------------------------


def check_bieberbach(F: RadialMap, G: RadialMap, s_max: int, samples, tol: float = DEFAULT_TOL) -> list[BoundReport]:
    """``sup ||P_s(w)|| <= s ||DF(0)||`` for ``G`` subordinate to biholomorphic ``F``."""
    samples = list(samples)
    scale = abs(F.f0)
    out = []
    for s in range(1, s_max + 1):
        lhs = homogeneous_sup(G, s, samples)
        out.append(_report(f"bieberbach[s={s}]", lhs, s * scale, "upper", tol, {"s": s}))
    return out


def fekete_szego(F: RadialMap, u, lam: float, tol: float = DEFAULT_TOL) -> BoundReport:
    """``|Q_2(u) - lam Q_1(u)^2| <= 1 + 2 exp(-2 lam / (1 - lam))``."""
    if not 0 <= lam < 1:
        raise ValueError("lambda must lie in [0, 1)")
    _require_normalized(F)
    q = F.homogeneous_values(u, 2)
    q1 = q[1] if q.size > 1 else 0
    q2 = q[2] if q.size > 2 else 0
    lhs = abs(q2 - lam * q1 * q1)
    rhs = 1 + 2 * math.exp(-2 * lam / (1 - lam))
    return _report(f"fekete_szego[lambda={lam:g}]", lhs, rhs, "upper", tol, {"Q1": complex(q1), "Q2": complex(q2)})


# ---------------------------------------------------------------------------
# growth, covering, distortion
# ---------------------------------------------------------------------------


def _extremes(values, samples):
    values = np.asarray(values)
    hi, lo = int(np.argmax(values)), int(np.argmin(values))
    return (values[hi], np.asarray(samples[hi]).tolist()), (values[lo], np.asarray(samples[lo]).tolist())


def check_growth(F: RadialMap, samples, radii, tol: float = DEFAULT_TOL) -> list[BoundReport]:
    """``r/(1+r)^2 <= ||F(ru)|| <= r/(1-r)^2`` on the samples, per radius."""
    _require_normalized(F)
    U = np.array(list(samples), dtype=complex)
    out = []
    for r in radii:
        vals = lp_norm(F(r * U), F.model.p)
        (hi, uhi), (lo, ulo) = _extremes(vals, U)
        out.append(_report(f"growth_upper[r={r:g}]", hi, r / (1 - r) ** 2, "upper", tol, {"u": uhi, "r": r}))
        out.append(_report(f"growth_lower[r={r:g}]", lo, r / (1 + r) ** 2, "lower", tol, {"u": ulo, "r": r}))
    return out


def covering_margin(
    F: RadialMap, r: float, samples, grid: int = 720, tol: float = DEFAULT_TOL
) -> BoundReport:
    """``min_u min_{|zeta|=r} |f_u(zeta)|`` against the growth floor ``r/(1+r)^2``.

    For ``F`` univalent on ``B_r`` the image ``F(B_r)`` contains the ball of
    this radius, since each slice image contains the disc of radius
    ``min |f_u|`` on its boundary circle.
    """
    _require_normalized(F)
    best = (math.inf, None, None)
    for u in samples:
        s = slice_series(F, u, F.degree + 1)
        vals = np.abs(circle_values(s, r, grid))
        j = int(np.argmin(vals))
        if vals[j] < best[0]:
            best = (float(vals[j]), np.asarray(u).tolist(), complex(r * np.exp(2j * np.pi * j / grid)))
    lhs, u, z = best
    return _report(f"covering[r={r:g}]", lhs, r / (1 + r) ** 2, "lower", tol, {"u": u, "zeta": z})


def check_distortion_ray(F: RadialMap, samples, radii, tol: float = DEFAULT_TOL) -> list[BoundReport]:
    """``r(1-r)/(1+r)^3 <= ||DF(x)x|| <= r(1+r)/(1-r)^3`` at ``x = r u``."""
    _require_normalized(F)
    U = np.array(list(samples), dtype=complex)
    out = []
    for r in radii:
        X = r * U
        DFx = (np.asarray(F.f(X)) + np.asarray(F.df_radial(X)))[:, None] * X
        vals = lp_norm(DFx, F.model.p)
        (hi, uhi), (lo, ulo) = _extremes(vals, U)
        out.append(_report(f"distortion_ray_upper[r={r:g}]", hi, r * (1 + r) / (1 - r) ** 3, "upper", tol, {"u": uhi, "r": r}))
        out.append(_report(f"distortion_ray_lower[r={r:g}]", lo, r * (1 - r) / (1 + r) ** 3, "lower", tol, {"u": ulo, "r": r}))
    return out


def _gradient(F: RadialMap, x) -> np.ndarray:
    if F.is_profile:
        l = F.field.functional
        return F.field.dphi(l(x)) * l.coeffs
    return F.field.gradient(x)


def operator_norm_hilbert(F: RadialMap, x) -> float:
    """Exact ``||DF(x)||`` on a Hilbert model.

    ``DF(x) = f(x) I + x g^T`` leaves ``S = span{x, conj(g)}`` and its
    orthogonal complement invariant, acting as ``f(x)`` on the complement;
    the norm is the larger of ``|f(x)|`` (when the complement is nonzero) and
    the top singular value of the at most 2x2 compression to ``S``.
    """
    if F.model.p != 2:
        raise UnsupportedModel("the operator-norm distortion check needs p = 2")
    x = F.model.vector(x)
    fx = complex(F.f(x))
    g = _gradient(F, x)
    B = np.column_stack([x, np.conj(g)])
    U, sv, _ = np.linalg.svd(B, full_matrices=False)
    rank = int(np.sum(sv > 1e-14 * max(sv.max(initial=0.0), 1.0)))
    if rank == 0:
        return abs(fx)
    Q = U[:, :rank]
    AQ = fx * Q + np.outer(x, g @ Q)
    top = float(np.linalg.svd(Q.conj().T @ AQ, compute_uv=False)[0])
    return max(top, abs(fx)) if rank < F.model.n else top


def check_distortion_hilbert(F: RadialMap, samples, radii, tol: float = DEFAULT_TOL) -> list[BoundReport]:
    """``(1-r)/(1+r)^3 <= ||DF(x)|| <= (1+r)/(1-r)^3`` on a Hilbert model."""
    if F.model.p != 2:
        raise UnsupportedModel("the operator-norm distortion check needs p = 2")
    _require_normalized(F)
    U = [np.asarray(u, dtype=complex) for u in samples]
    out = []
    for r in radii:
        vals = [operator_norm_hilbert(F, r * u) for u in U]
        (hi, uhi), (lo, ulo) = _extremes(vals, U)
        out.append(_report(f"distortion_op_upper[r={r:g}]", hi, (1 + r) / (1 - r) ** 3, "upper", tol, {"u": uhi, "r": r}))
        out.append(_report(f"distortion_op_lower[r={r:g}]", lo, (1 - r) / (1 + r) ** 3, "lower", tol, {"u": ulo, "r": r}))
    return out


# ---------------------------------------------------------------------------
# Bloch class
# ---------------------------------------------------------------------------


def default_bloch_radii(count: int = 24, depth: float = 3.0) -> np.ndarray:
    """0 plus radii ``1 - 10**(-t)`` for ``t`` evenly spaced in ``(0, depth]``."""
    t = np.linspace(0, depth, count)[1:]
    return np.concatenate([[0.0], 1 - 10.0 ** (-t)])


def bloch_seminorm(F: RadialMap, samples, radii=None, angles: int = 72, cap: float = 1e3) -> float:
    """Grid estimate of ``||F(0)|| + sup (1 - ||x||^2) ||DF(x)x|| / ||x||``.

    Reduces to ``sup (1 - |zeta|^2) |f_u'(zeta)|`` over slices. Returns
    ``inf`` once the estimate exceeds ``cap``.
    """
    radii = default_bloch_radii() if radii is None else np.asarray(radii, dtype=float)
    best = 0.0
    for u in samples:
        d = slice_series(F, u, F.degree + 1).derivative()
        for t in radii:
            if t == 0:
                val = abs(d[0])
            else:
                val = (1 - t * t) * float(np.abs(circle_values(d, t, angles)).max())
            best = max(best, val)
            if best > cap:
                return math.inf
    # F(0) = f(0) * 0 = 0 for every radial map
    return float(best)


def _require_bloch_class(F: RadialMap, samples, tol: float = BLOCH_CLASS_TOL) -> float:
    _require_normalized(F)
    b = bloch_seminorm(F, samples)
    if not abs(b - 1) <= tol:
        raise NotInClass(f"Bloch seminorm estimate {b} is not within {tol} of 1")
    return b


def bonk_bound(rho):
    rho = np.asarray(rho, dtype=float)
    return (1 - SQRT3 * rho) / (1 - rho / SQRT3) ** 3 * rho


def check_bonk(
    F: RadialMap, samples, radii: int = 24, angles: int = 72, tol: float = DEFAULT_TOL
) -> BoundReport:
    """``Re l_x(DF(x)x) >= (1 - sqrt3 |x|)/(1 - |x|/sqrt3)^3 |x|`` for ``0 < |x| <= 1/sqrt3``.

    Evaluated at ``x = rho e^{i theta} u`` with ``l_x = e^{-i theta} l_u``.
    """
    samples = list(samples)
    seminorm = _require_bloch_class(F, samples)
    rho = np.linspace(0, BLOCH_RADIUS, radii + 1)[1:]
    phase = np.exp(2j * np.pi * np.arange(angles) / angles)
    zeta = (rho[:, None] * phase[None, :]).ravel()
    bound = np.repeat(bonk_bound(rho), angles)
    worst = (math.inf, None)
    for u in samples:
        u = np.asarray(u, dtype=complex)
        l_u = support_functional(u, F.model)
        X = zeta[:, None] * u[None, :]
        DFx = (np.asarray(F.f(X)) + np.asarray(F.df_radial(X)))[:, None] * X
        lhs = np.real(np.conj(zeta / np.abs(zeta)) * l_u(DFx))
        slack = lhs - bound
        j = int(np.argmin(slack))
        if slack[j] < worst[0]:
            worst = (float(slack[j]), {"u": u.tolist(), "x_norm": float(abs(zeta[j])), "lhs": float(lhs[j]), "zeta": complex(zeta[j])})
    slack, witness = worst
    witness["seminorm"] = seminorm
    lhs = witness["lhs"]
    return BoundReport("bonk_distortion", lhs, lhs - slack, slack, abs(slack) <= tol, witness, "lower", tol)


def bloch_schlicht_check(
    F: RadialMap, samples, cfg: CriterionConfig = CriterionConfig(), tol: float = 1e-6
) -> BoundReport:
    """Univalence on ``B_{1/sqrt3}`` and covering of ``B_{sqrt3/4}`` for ``F`` in the normalized Bloch class."""
    samples = list(samples)
    seminorm = _require_bloch_class(F, samples)
    cfg = CriterionConfig(cfg.boundary_grid, cfg.radial_grid, cfg.margin, max(cfg.degree, F.degree + 1), cfg.root_degree_cap)
    univ = ball_criterion(F, BLOCH_RADIUS, "univalent", samples, cfg)
    cover = covering_margin(F, BLOCH_RADIUS, samples, cfg.boundary_grid)
    rep = _report(
        "bloch_schlicht",
        cover.lhs_observed,
        BLOCH_COVER,
        "lower",
        tol,
        {"univalent": univ.verdict, "univalence_margin": univ.margin_observed, "seminorm": seminorm, **cover.witness},
        conditions_ok=univ.verdict == "holds",
    )
    return rep
