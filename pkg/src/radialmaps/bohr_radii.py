"""Bohr-Rogosinski radii for maps subordinate to radial biholomorphic maps.

The radius is the root in (0, 1) of

    4 r^m - (1 - r^m)^2 + 4 r^N [N(1 - r) + r] ((1 - r^m)/(1 - r))^2 = 0,

equivalently ``4 r^m/(1-r^m)^2 + 4 r^N [N(1-r)+r]/(1-r)^2 = 1``. The
``fixed_v`` variant takes ``V(x) = x`` (m = 1 in the first term only, no
quotient factor); the ``limit`` variant lets ``m -> inf``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import NonUniqueRoot, OutOfBallError
from .norm_models import lp_norm, norm
from .radial_maps import RadialMap, SchwarzPower
from .sharp_bounds import BoundReport, _report

Variant = Literal["general", "fixed_v", "limit"]

BRACKET = (1e-9, 1 - 1e-9)
ROOT_TOL = 1e-12
DEFAULT_S_CAP = 200


@dataclass(frozen=True)
class RadiusQuery:
    """``m=None`` stands for the ``m -> inf`` limit."""

    m: int | None
    N: int
    variant: Variant = "general"

    def __post_init__(self):
        if self.variant not in ("general", "fixed_v", "limit"):
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.N < 1:
            raise ValueError("N must be >= 1")
        if self.variant == "general" and (self.m is None or self.m < 1):
            raise ValueError("the general variant needs a finite m >= 1")
        if self.variant == "fixed_v" and self.m not in (None, 1):
            raise ValueError("the fixed_v variant has V(x) = x, so m must be 1 or omitted")
        if self.variant == "limit" and self.m is not None:
            raise ValueError("the limit variant has m = inf; pass m=None")


@dataclass(frozen=True)
class RadiusResult:
    r: float
    residual: float
    iterations: int


def koebe_tail(r: float, N: int):
    """``sum_{s>=N} s r^s = r^N [N(1-r) + r] / (1-r)^2``."""
    return r**N * (N * (1 - r) + r) / (1 - r) ** 2


def _geom(r: float, m: int) -> float:
    # (1 - r^m)/(1 - r) without cancellation near r = 1
    return math.fsum(r**j for j in range(m))


def radius_equation(r: float, q: RadiusQuery) -> float:
    if not 0 < r < 1:
        raise OutOfBallError(f"r must lie in (0, 1), got {r}")
    tail = 4 * r**q.N * (q.N * (1 - r) + r)
    if q.variant == "limit":
        return tail / (1 - r) ** 2 - 1
    if q.variant == "fixed_v":
        return 4 * r - (1 - r) ** 2 + tail
    m = q.m
    return 4 * r**m - (1 - r**m) ** 2 + tail * _geom(r, m) ** 2


def _sign_changes(q: RadiusQuery, points: int = 1000) -> int:
    grid = np.linspace(BRACKET[0], BRACKET[1], points)
    vals = np.array([radius_equation(float(t), q) for t in grid])
    s = np.sign(vals)
    s = s[s != 0]
    return int(np.sum(s[1:] != s[:-1]))


def solve_radius(q: RadiusQuery, tol: float = ROOT_TOL) -> RadiusResult:
    """Bisection to ``|residual| <= tol`` followed by three safeguarded Newton steps."""
    changes = _sign_changes(q)
    if changes != 1:
        raise NonUniqueRoot(f"{changes} sign changes of the radius equation on (0, 1) for {q}")
    lo, hi = BRACKET
    flo = radius_equation(lo, q)
    if flo >= 0 or radius_equation(hi, q) <= 0:
        raise NonUniqueRoot(f"radius equation is not bracketed on {BRACKET} for {q}")
    it = 0
    mid = 0.5 * (lo + hi)
    fmid = radius_equation(mid, q)
    while abs(fmid) > tol and hi - lo > 4 * np.finfo(float).eps:
        if fmid < 0:
            lo = mid
        else:
            hi = mid
        mid = 0.5 * (lo + hi)
        fmid = radius_equation(mid, q)
        it += 1
    r, fr = mid, fmid
    for _ in range(3):
        h = 1e-7 * max(r, 1e-3)
        slope = (radius_equation(min(r + h, hi), q) - radius_equation(max(r - h, lo), q)) / (min(r + h, hi) - max(r - h, lo))
        if slope <= 0:
            break
        cand = r - fr / slope
        if not lo <= cand <= hi:
            break
        fc = radius_equation(cand, q)
        if abs(fc) >= abs(fr):
            break
        r, fr = cand, fc
        it += 1
    return RadiusResult(float(r), float(abs(fr)), it)


def radius_table(m_values, N_values, variant: Variant = "general") -> list[dict]:
    rows = []
    for m in m_values if variant == "general" else [None if variant == "limit" else 1]:
        for N in N_values:
            res = solve_radius(RadiusQuery(m, N, variant))
            rows.append({"m": m, "N": N, "variant": variant, "r": res.r, "residual": res.residual, "iterations": res.iterations})
    return rows


def bohr_tail_sum(G: RadialMap, x, N: int, s_cap: int = DEFAULT_S_CAP, df0_norm: float | None = None) -> tuple[float, float]:
    """``sum_{s>=N} ||P_s(x)||`` as ``(exact part through s_cap, certified remainder)``.

    The remainder bounds ``sum_{s>cap} ||P_s(x)|| <= ||DF(0)|| sum_{s>cap} s r^s``
    with ``||DF(0)|| = df0_norm`` (default ``|g(0)|``). A profile of degree ``d``
    fixes ``P_s`` only for ``s <= d + 1``, so the exact part stops there. A
    polynomial field is exact, so its expansion ends at ``deg + 1`` with no
    remainder.
    """
    x = G.model.vector(x)
    r = norm(x, G.model)
    if r >= 1:
        raise OutOfBallError(f"||x|| = {r} is not inside the unit ball")
    scale = abs(G.f0) if df0_norm is None else float(df0_norm)
    cap = min(s_cap, G.degree + 1)
    # ||P_s(x)|| = |Q_{s-1}(x)| ||x||
    q = G.homogeneous_values(x, cap - 1)
    exact = math.fsum(abs(q[s - 1]) * r for s in range(max(N, 1), cap + 1))
    start = max(cap + 1, N)
    if not G.is_profile and cap == G.degree + 1:
        return exact, 0.0
    remainder = scale * koebe_tail(r, start) if r > 0 else 0.0
    return exact, remainder


def rogosinski_lhs(F: RadialMap, V: SchwarzPower, x, N: int, s_cap: int = DEFAULT_S_CAP) -> float:
    """``||F(V(x))|| + sum_{s>=N} ||P_s(x)||`` with ``G = F``."""
    x = F.model.vector(x)
    exact, remainder = bohr_tail_sum(F, x, N, s_cap, df0_norm=abs(F.f0))
    return float(lp_norm(F(V(x)), F.model.p)) + exact + remainder


def rogosinski_check(
    F: RadialMap, m: int, N: int, r: float, samples, V: SchwarzPower | None = None,
    s_cap: int = DEFAULT_S_CAP, tol: float = 1e-9,
) -> BoundReport:
    """Bohr-Rogosinski inequality at ``||x|| = r`` with ``G = F``.

    The right-hand side uses ``||F(0)|| + dist(F(0), boundary) >= |f(0)|/4``
    (a quarter of ``||DF(0)||``), which is the exact value for the Koebe map.
    """
    if V is None:
        if not F.is_profile or F.field.direction is None:
            raise ValueError("pass V explicitly for maps without a profile direction")
        V = SchwarzPower(F.field.direction, F.field.functional, m)
    elif V.m != m:
        raise ValueError("V has a different order than m")
    best = (-math.inf, None)
    for u in samples:
        u = np.asarray(u, dtype=complex)
        val = rogosinski_lhs(F, V, r * u, N, s_cap)
        if val > best[0]:
            best = (val, u.tolist())
    lhs, u = best
    rhs = abs(F.f0) / 4
    return _report(f"rogosinski[m={m},N={N},r={r:.12g}]", lhs, rhs, "upper", tol, {"u": u, "r": r, "m": m, "N": N})
