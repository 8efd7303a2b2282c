"""Geometric deciders for slice series and for the ball.

One-variable tests act on slice series and evaluate on the circle
``|zeta| = r`` only; the real part of an analytic quotient attains its
minimum over the closed disc on the boundary once the quotient is known to
be analytic inside, which the zero checks establish first. Ball-level tests
are conjunctions of slice tests over sampled directions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Literal

import numpy as np
from numpy.polynomial import polynomial as npoly
from shapely.geometry import LinearRing

from .errors import DegeneracyError, OutOfBallError
from .norm_models import lp_norm
from .power_series import DEFAULT_DEGREE, TruncatedSeries
from .radial_maps import PolyMap, RadialMap, alexander_transform, slice_series

Verdict = Literal["holds", "fails", "inconclusive"]
BallKind = Literal["univalent", "starlike", "quasiconvexB"]


@dataclass(frozen=True)
class CriterionConfig:
    boundary_grid: int = 720
    radial_grid: int = 24
    margin: float = 1e-9
    degree: int = DEFAULT_DEGREE
    # above this effective degree, zeros are counted by the argument principle
    root_degree_cap: int = 200

    def __post_init__(self):
        if self.boundary_grid < 8 or self.radial_grid < 8:
            raise ValueError("grids must have at least 8 points")
        if not self.margin > 0:
            raise ValueError("margin must be positive")


@dataclass
class CriterionReport:
    verdict: Verdict
    margin_observed: float
    witness: dict = field(default_factory=dict)
    name: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict == "holds"

    def as_record(self) -> dict:
        return {
            "name": self.name,
            "type": "criterion",
            "verdict": self.verdict,
            "margin_observed": self.margin_observed,
            "witness": self.witness,
            "passed": self.verdict != "fails",
        }


def _verdict(m: float, margin: float) -> Verdict:
    if m > margin:
        return "holds"
    if m < -margin:
        return "fails"
    return "inconclusive"


# ---------------------------------------------------------------------------
# numerics on the circle
# ---------------------------------------------------------------------------


def circle_values_batch(coeffs: np.ndarray, r: float, count: int) -> np.ndarray:
    """Row-wise polynomial values on ``count`` equispaced points of ``|zeta| = r``."""
    a = np.atleast_2d(coeffs) * np.power(float(r), np.arange(coeffs.shape[-1]))
    n = a.shape[1]
    blocks = -(-n // count)
    folded = np.zeros((a.shape[0], blocks * count), dtype=complex)
    folded[:, :n] = a
    # aliasing z^(j + count) = z^j on the grid folds high powers onto low ones
    folded = folded.reshape(a.shape[0], blocks, count).sum(axis=1)
    return np.fft.ifft(folded, axis=1) * count


def circle_values(s: TruncatedSeries, r: float, count: int) -> np.ndarray:
    """``s(r e^{2 pi i j / count})`` for ``j = 0..count-1``, via one FFT."""
    return circle_values_batch(s.coeffs[None, :], r, count)[0]


@lru_cache(maxsize=64)
def _roots_of_unity(count: int) -> np.ndarray:
    z = np.exp(2j * np.pi * np.arange(count) / count)
    z.flags.writeable = False
    return z


def _circle(r: float, count: int) -> np.ndarray:
    return r * _roots_of_unity(count)


@lru_cache(maxsize=16)
def _distant_pairs(k: int) -> np.ndarray:
    # index pairs at least k/8 apart along the closed curve
    idx = np.arange(k)
    sep = np.abs(idx[:, None] - idx[None, :])
    mask = np.minimum(sep, k - sep) >= max(2, k // 8)
    mask.flags.writeable = False
    return mask


def _winding(values: np.ndarray) -> float:
    steps = np.angle(np.roll(values, -1) / values)
    return float(steps.sum() / (2 * np.pi))


@lru_cache(maxsize=8192)
def _polyroots(c_bytes: bytes) -> np.ndarray:
    # slices recur across radii in grid scans; roots are cached by coefficients
    return npoly.polyroots(np.frombuffer(c_bytes, dtype=complex))


def zeros_in_disc(s: TruncatedSeries, r: float, cfg: CriterionConfig):
    """Count zeros of the polynomial ``s`` in ``|zeta| <= r``.

    Returns ``(count, gap, witness)`` where ``gap`` is a signed distance-like
    margin (positive when no zero lies in the closed disc) and ``witness`` is
    the innermost zero when it is known.
    """
    c = np.trim_zeros(s.coeffs, "b")
    deg = c.size - 1
    if deg <= 0:
        return 0, math.inf, None
    if deg <= cfg.root_degree_cap:
        roots = _polyroots(c.tobytes())
        mods = np.abs(roots)
        j = int(np.argmin(mods))
        return int(np.sum(mods <= r)), float(mods[j] - r), complex(roots[j])
    count = max(8 * (deg + 1), cfg.boundary_grid)
    vals = circle_values(TruncatedSeries(c), r, count)
    turns = int(round(_winding(vals)))
    dvals = circle_values(TruncatedSeries(c).derivative(), r, count)
    # |p| / |p'| bounds how far the nearest zero sits from the sampled circle
    dist = float(np.min(np.abs(vals) / np.maximum(np.abs(dvals), 1e-300)))
    return turns, (dist if turns == 0 else -dist), None


def _check_slice(s: TruncatedSeries, r: float):
    if not 0 < r:
        raise ValueError("radius must be positive")
    if r >= 1:
        raise OutOfBallError(f"radius {r} is not inside the unit disc")
    if abs(s.coeffs[0]) > 1e-14:
        raise ValueError("slice series must vanish at the origin")
    if s.degree < 1:
        raise ValueError("slice series needs degree >= 1")


# ---------------------------------------------------------------------------
# one-variable criteria
# ---------------------------------------------------------------------------


def univalent_disc(phi_slice: TruncatedSeries, r: float, cfg: CriterionConfig = CriterionConfig()) -> CriterionReport:
    """Heuristic univalence test of a slice polynomial on ``|zeta| < r``.

    The derivative must have no zero in the closed disc, and the image of the
    circle must be a simple closed polyline winding once around the images of
    a coarse set of interior points.
    """
    _check_slice(phi_slice, r)
    count, gap, root = zeros_in_disc(phi_slice.derivative(), r, cfg)
    witness = {"derivative_zero_gap": gap, "derivative_zero": root}
    if count > 0:
        return CriterionReport("fails", min(gap, -11 * cfg.margin), witness, "univalent_disc")

    m = cfg.boundary_grid
    w = circle_values(phi_slice, r, m)
    ring = LinearRing(np.column_stack([w.real, w.imag]))
    simple = bool(ring.is_simple)

    rho = r * np.array([0.2, 0.5, 0.8])
    ang = np.exp(2j * np.pi * (np.arange(12) + 0.5) / 12)
    interior = np.concatenate([[0.0], (rho[:, None] * ang[None, :]).ravel()])
    targets = phi_slice(interior)
    rel = w[None, :] - targets[:, None]
    windings = np.angle(np.roll(rel, -1, axis=1) / rel).sum(axis=1) / (2 * np.pi)
    winding_ok = bool(np.all(np.abs(windings - 1) < 0.25))

    # closest approach of index-distant boundary points, on a subsampled curve
    stride = max(1, m // 180)
    ws = w[::stride]
    k = ws.size
    dist = np.abs(ws[:, None] - ws[None, :])
    diameter = float(dist.max()) or 1.0
    rel_sep = float(dist[_distant_pairs(k)].min() / diameter)

    witness.update(boundary_simple=simple, winding_ok=winding_ok, separation=rel_sep)
    if not (simple and winding_ok):
        return CriterionReport("fails", -max(rel_sep, 11 * cfg.margin), witness, "univalent_disc")
    if gap <= 10 * cfg.margin:
        return CriterionReport("inconclusive", gap, witness, "univalent_disc")
    return CriterionReport("holds", gap, witness, "univalent_disc")


def _require_nonvanishing(s: TruncatedSeries, r: float, cfg: CriterionConfig, what: str):
    count, gap, root = zeros_in_disc(s, r, cfg)
    if count > 0:
        raise DegeneracyError(f"{what} vanishes in the disc |zeta| <= {r}", witness=root)


def starlike_disc(phi_slice: TruncatedSeries, r: float, cfg: CriterionConfig = CriterionConfig()) -> CriterionReport:
    """``min Re(zeta f'/f)`` and ``min Re(f/(zeta f'))`` on ``|zeta| = r``; the smaller is the margin.

    Raises :class:`DegeneracyError` when ``f(zeta)/zeta`` vanishes in the disc.
    """
    _check_slice(phi_slice, r)
    fp = phi_slice.derivative()
    f_over_z = TruncatedSeries(phi_slice.coeffs[1:])
    _require_nonvanishing(f_over_z, r, cfg, "f(zeta)/zeta")
    # a zero of f' inside puts a zero of zeta f'/f inside, so the boundary
    # minimum of its real part is already <= 0; only the reciprocal is lost
    fp_zeros, _, _ = zeros_in_disc(fp, r, cfg)
    m = cfg.boundary_grid
    z = _circle(r, m)
    fz = circle_values(f_over_z, r, m)
    fpz = circle_values(fp, r, m)
    q = fpz / fz  # zeta f'/f
    re1 = np.real(q)
    re2 = np.real(1.0 / q) if fp_zeros == 0 else np.full(m, np.inf)
    j1, j2 = int(np.argmin(re1)), int(np.argmin(re2))
    margin = float(min(re1[j1], re2[j2]))
    worst = j1 if re1[j1] <= re2[j2] else j2
    witness = {"zeta": complex(z[worst]), "min_re_zfp_over_f": float(re1[j1]), "min_re_f_over_zfp": float(re2[j2])}
    return CriterionReport(_verdict(margin, cfg.margin), margin, witness, "starlike_disc")


def convex_disc(phi_slice: TruncatedSeries, r: float, cfg: CriterionConfig = CriterionConfig()) -> CriterionReport:
    """``min Re(1 + zeta f''/f')`` on ``|zeta| = r``."""
    _check_slice(phi_slice, r)
    fp = phi_slice.derivative()
    _require_nonvanishing(fp, r, cfg, "f'")
    m = cfg.boundary_grid
    z = _circle(r, m)
    fpz = circle_values(fp, r, m)
    if fp.degree >= 1:
        fppz = circle_values(fp.derivative(), r, m)
    else:
        fppz = np.zeros(m, dtype=complex)
    vals = np.real(1 + z * fppz / fpz)
    j = int(np.argmin(vals))
    margin = float(vals[j])
    return CriterionReport(_verdict(margin, cfg.margin), margin, {"zeta": complex(z[j])}, "convex_disc")


_SLICE_TESTS = {
    "univalent": univalent_disc,
    "starlike": starlike_disc,
    "quasiconvexB": convex_disc,
}


# ---------------------------------------------------------------------------
# ball criteria
# ---------------------------------------------------------------------------


def ball_criterion(
    F: RadialMap, r: float, kind: BallKind, samples, cfg: CriterionConfig = CriterionConfig()
) -> CriterionReport:
    """Conjunction of the slice test ``kind`` over the sampled unit directions.

    A slice whose derivative or quotient degenerates inside the disc fails
    (the map is not locally biholomorphic there). The reported margin is the
    worst slice's.
    """
    if kind not in _SLICE_TESTS:
        raise ValueError(f"unknown criterion kind {kind!r}")
    if kind == "quasiconvexB" and not F.normalized:
        raise ValueError("quasi-convexity of type B is defined for f(0) = 1")
    test = _SLICE_TESTS[kind]
    samples = list(samples)
    if kind != "univalent" and samples:
        return _ball_batched(F, r, kind, samples, cfg)
    worst = None
    verdicts = set()
    for i, u in enumerate(samples):
        s = slice_series(F, u, cfg.degree)
        try:
            rep = test(s, r, cfg)
        except DegeneracyError as exc:
            rep = CriterionReport("fails", -math.inf, {"degenerate": str(exc), "point": exc.witness})
        verdicts.add(rep.verdict)
        if worst is None or rep.margin_observed < worst[1].margin_observed:
            worst = (i, rep, np.asarray(u))
    if worst is None:
        raise ValueError("no samples given")
    verdict: Verdict = "fails" if "fails" in verdicts else ("inconclusive" if "inconclusive" in verdicts else "holds")
    i, rep, u = worst
    witness = {"sample_index": i, "u": u.tolist(), **rep.witness}
    return CriterionReport(verdict, rep.margin_observed, witness, f"ball_{kind}")


def _batched_margins(C: np.ndarray, r: float, kind: BallKind, cfg: CriterionConfig) -> np.ndarray:
    """Per-row margins of the starlike or convex slice test; ``-inf`` marks a degenerate slice.

    Row ``i`` of ``C`` holds slice coefficients; the arithmetic mirrors
    :func:`starlike_disc` and :func:`convex_disc`.
    """
    m = cfg.boundary_grid
    k = np.arange(1, C.shape[1])
    fp = C[:, 1:] * k
    fp_zero = np.array([zeros_in_disc(TruncatedSeries(row), r, cfg)[0] > 0 for row in fp])
    fpz = circle_values_batch(fp, r, m)
    out = np.empty(C.shape[0])
    if kind == "starlike":
        fz_coeffs = C[:, 1:]
        degenerate = np.array([zeros_in_disc(TruncatedSeries(row), r, cfg)[0] > 0 for row in fz_coeffs])
        with np.errstate(divide="ignore", invalid="ignore"):
            q = fpz / circle_values_batch(fz_coeffs, r, m)
            re1 = np.real(q).min(axis=1)
            re2 = np.where(fp_zero, np.inf, np.real(1.0 / q).min(axis=1))
        out = np.minimum(re1, re2)
    else:
        degenerate = fp_zero
        if fp.shape[1] > 1:
            fpp = fp[:, 1:] * np.arange(1, fp.shape[1])
            fppz = circle_values_batch(fpp, r, m)
        else:
            fppz = np.zeros_like(fpz)
        z = _circle(r, m)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.real(1 + z * fppz / fpz).min(axis=1)
    out[degenerate] = -math.inf
    return out


def _ball_batched(F: RadialMap, r: float, kind: BallKind, samples, cfg: CriterionConfig) -> CriterionReport:
    slices = [slice_series(F, u, cfg.degree) for u in samples]
    s0 = slices[0]
    _check_slice(s0, r)
    C = np.stack([s.coeffs for s in slices])
    margins = _batched_margins(C, r, kind, cfg)
    i = int(np.argmin(margins))
    try:
        rep = _SLICE_TESTS[kind](slices[i], r, cfg)
    except DegeneracyError as exc:
        rep = CriterionReport("fails", -math.inf, {"degenerate": str(exc), "point": exc.witness})
    lo = float(margins.min())
    verdict = _verdict(lo, cfg.margin)
    witness = {"sample_index": i, "u": np.asarray(samples[i]).tolist(), **rep.witness}
    return CriterionReport(verdict, rep.margin_observed, witness, f"ball_{kind}")


def starlike_ball_general(
    F_poly: PolyMap, r: float, points, cfg: CriterionConfig = CriterionConfig(), p: float = 2.0
) -> CriterionReport:
    """Direct Hilbert-ball check ``min Re <[DF(x)]^{-1} F(x), x/||x||> > 0``.

    Uses the sampled ``points`` with ``0 < ||x|| < r``; no radial structure is
    assumed.
    """
    if p != 2:
        raise ValueError("the direct starlikeness check uses the Euclidean inner product (p = 2)")
    if not 0 < r <= 1:
        raise OutOfBallError("radius must lie in (0, 1]")
    x = np.asarray(points, dtype=complex)
    nx = lp_norm(x, 2)
    keep = (nx > 0) & (nx < r)
    x, nx = x[keep], nx[keep]
    if x.size == 0:
        raise ValueError("no sample points inside the ball")
    J = F_poly.jacobian(x)
    Fx = F_poly(x)
    try:
        w = np.linalg.solve(J, Fx[..., None])[..., 0]
    except np.linalg.LinAlgError:
        w = None
    if w is not None:
        resid = np.linalg.norm(np.einsum("kij,kj->ki", J, w) - Fx, axis=1)
        scale = np.linalg.norm(J, axis=(1, 2)) * np.linalg.norm(w, axis=1) + np.linalg.norm(Fx, axis=1)
        bad = ~(resid <= 1e-10 * np.maximum(scale, 1e-300))
    if w is None or bad.any():
        k = 0 if w is None else int(np.argmax(bad))
        raise DegeneracyError("DF(x) is numerically singular at a sample point", witness=x[k])
    vals = np.real(np.sum(w * np.conj(x), axis=1)) / nx
    j = int(np.argmin(vals))
    margin = float(vals[j])
    return CriterionReport(_verdict(margin, cfg.margin), margin, {"x": x[j].tolist()}, "starlike_ball_general")


@dataclass
class AlexanderReport:
    quasiconvex: CriterionReport
    starlike: CriterionReport
    r: float

    @property
    def decisive(self) -> bool:
        return "inconclusive" not in (self.quasiconvex.verdict, self.starlike.verdict)

    @property
    def agree(self) -> bool:
        return self.quasiconvex.verdict == self.starlike.verdict


def alexander_check(F: RadialMap, r: float, samples, cfg: CriterionConfig = CriterionConfig()) -> AlexanderReport:
    """Quasi-convexity of ``F`` next to starlikeness of ``G(x) = DF(x) x`` at radius ``r``."""
    if not F.normalized:
        raise ValueError("the Alexander correspondence is stated for f(0) = 1")
    samples = list(samples)
    qc = ball_criterion(F, r, "quasiconvexB", samples, cfg)
    st = ball_criterion(alexander_transform(F), r, "starlike", samples, cfg)
    return AlexanderReport(qc, st, r)
