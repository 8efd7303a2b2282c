"""Radial holomorphic maps ``F(x) = f(x) x`` on l^p balls.

The scalar field ``f`` is stored either as a :class:`Profile`
``f(x) = phi(l(x))`` for a one-variable series ``phi`` and a linear form
``l`` of dual norm at most one, or as a sparse multivariate :class:`Poly`.
Everything geometric about ``F`` is read off the one-variable slices
``f_u(zeta) = zeta f(zeta u)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from dataclasses import field as dc_field
from typing import Union

import numpy as np

from . import power_series as ps
from .errors import (
    DegeneracyError,
    DimensionMismatch,
    NonUnitVector,
    SpecParseError,
    TruncationOverflow,
)
from .norm_models import NormModel, SupportFunctional, norm, support_functional
from .power_series import TruncatedSeries

NORMALIZED_TOL = 1e-12
UNIT_TOL = 1e-10
DEGENERACY_TOL = 1e-14
DEFAULT_COMPOSE_CAP = 256
SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# scalar fields
# ---------------------------------------------------------------------------


class Poly:
    """Sparse polynomial in ``n`` complex variables.

    ``terms`` maps exponent tuples to coefficients. Zero coefficients are
    dropped on construction.
    """

    def __init__(self, n: int, terms=None):
        self.n = int(n)
        clean = {}
        for e, c in dict(terms or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != self.n or min(e, default=0) < 0:
                raise ValueError(f"bad exponent {e} for {self.n} variables")
            c = complex(c)
            if c != 0:
                clean[e] = clean.get(e, 0) + c
        self.terms = {e: c for e, c in sorted(clean.items()) if c != 0}

    @classmethod
    def constant(cls, n, c=1.0):
        return cls(n, {(0,) * n: c})

    @classmethod
    def linear(cls, coeffs):
        coeffs = np.asarray(coeffs, dtype=complex)
        n = coeffs.size
        return cls(n, {tuple(int(i == j) for i in range(n)): c for j, c in enumerate(coeffs)})

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def homogeneous_part(self, k: int) -> "Poly":
        return Poly(self.n, {e: c for e, c in self.terms.items() if sum(e) == k})

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(self.n, out)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly(self.n, {e: c * complex(other) for e, c in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly.constant(self.n)
        for _ in range(k):
            out = out * self
        return out

    def truncated(self, degree: int) -> "Poly":
        return Poly(self.n, {e: c for e, c in self.terms.items() if sum(e) <= degree})

    def _exps(self):
        if not self.terms:
            return np.zeros((0, self.n), dtype=int), np.zeros(0, dtype=complex)
        return np.array(list(self.terms), dtype=int), np.array(list(self.terms.values()))

    def __call__(self, x):
        x = np.asarray(x, dtype=complex)
        e, c = self._exps()
        mons = np.prod(x[..., None, :] ** e, axis=-1)
        return (mons @ c)[()] if c.size else np.zeros(x.shape[:-1], dtype=complex)[()]

    def euler(self, x, order: int = 1):
        """``sum_k k(k-1)...(k-order+1) p_k(x)`` over homogeneous parts ``p_k``.

        ``order=1`` gives ``Dp(x)x`` and ``order=2`` gives ``D^2p(x)(x, x)``.
        """
        x = np.asarray(x, dtype=complex)
        e, c = self._exps()
        k = e.sum(axis=1)
        w = np.ones_like(k, dtype=float)
        for j in range(order):
            w = w * (k - j)
        mons = np.prod(x[..., None, :] ** e, axis=-1)
        return (mons @ (c * w))[()] if c.size else np.zeros(x.shape[:-1], dtype=complex)[()]

    def gradient(self, x):
        """Holomorphic gradient ``(dp/dx_j)(x)``; contract with ``xi`` for ``Dp(x)xi``."""
        x = np.asarray(x, dtype=complex)
        out = np.zeros(x.shape, dtype=complex)
        for e, c in self.terms.items():
            for j in range(self.n):
                if e[j]:
                    ej = list(e)
                    ej[j] -= 1
                    out[..., j] += c * e[j] * np.prod(x ** np.array(ej), axis=-1)
        return out

    def graded_at(self, u, degree: int) -> np.ndarray:
        """Values ``p_k(u)`` of the homogeneous parts for ``k = 0..degree``."""
        u = np.asarray(u, dtype=complex)
        out = np.zeros(degree + 1, dtype=complex)
        for e, c in self.terms.items():
            k = sum(e)
            if k <= degree:
                out[k] += c * np.prod(u ** np.array(e))
        return out

    def __eq__(self, other):
        return isinstance(other, Poly) and self.n == other.n and self.terms == other.terms

    def __repr__(self):
        return f"Poly(n={self.n}, terms={self.terms})"


@dataclass(frozen=True, eq=False)
class Profile:
    """``f(x) = phi(l(x))``; ``direction`` is the unit vector ``l`` was built from, if any."""

    phi: TruncatedSeries
    functional: SupportFunctional
    direction: np.ndarray | None = None

    @property
    def degree(self) -> int:
        return self.phi.degree

    @property
    def dphi(self) -> TruncatedSeries:
        return self.phi.derivative() if self.phi.degree else TruncatedSeries([0.0])

    @property
    def d2phi(self) -> TruncatedSeries:
        d = self.dphi
        return d.derivative() if d.degree else TruncatedSeries([0.0])


ScalarField = Union[Profile, Poly]


@dataclass(frozen=True, eq=False)
class RadialMap:
    """``F(x) = f(x) x`` on the unit ball of ``model``."""

    field: ScalarField
    model: NormModel = dc_field(default_factory=NormModel)

    def __post_init__(self):
        n = self.field.n if isinstance(self.field, Poly) else self.field.functional.coeffs.size
        if n != self.model.n:
            raise DimensionMismatch(f"scalar field in {n} variables on a dimension-{self.model.n} model")
        if isinstance(self.field, Profile):
            dn = self.field.functional.dual_norm(self.model)
            if dn > 1 + 1e-12:
                raise ValueError(f"profile functional has dual norm {dn} > 1")

    @property
    def is_profile(self) -> bool:
        return isinstance(self.field, Profile)

    @property
    def degree(self) -> int:
        return self.field.degree

    @property
    def f0(self) -> complex:
        if self.is_profile:
            return complex(self.field.phi[0])
        return complex(self.field.graded_at(np.zeros(self.model.n), 0)[0])

    @property
    def normalized(self) -> bool:
        return abs(self.f0 - 1) <= NORMALIZED_TOL

    def f(self, x):
        if self.is_profile:
            return self.field.phi(self.field.functional(x))
        return self.field(x)

    def __call__(self, x):
        x = np.asarray(x, dtype=complex)
        return np.asarray(self.f(x))[..., None] * x

    def df(self, x, xi):
        """``Df(x) xi``."""
        if self.is_profile:
            l = self.field.functional
            return self.field.dphi(l(x)) * l(xi)
        return np.sum(self.field.gradient(x) * np.asarray(xi, dtype=complex), axis=-1)[()]

    def df_radial(self, x):
        """``Df(x) x``."""
        if self.is_profile:
            t = self.field.functional(x)
            return self.field.dphi(t) * t
        return self.field.euler(x, 1)

    def d2f_radial(self, x):
        """``D^2 f(x)(x, x)``."""
        if self.is_profile:
            t = self.field.functional(x)
            return self.field.d2phi(t) * t * t
        return self.field.euler(x, 2)

    def homogeneous_values(self, u, degree: int) -> np.ndarray:
        """``Q_k(u)`` for ``k = 0..degree`` where ``f = sum Q_k``."""
        if self.is_profile:
            d = min(degree, self.field.phi.degree)
            t = complex(self.field.functional(u))
            return self.field.phi.coeffs[: d + 1] * np.power(t, np.arange(d + 1))
        return self.field.graded_at(u, degree)


# ---------------------------------------------------------------------------
# Schwarz powers
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SchwarzPower:
    """``V(x) = l_v(x)**(m-1) x``: a Schwarz map with a zero of order ``m`` at 0."""

    v: np.ndarray
    l_v: SupportFunctional
    m: int

    @classmethod
    def build(cls, model: NormModel, v, m: int) -> "SchwarzPower":
        if m < 1:
            raise ValueError("order m must be >= 1")
        v = _require_unit(v, model)
        return cls(v, support_functional(v, model), int(m))

    def __call__(self, x):
        x = np.asarray(x, dtype=complex)
        return np.asarray(self.l_v(x) ** (self.m - 1))[..., None] * x


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def _require_unit(u, model: NormModel) -> np.ndarray:
    u = model.vector(u)
    nu = norm(u, model)
    if abs(nu - 1) > UNIT_TOL:
        raise NonUnitVector(f"expected a unit vector, got norm {nu!r}")
    return u


def slice_series(F: RadialMap, u, degree: int = ps.DEFAULT_DEGREE) -> TruncatedSeries:
    """Series of ``zeta f(zeta u)`` for unit ``u``.

    A profile of degree ``d`` determines the slice only through ``zeta**(d+1)``,
    so the result has degree ``min(degree, d + 1)``; polynomial fields are exact.
    """
    u = _require_unit(u, F.model)
    if F.is_profile:
        c = complex(F.field.functional(u))
        s = F.field.phi.scale_argument(c).shift(1)
        return s.truncate(min(degree, s.degree))
    q = F.field.graded_at(u, max(degree - 1, 0))
    return TruncatedSeries.from_coeffs(np.concatenate([[0.0], q]), degree)


def df_action(F: RadialMap, x, xi) -> np.ndarray:
    """``DF(x) xi = f(x) xi + (Df(x) xi) x``."""
    x = F.model.vector(x)
    xi = F.model.vector(xi)
    return F.f(x) * xi + F.df(x, xi) * x


def df_matrix(F: RadialMap, x) -> np.ndarray:
    """Matrix of ``DF(x) = f(x) I + x (grad f)^T``."""
    x = F.model.vector(x)
    if F.is_profile:
        grad = F.field.dphi(F.field.functional(x)) * F.field.functional.coeffs
    else:
        grad = F.field.gradient(x)
    return F.f(x) * np.eye(F.model.n, dtype=complex) + np.outer(x, grad)


def inverse_transfer_scalar(F: RadialMap, x) -> complex:
    """The ``c`` with ``[DF(x)]^{-1} F(x) = c x``, namely ``f/(f + Df(x)x)``."""
    x = F.model.vector(x)
    fx = complex(F.f(x))
    den = fx + complex(F.df_radial(x))
    if abs(den) <= DEGENERACY_TOL:
        raise DegeneracyError("f(x) + Df(x)x vanishes: DF(x) is singular on this ray", witness=x)
    return fx / den


def quasiconvex_scalar(F: RadialMap, x) -> complex:
    """The ``c`` with ``[DF(x)]^{-1}(D^2F(x)(x,x) + DF(x)x) = c x``."""
    x = F.model.vector(x)
    fx = complex(F.f(x))
    d1 = complex(F.df_radial(x))
    den = fx + d1
    if abs(den) <= DEGENERACY_TOL:
        raise DegeneracyError("f(x) + Df(x)x vanishes: DF(x) is singular on this ray", witness=x)
    return (2 * d1 + complex(F.d2f_radial(x))) / den + 1


def homogeneous_sup(F: RadialMap, s: int, samples) -> float:
    """``max_u ||P_s(u)|| = max_u |Q_{s-1}(u)|`` over unit ``samples``."""
    if s < 1:
        raise ValueError("s must be >= 1")
    if F.is_profile and s - 1 > F.field.phi.degree:
        raise TruncationOverflow(f"P_{s} needs profile degree >= {s - 1}, have {F.field.phi.degree}")
    return max((abs(F.homogeneous_values(u, s - 1)[s - 1]) for u in samples), default=0.0)


def alexander_transform(F: RadialMap) -> RadialMap:
    """``G(x) = DF(x) x``, i.e. ``g = f + Df(x)x``; slices satisfy ``g_u = zeta f_u'``."""
    if F.is_profile:
        k = np.arange(F.field.phi.degree + 1)
        psi = TruncatedSeries(F.field.phi.coeffs * (k + 1))
        return RadialMap(Profile(psi, F.field.functional, F.field.direction), F.model)
    terms = {e: c * (1 + sum(e)) for e, c in F.field.terms.items()}
    return RadialMap(Poly(F.model.n, terms), F.model)


def profile_to_poly(F: RadialMap, degree: int | None = None) -> Poly:
    """Expand ``phi(l(x))`` into a polynomial through total degree ``degree``."""
    if not F.is_profile:
        return F.field
    d = F.field.phi.degree if degree is None else min(degree, F.field.phi.degree)
    lin = Poly.linear(F.field.functional.coeffs)
    out = Poly(F.model.n)
    power = Poly.constant(F.model.n)
    for k in range(d + 1):
        out = out + power * complex(F.field.phi[k])
        power = power * lin
    return out


def schwarz_compose(F: RadialMap, V: SchwarzPower, cap: int = DEFAULT_COMPOSE_CAP) -> RadialMap:
    """``G = F o V``.

    With ``F`` a profile along ``l_v`` itself, ``g(x) = phi(t**m) t**(m-1)`` at
    ``t = l_v(x)``, which stays a profile. Otherwise the field is expanded as a
    polynomial and ``g(x) = f(l_v(x)**(m-1) x) l_v(x)**(m-1)``.
    """
    m = V.m
    if m == 1:
        return F
    if F.is_profile and np.allclose(F.field.functional.coeffs, V.l_v.coeffs, atol=1e-15, rtol=0):
        d = F.field.phi.degree
        new_deg = m * d + m - 1
        if new_deg > cap:
            raise TruncationOverflow(f"composition needs degree {new_deg} > cap {cap}")
        psi = np.zeros(new_deg + 1, dtype=complex)
        psi[m - 1 :: m] = F.field.phi.coeffs
        return RadialMap(Profile(TruncatedSeries(psi), V.l_v, V.v), F.model)
    f = profile_to_poly(F)
    if (m - 1) + m * f.degree > cap:
        raise TruncationOverflow(f"composition needs degree {(m - 1) + m * f.degree} > cap {cap}")
    lv = Poly.linear(V.l_v.coeffs)
    scale = lv ** (m - 1)
    out = Poly(F.model.n)
    for k in range(f.degree + 1):
        out = out + f.homogeneous_part(k) * (scale ** k)
    return RadialMap(out * scale, F.model)


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def profile_map(model: NormModel, v, phi: TruncatedSeries) -> RadialMap:
    """``F(x) = phi(l_v(x)) x`` for the canonical support functional of unit ``v``."""
    v = _require_unit(v, model)
    return RadialMap(Profile(phi, support_functional(v, model), v), model)


def koebe_map(model: NormModel, v, degree: int = ps.DEFAULT_DEGREE) -> RadialMap:
    """``F(x) = x / (1 - l_v(x))**2``."""
    return profile_map(model, v, ps.koebe_profile(degree))


def identity_map(model: NormModel) -> RadialMap:
    return RadialMap(Poly.constant(model.n), model)


def poly_map(model: NormModel, terms) -> RadialMap:
    return RadialMap(Poly(model.n, terms), model)


@dataclass(frozen=True, eq=False)
class PolyMap:
    """A general polynomial map ``C^n -> C^n`` given componentwise."""

    components: tuple

    @property
    def n(self) -> int:
        return self.components[0].n

    def __call__(self, x):
        return np.stack([np.asarray(c(x)) for c in self.components], axis=-1)

    def jacobian(self, x):
        x = np.asarray(x, dtype=complex)
        return np.stack([c.gradient(x) for c in self.components], axis=-2)


def G_a(a: complex) -> PolyMap:
    """``(z1 + 2a z2**2, z2)``."""
    return PolyMap((Poly(2, {(1, 0): 1, (0, 2): 2 * a}), Poly(2, {(0, 1): 1})))


def H_a(a: complex) -> PolyMap:
    """``(z1 + a z1 z2, z2)``."""
    return PolyMap((Poly(2, {(1, 0): 1, (1, 1): a}), Poly(2, {(0, 1): 1})))


def F_a(a: complex) -> PolyMap:
    """``(z1 + a z2**2, z2)``, normalized biholomorphic on C^2."""
    return PolyMap((Poly(2, {(1, 0): 1, (0, 2): a}), Poly(2, {(0, 1): 1})))


def radial_as_polymap(F: RadialMap, degree: int | None = None) -> PolyMap:
    """The components ``f(x) x_j`` of a radial map as polynomials."""
    f = profile_to_poly(F, degree)
    n = F.model.n
    return PolyMap(tuple(f * Poly.linear(np.eye(n)[j]) for j in range(n)))


# ---------------------------------------------------------------------------
# text serialization
# ---------------------------------------------------------------------------


def _fmt(x: float) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return float(x).hex()


def _fmt_c(z: complex) -> str:
    return f"{_fmt(z.real)}:{_fmt(z.imag)}"


def _parse_float(tok: str) -> float:
    t = tok.strip()
    if t.lower().lstrip("+-").startswith("0x"):
        return float.fromhex(t)
    return float(t)


def _parse_complex(tok: str) -> complex:
    if ":" in tok:
        re_, im_ = tok.split(":", 1)
        return complex(_parse_float(re_), _parse_float(im_))
    return complex(tok.replace(" ", ""))


def dumps(F: RadialMap) -> str:
    """Versioned key-value text with hex floats; ``loads(dumps(F))`` is exact."""
    lines = [
        f"schema_version = {SCHEMA_VERSION}",
        f"p = {_fmt(F.model.p)}",
        f"n = {F.model.n}",
    ]
    if F.is_profile:
        lines.append("field = profile")
        lines.append("phi = " + " ".join(_fmt_c(c) for c in F.field.phi.coeffs))
        lines.append("functional = " + " ".join(_fmt_c(c) for c in F.field.functional.coeffs))
        if F.field.direction is not None:
            lines.append("direction = " + " ".join(_fmt_c(c) for c in F.field.direction))
    else:
        lines.append("field = poly")
        for e, c in F.field.terms.items():
            lines.append("term = " + " ".join(str(k) for k in e) + " ; " + _fmt_c(c))
    return "\n".join(lines) + "\n"


def loads(text: str) -> RadialMap:
    data: dict[str, list[tuple[str, int, int]]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if "=" not in line:
            raise SpecParseError("expected 'key = value'", lineno, len(raw) - len(raw.lstrip()) + 1)
        key, val = line.split("=", 1)
        col = line.index("=") + 2 + (len(val) - len(val.lstrip()))
        data.setdefault(key.strip(), []).append((val.strip(), lineno, col))

    def one(key):
        if key not in data:
            raise SpecParseError(f"missing key {key!r}", 1, 1)
        return data[key][-1]

    def convert(key, fn):
        val, ln, col = one(key)
        try:
            return fn(val)
        except (ValueError, TypeError) as exc:
            raise SpecParseError(f"bad value for {key!r}: {exc}", ln, col) from None

    version = convert("schema_version", int)
    if version != SCHEMA_VERSION:
        val, ln, col = one("schema_version")
        raise SpecParseError(f"unsupported schema_version {version}", ln, col)
    model = NormModel(convert("p", _parse_float), convert("n", int))
    kind = convert("field", str)
    vec = lambda s: np.array([_parse_complex(t) for t in s.split()], dtype=complex)
    if kind == "profile":
        phi = TruncatedSeries(convert("phi", vec))
        l = SupportFunctional(convert("functional", vec))
        direction = convert("direction", vec) if "direction" in data else None
        return RadialMap(Profile(phi, l, direction), model)
    if kind == "poly":
        terms = {}
        for val, ln, col in data.get("term", []):
            try:
                exps, coef = val.split(";")
                terms[tuple(int(k) for k in exps.split())] = _parse_complex(coef.strip())
            except ValueError as exc:
                raise SpecParseError(f"bad term: {exc}", ln, col) from None
        try:
            return RadialMap(Poly(model.n, terms), model)
        except ValueError as exc:
            raise SpecParseError(str(exc), data["term"][0][1] if "term" in data else 1, 1) from None
    val, ln, col = one("field")
    raise SpecParseError(f"unknown field kind {kind!r}", ln, col)
