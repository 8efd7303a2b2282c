"""Complex l^p spaces of finite dimension.

Vectors are plain 1-D complex numpy arrays. The support functional of a
nonzero ``x`` is a linear form ``l(y) = sum_j w_j y_j`` of dual norm one with
``l(x) = ||x||``; where that form is not unique (p = 1 or p = inf) a fixed
canonical choice is returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, UndefinedSupport

DEFAULT_P = 2.0
DEFAULT_N = 3


@dataclass(frozen=True)
class NormModel:
    p: float = DEFAULT_P
    n: int = DEFAULT_N

    def __post_init__(self):
        p = float(self.p)
        if not p >= 1:
            raise ValueError(f"p must lie in [1, inf], got {self.p}")
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"dimension must be a positive integer, got {self.n}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "n", int(self.n))

    @property
    def dual_p(self) -> float:
        if self.p == 1:
            return math.inf
        if math.isinf(self.p):
            return 1.0
        return self.p / (self.p - 1)

    def vector(self, entries) -> np.ndarray:
        x = np.asarray(entries, dtype=complex).ravel()
        if x.size != self.n:
            raise DimensionMismatch(f"expected {self.n} entries, got {x.size}")
        return x

    def basis(self, j: int) -> np.ndarray:
        e = np.zeros(self.n, dtype=complex)
        e[j] = 1.0
        return e

    def norm(self, x) -> float:
        return norm(x, self)


def lp_norm(x, p: float, axis: int = -1):
    """l^p norm along ``axis``; works on stacked vectors."""
    a = np.abs(np.asarray(x, dtype=complex))
    if math.isinf(p):
        return a.max(axis=axis)
    if p == 1:
        return a.sum(axis=axis)
    if p == 2:
        return np.sqrt((a * a).sum(axis=axis))
    # scale by the max modulus to avoid overflow in a**p
    m = a.max(axis=axis, keepdims=True)
    safe = np.where(m > 0, m, 1.0)
    return (np.squeeze(safe, axis=axis) * ((a / safe) ** p).sum(axis=axis) ** (1.0 / p))


def norm(x, model: NormModel) -> float:
    x = np.asarray(x, dtype=complex)
    if x.shape[-1] != model.n:
        raise DimensionMismatch(f"vector of length {x.shape[-1]} in a dimension-{model.n} model")
    return float(lp_norm(x, model.p))


@dataclass(frozen=True, eq=False)
class SupportFunctional:
    """Linear form ``y -> sum_j coeffs[j] * y[j]`` (no conjugation)."""

    coeffs: np.ndarray

    def __post_init__(self):
        w = np.array(self.coeffs, dtype=complex).ravel()
        w.flags.writeable = False
        object.__setattr__(self, "coeffs", w)

    def __call__(self, y):
        return np.tensordot(np.asarray(y, dtype=complex), self.coeffs, axes=([-1], [0]))[()]

    def dual_norm(self, model: NormModel) -> float:
        return float(lp_norm(self.coeffs, model.dual_p))

    def __repr__(self):
        return f"SupportFunctional({np.array2string(self.coeffs, precision=6)})"


def support_functional(x, model: NormModel, index: int | None = None) -> SupportFunctional:
    """Canonical element of T(x).

    For ``1 < p < inf`` the functional is unique. For ``p = 1`` it is zero off
    the support of ``x``. For ``p = inf`` it sits on the smallest index of
    maximal modulus, or on ``index`` when that index also attains the max.
    """
    x = model.vector(x)
    nx = norm(x, model)
    if nx == 0:
        raise UndefinedSupport("T(0) is not defined")
    a = np.abs(x)
    w = np.zeros(model.n, dtype=complex)
    nz = a > 0
    # conj(x_j)/|x_j| via the angle, which stays finite for subnormal entries
    phase = np.exp(-1j * np.angle(x))
    if model.p == 1:
        w[nz] = phase[nz]
    elif math.isinf(model.p):
        if index is None:
            j = int(np.argmax(a))
        else:
            if not math.isclose(a[index], nx, rel_tol=1e-12):
                raise ValueError(f"index {index} does not attain the max modulus")
            j = index
        w[j] = phase[j]
    else:
        p = model.p
        # w_j = ||x||^{1-p} |x_j|^{p-2} conj(x_j), written scale-free
        t = a[nz] / nx
        w[nz] = t ** (p - 1) * phase[nz]
    return SupportFunctional(w)


def sphere_sample(model: NormModel, count: int, seed: int = 0) -> list[np.ndarray]:
    """Seeded unit vectors: the coordinate basis first, then normalized complex Gaussians."""
    if count < 1:
        raise ValueError("count must be >= 1")
    out = [model.basis(j) for j in range(min(count, model.n))]
    extra = count - len(out)
    if extra > 0:
        rng = np.random.default_rng(seed)
        g = rng.standard_normal((extra, model.n)) + 1j * rng.standard_normal((extra, model.n))
        g /= lp_norm(g, model.p)[:, None]
        out.extend(g)
    return out


def sphere_grid(model: NormModel, moduli_steps: int, phase_steps: int) -> np.ndarray:
    """Structured points on the unit sphere of a two-dimensional model.

    Moduli ``(cos t, sin t)`` rescaled onto the l^p sphere, times a full phase
    grid on both coordinates. Returns an array of shape ``(k, 2)``.
    """
    if model.n != 2:
        raise DimensionMismatch("sphere_grid is implemented for n = 2")
    t = np.linspace(0.0, np.pi / 2, moduli_steps)
    mod = np.stack([np.cos(t), np.sin(t)], axis=1)
    mod /= lp_norm(mod, model.p)[:, None]
    ph = np.exp(2j * np.pi * np.arange(phase_steps) / phase_steps)
    pts = mod[:, None, None, :] * np.stack(np.broadcast_arrays(ph[:, None], ph[None, :]), axis=-1)[None]
    return pts.reshape(-1, 2)


def with_directions(samples, *directions) -> list[np.ndarray]:
    """Append ``directions`` to ``samples`` unless already present."""
    out = list(samples)
    for d in directions:
        d = np.asarray(d, dtype=complex)
        if not any(np.array_equal(d, s) for s in out):
            out.append(d)
    return out
