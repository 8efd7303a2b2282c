"""Seeded map families shared by the unit and acceptance tests."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from radialmaps import NormModel, koebe_map, profile_map, sphere_sample
from radialmaps.norm_models import with_directions
from radialmaps.power_series import TruncatedSeries

MODEL = NormModel(2.0, 3)
V = MODEL.basis(0)
SAMPLE_COUNT = 64
STRESS_SEED = 20240601
STRESS_SIZE = 50
STRESS_DEGREE = 7  # profile degree, so slices have degree 8

# h'(zeta) = 1 + sum_k b_k zeta^k with sum |b_k| = 1 and k >= 2, so
# (1 - t^2)|h'| <= 1 - t^4 away from the origin and the seminorm is 1.
BLOCH_B = {2: 0.3, 3: -0.2j, 4: 0.2, 5: 0.1 + 0.1j, 7: -0.2}


def samples(model: NormModel = MODEL, count: int = SAMPLE_COUNT, seed: int = 0, v=None):
    v = model.basis(0) if v is None else v
    return with_directions(sphere_sample(model, count, seed), v, -v)


@lru_cache(maxsize=None)
def koebe(degree: int = 32, model: NormModel = MODEL):
    return koebe_map(model, model.basis(0), degree)


def stress_profiles(count: int = STRESS_SIZE, seed: int = STRESS_SEED) -> list[TruncatedSeries]:
    """Normalized profiles with ``sum (k+1)|phi_k| = rho`` and ``rho`` spread over [0.4, 1.3].

    For ``rho <= 1`` every slice is starlike on the unit disc; larger ``rho``
    produces maps that the univalence gate is expected to reject.
    """
    rng = np.random.default_rng(seed)
    out = []
    for j in range(count):
        rho = 0.4 + 0.9 * j / max(count - 1, 1)
        c = rng.normal(size=STRESS_DEGREE) + 1j * rng.normal(size=STRESS_DEGREE)
        c *= 0.7 ** np.arange(STRESS_DEGREE)
        k = np.arange(1, STRESS_DEGREE + 1)
        c *= rho / np.sum((k + 1) * np.abs(c))
        out.append(TruncatedSeries.from_coeffs(np.concatenate([[1.0], c])))
    return out


@lru_cache(maxsize=None)
def stress_family(count: int = STRESS_SIZE, seed: int = STRESS_SEED):
    return tuple(profile_map(MODEL, V, phi) for phi in stress_profiles(count, seed))


def bloch_profile() -> TruncatedSeries:
    c = np.zeros(max(BLOCH_B) + 1, dtype=complex)
    c[0] = 1.0
    for k, b in BLOCH_B.items():
        c[k] = b / (k + 1)
    return TruncatedSeries.from_coeffs(c)


def bloch_map(scale: float = 1.0, model: NormModel = MODEL):
    phi = bloch_profile()
    return profile_map(model, model.basis(0), TruncatedSeries.from_coeffs(phi.coeffs * scale))


def sampled_operator_norm(A, directions=2000, seed=0, power_steps=400):
    """Best ``|A xi|`` over random unit ``xi``, each refined by power iteration on ``A^H A``."""
    rng = np.random.default_rng(seed)
    xi = rng.normal(size=(directions, A.shape[1])) + 1j * rng.normal(size=(directions, A.shape[1]))
    xi /= np.linalg.norm(xi, axis=1, keepdims=True)
    raw = np.linalg.norm(xi @ A.T, axis=1).max()
    AhA = A.conj().T @ A
    for _ in range(power_steps):
        xi = xi @ AhA.T
        xi /= np.linalg.norm(xi, axis=1, keepdims=True)
    return raw, np.linalg.norm(xi @ A.T, axis=1).max()
