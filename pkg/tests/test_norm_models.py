from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from radialmaps import NormModel, norm, sphere_sample, support_functional
from radialmaps.errors import DimensionMismatch, UndefinedSupport
from radialmaps.norm_models import lp_norm, sphere_grid, with_directions

P_VALUES = [1.0, 1.5, 2.0, 3.0, 4.0, math.inf]
finite = st.floats(-5, 5, allow_nan=False, allow_infinity=False)
cplx = st.builds(complex, finite, finite)


def test_model_validation():
    with pytest.raises(ValueError):
        NormModel(0.5, 3)
    with pytest.raises(ValueError):
        NormModel(2, 0)
    assert NormModel(1, 2).dual_p == math.inf
    assert NormModel(math.inf, 2).dual_p == 1
    assert NormModel(4, 2).dual_p == pytest.approx(4 / 3)


@pytest.mark.parametrize("p", P_VALUES)
def test_norm_of_basis_vector(p):
    assert norm([1, 0, 0], NormModel(p, 3)) == 1


def test_norm_examples():
    assert norm([3, 4], NormModel(2, 2)) == pytest.approx(5)
    assert norm([1, 1], NormModel(1, 2)) == 2
    assert norm([1, 1], NormModel(math.inf, 2)) == 1
    with pytest.raises(DimensionMismatch):
        norm([1, 2, 3], NormModel(2, 2))


def test_support_functional_examples():
    l = support_functional([1, 0], NormModel(2, 2))
    assert l([0.3 + 1j, 7]) == pytest.approx(0.3 + 1j)
    l = support_functional([3, 4], NormModel(2, 2))
    y = np.array([1j, -2.0])
    assert l(y) == pytest.approx((3 * y[0] + 4 * y[1]) / 5)


def test_support_functional_p4_by_hand():
    # w_j = |x|^{-3} |x_j|^2 conj(x_j) = 2^{-3/4} for x = (1, 1)
    model = NormModel(4, 2)
    l = support_functional([1, 1], model)
    np.testing.assert_allclose(l.coeffs, [2**-0.75, 2**-0.75])
    assert l([1, 1]) == pytest.approx(2**0.25, abs=1e-12)
    assert l.dual_norm(model) == pytest.approx(1, abs=1e-12)


def test_canonical_choices_for_p1_and_pinf():
    l1 = support_functional([1j, 0, -2], NormModel(1, 3))
    np.testing.assert_allclose(l1.coeffs, [-1j, 0, -1])
    linf = support_functional([2, -2j, 1], NormModel(math.inf, 3))
    np.testing.assert_allclose(linf.coeffs, [1, 0, 0])
    alt = support_functional([2, -2j, 1], NormModel(math.inf, 3), index=1)
    np.testing.assert_allclose(alt.coeffs, [0, 1j, 0])
    with pytest.raises(ValueError):
        support_functional([2, -2j, 1], NormModel(math.inf, 3), index=2)


def test_zero_has_no_support_functional():
    with pytest.raises(UndefinedSupport):
        support_functional([0, 0], NormModel(2, 2))


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(P_VALUES), st.lists(cplx, min_size=3, max_size=3).filter(lambda v: max(map(abs, v)) > 1e-3))
def test_support_functional_invariants(p, entries):
    model = NormModel(p, 3)
    x = np.array(entries)
    l = support_functional(x, model)
    assert abs(l(x) - norm(x, model)) <= 1e-12 * max(1.0, norm(x, model))
    assert abs(l.dual_norm(model) - 1) <= 1e-12


@pytest.mark.parametrize("p", P_VALUES)
def test_hahn_banach_consistency(p):
    model = NormModel(p, 3)
    rng = np.random.default_rng(7)
    x = rng.normal(size=3) + 1j * rng.normal(size=3)
    l = support_functional(x, model)
    Y = rng.normal(size=(1000, 3)) + 1j * rng.normal(size=(1000, 3))
    assert np.all(np.abs(l(Y)) <= lp_norm(Y, p) * (1 + 1e-12))


@settings(max_examples=80, deadline=None)
@given(
    st.sampled_from(P_VALUES),
    st.lists(cplx, min_size=3, max_size=3).filter(lambda v: max(map(abs, v)) > 1e-3),
    st.floats(0.01, 10),
    st.floats(0, 2 * math.pi),
)
def test_homogeneity(p, entries, r, theta):
    model = NormModel(p, 3)
    x = np.array(entries)
    c = r * np.exp(1j * theta)
    l = support_functional(c * x, model)
    assert abs(l(c * x) - norm(c * x, model)) <= 1e-12 * max(1.0, norm(c * x, model))


@pytest.mark.parametrize("p", P_VALUES)
def test_sphere_sample_contract(p):
    model = NormModel(p, 3)
    basis = sphere_sample(model, 3, seed=1)
    np.testing.assert_array_equal(np.array(basis), np.eye(3))
    pts = sphere_sample(model, 40, seed=5)
    assert all(abs(norm(u, model) - 1) <= 1e-12 for u in pts)
    again = sphere_sample(model, 40, seed=5)
    assert all(np.array_equal(a, b) for a, b in zip(pts, again))
    with pytest.raises(ValueError):
        sphere_sample(model, 0)


@pytest.mark.parametrize("p", [1.0, 2.0, math.inf])
def test_sphere_grid_points_are_unit(p):
    model = NormModel(p, 2)
    pts = sphere_grid(model, 5, 6)
    assert pts.shape == (5 * 36, 2)
    np.testing.assert_allclose(lp_norm(pts, p), 1, atol=1e-12)


def test_with_directions_skips_duplicates():
    model = NormModel(2, 3)
    s = with_directions(sphere_sample(model, 3), model.basis(0), -model.basis(0))
    assert len(s) == 4
