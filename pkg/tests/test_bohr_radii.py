from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np
import pytest

from families import MODEL, V, koebe, samples
from radialmaps import identity_map
from radialmaps.bohr_radii import (
    RadiusQuery,
    _sign_changes,
    bohr_tail_sum,
    koebe_tail,
    radius_equation,
    radius_table,
    rogosinski_check,
    rogosinski_lhs,
    solve_radius,
)
from radialmaps.errors import OutOfBallError
from radialmaps.radial_maps import SchwarzPower

ORACLES = json.loads((Path(__file__).parent / "data" / "oracles.json").read_text())["radius_roots"]
LIMIT_R = 3 - 2 * math.sqrt(2)
FIXED_R = 5 - 2 * math.sqrt(6)


def test_query_validation():
    with pytest.raises(ValueError):
        RadiusQuery(None, 1, "general")
    with pytest.raises(ValueError):
        RadiusQuery(2, 1, "fixed_v")
    with pytest.raises(ValueError):
        RadiusQuery(3, 1, "limit")
    with pytest.raises(ValueError):
        RadiusQuery(1, 0)
    with pytest.raises(ValueError):
        RadiusQuery(1, 1, "other")


def test_equation_examples():
    assert abs(radius_equation(FIXED_R, RadiusQuery(1, 1))) <= 1e-12
    assert abs(radius_equation(LIMIT_R, RadiusQuery(None, 1, "limit"))) <= 1e-12
    for q in (RadiusQuery(3, 2), RadiusQuery(1, 4, "fixed_v"), RadiusQuery(None, 2, "limit")):
        assert radius_equation(1e-12, q) == pytest.approx(-1, abs=1e-9)
    with pytest.raises(OutOfBallError):
        radius_equation(1.0, RadiusQuery(1, 1))


def test_solver_examples():
    assert solve_radius(RadiusQuery(None, 1, "limit")).r == pytest.approx(LIMIT_R, abs=1e-12)
    assert solve_radius(RadiusQuery(1, 1, "fixed_v")).r == pytest.approx(FIXED_R, abs=1e-12)
    assert solve_radius(RadiusQuery(2, 2)).r > solve_radius(RadiusQuery(1, 1)).r


@pytest.mark.parametrize("variant", ["general", "fixed_v", "limit"])
def test_table_residuals_and_oracle(variant):
    rows = radius_table(range(1, 7), range(1, 7), variant)
    for row in rows:
        q = RadiusQuery(row["m"], row["N"], variant)
        assert row["residual"] <= 1e-12
        assert abs(radius_equation(row["r"], q)) <= 1e-12
        assert _sign_changes(q) == 1
        key = f"{variant}/{'inf' if row['m'] is None else row['m']}/{row['N']}"
        assert row["r"] == pytest.approx(ORACLES[key], abs=1e-10)


def test_limit_coherence():
    gaps = [LIMIT_R - solve_radius(RadiusQuery(m, 1)).r for m in (1, 2, 4, 8, 16, 32)]
    # by m = 32 the true gap (about 1e-25) is below double roundoff
    assert all(g > 0 for g in gaps[:-1]) and abs(gaps[-1]) <= 1e-15
    assert all(b < a for a, b in zip(gaps, gaps[1:]))


def test_tail_sum_koebe_closed_form():
    F = koebe(64)
    exact, rem = bohr_tail_sum(F, 0.1 * V, 2, s_cap=60)
    assert exact + rem == pytest.approx(koebe_tail(0.1, 2), abs=1e-10)


def test_tail_sum_trivial_cases():
    G = identity_map(MODEL)
    x = 0.4 * samples()[5]
    assert sum(bohr_tail_sum(G, x, 1)) == pytest.approx(0.4)
    assert bohr_tail_sum(G, x, 2)[0] == 0
    F = koebe()
    x = 0.4 * MODEL.basis(1)
    assert bohr_tail_sum(F, x, 1)[0] == pytest.approx(0.4)
    assert bohr_tail_sum(F, x, 2)[0] == 0
    with pytest.raises(OutOfBallError):
        bohr_tail_sum(F, 1.0 * V, 1)


def test_tail_remainder_is_certified_small():
    F = koebe(256)
    for r in (0.1, 0.2, 0.3):
        _, rem = bohr_tail_sum(F, r * V, 1, s_cap=200)
        assert rem <= 1e-12


@pytest.mark.parametrize("m,N", [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3)])
def test_rogosinski_sharpness(m, N):
    F = koebe(64)
    r = solve_radius(RadiusQuery(m, N)).r
    rep = rogosinski_check(F, m, N, r, samples())
    assert rep.passed and rep.lhs_observed == pytest.approx(0.25, abs=1e-9)
    beyond = rogosinski_check(F, m, N, 1.02 * r, samples())
    assert beyond.lhs_observed > 0.25 and not beyond.passed


def test_rogosinski_lhs_increasing_along_the_ray():
    F = koebe(512)
    Vm = SchwarzPower.build(MODEL, V, 2)
    vals = [rogosinski_lhs(F, Vm, r * V, 2) for r in np.linspace(0.01, 0.89, 60)]
    assert np.all(np.diff(vals) > 0)


def test_rogosinski_rejects_mismatched_order():
    with pytest.raises(ValueError):
        rogosinski_check(koebe(), 2, 1, 0.1, samples(), V=SchwarzPower.build(MODEL, V, 3))
