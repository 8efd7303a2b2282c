"""Independent reference values, frozen into ``tests/data/oracles.json``.

Nothing here imports the package under test. Rerun with

    python3 tests/oracles/generate.py

and commit the refreshed JSON only after reviewing the diff.
"""

from __future__ import annotations

import json
from pathlib import Path

import mpmath as mp
import numpy as np

OUT = Path(__file__).resolve().parent.parent / "data" / "oracles.json"
GRID_STEPS = 10**6
mp.mp.dps = 40


def radius_lhs(r, m, N, variant):
    """The radius equation in its original (unsimplified) form."""
    tail = 4 * r**N * (N * (1 - r) + r)
    if variant == "limit":
        return tail / (1 - r) ** 2 - 1
    if variant == "fixed_v":
        return 4 * r - (1 - r) ** 2 + tail
    return 4 * r**m - (1 - r**m) ** 2 + tail * ((1 - r**m) / (1 - r)) ** 2


def radius_root(m, N, variant):
    """Locate the sign change on a uniform 10^6-step grid, then bisect in 40-digit arithmetic."""
    grid = np.linspace(0.0, 1.0, GRID_STEPS + 1)[1:-1]
    vals = radius_lhs(grid, m, N, variant)
    changes = np.flatnonzero(np.sign(vals[1:]) != np.sign(vals[:-1]))
    assert changes.size == 1, (m, N, variant, changes.size)
    lo, hi = mp.mpf(grid[changes[0]]), mp.mpf(grid[changes[0] + 1])
    for _ in range(200):
        mid = (lo + hi) / 2
        if radius_lhs(mid, m, N, variant) < 0:
            lo = mid
        else:
            hi = mid
    return float((lo + hi) / 2)


def dense_circle_min(fn, r, count=200_000):
    z = r * np.exp(2j * np.pi * np.arange(count) / count)
    return float(np.min(fn(z)))


def bloch_scan(hprime, radii=4000, angles=4096):
    t = np.linspace(0.0, 1.0, radii, endpoint=False)
    z = np.exp(2j * np.pi * np.arange(angles) / angles)
    best = 0.0
    for ti in t:
        best = max(best, float((1 - ti * ti) * np.abs(hprime(ti * z)).max()))
    return best


def main():
    radii = {}
    for m in range(1, 7):
        for N in range(1, 7):
            radii[f"general/{m}/{N}"] = radius_root(m, N, "general")
    for N in range(1, 7):
        radii[f"fixed_v/1/{N}"] = radius_root(1, N, "fixed_v")
        radii[f"limit/inf/{N}"] = radius_root(None, N, "limit")

    bloch_b = {2: 0.3, 3: -0.2j, 4: 0.2, 5: 0.1 + 0.1j, 7: -0.2}
    out = {
        "radius_roots": radii,
        "starlike_min_z_plus_z2": {
            str(r): dense_circle_min(lambda z: np.real((1 + 2 * z) / (1 + z)), r) for r in (0.2, 0.9)
        },
        "convex_min_koebe": {
            str(r): dense_circle_min(lambda z: np.real((1 + 4 * z + z * z) / (1 - z * z)), r) for r in (0.25, 0.3)
        },
        "koebe_convex_radius_scan": float(
            # largest grid radius with a positive minimum
            max(r for r in np.linspace(0.2, 0.3, 10001)
                if dense_circle_min(lambda z: np.real((1 + 4 * z + z * z) / (1 - z * z)), r, 4096) > 0)
        ),
        "bloch_seminorm_scan": bloch_scan(lambda z: 1 + sum(b * z**k for k, b in bloch_b.items())),
        "bloch_seminorm_profile_1_1": bloch_scan(lambda z: 1 + 2 * z, radii=20000, angles=8),
        "bloch_covering_min_scan": float(min(
            np.abs(z + sum(b * z ** (k + 1) / (k + 1) for k, b in bloch_b.items())).min()
            for z in [3 ** -0.5 * np.exp(2j * np.pi * np.arange(100_000) / 100_000)]
        )),
    }
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(out, indent=2, sort_keys=True) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
