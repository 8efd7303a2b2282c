"""Command-line entry point and report emitters.

    radialmaps radii  --variant general --m 1..6 --N 1..6
    radialmaps verify --suite all --map koebe
    radialmaps slice  --map koebe --u v

CSV output is deterministic for a fixed configuration; JSON additionally
carries the configuration echo and wall time.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import bohr_radii as br
from . import geometry_criteria as gc
from . import sharp_bounds as sb
from .errors import DegeneracyError, NotInClass, RadialMapsError, SpecParseError
from .norm_models import NormModel, norm, sphere_sample, support_functional, with_directions
from .power_series import TruncatedSeries
from .radial_maps import (
    RadialMap,
    SchwarzPower,
    identity_map,
    koebe_map,
    loads,
    poly_map,
    profile_map,
    slice_series,
)

SCHEMA_VERSION = 1
SEED_ENV = "RADIALMAPS_SEED"
SUITES = ("bieberbach", "growth", "covering", "distortion", "fekete", "bloch", "bohr", "alexander")
VERIFY_RADII = (0.1, 0.2, 0.3)
ALEXANDER_RADII = tuple(round(0.1 * k, 1) for k in range(1, 10))
FEKETE_LAMBDAS = tuple(round(0.1 * k, 1) for k in range(10))


@dataclass
class RunConfig:
    p: float = 2.0
    n: int = 3
    seed: int = 0
    sample_count: int = 64
    degree: int = 32
    margin: float = 1e-9
    bound_tol: float = 1e-9
    root_tol: float = 1e-12
    s_max: int = 10
    fmt: str = "csv"
    out: str | None = None

    def __post_init__(self):
        if min(self.margin, self.bound_tol, self.root_tol) <= 0:
            raise ValueError("tolerances must be positive")
        if self.sample_count < self.n:
            raise ValueError("sample_count must be at least the dimension")
        if self.fmt not in ("csv", "json"):
            raise ValueError("format must be csv or json")

    @property
    def model(self) -> NormModel:
        return NormModel(self.p, self.n)

    @property
    def criterion(self) -> gc.CriterionConfig:
        return gc.CriterionConfig(margin=self.margin, degree=self.degree + 1)


@dataclass
class SuiteResult:
    records: list = field(default_factory=list)
    config: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def summary(self) -> dict:
        failed = sum(1 for r in self.records if not r["passed"])
        return {"total": len(self.records), "passed": len(self.records) - failed, "failed": failed}

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "config": self.config,
            "wall_time": self.wall_time,
            "summary": self.summary,
            "records": self.records,
        }


# ---------------------------------------------------------------------------
# spec parsing
# ---------------------------------------------------------------------------


def _parse_complex_list(text: str, offset: int) -> list[complex]:
    out = []
    pos = 0
    for tok in text.split(","):
        try:
            out.append(complex(tok.strip().replace(" ", "")))
        except ValueError:
            raise SpecParseError(f"not a number: {tok.strip()!r}", 1, offset + pos + 1) from None
        pos += len(tok) + 1
    return out


def parse_map_spec(spec: str, model: NormModel, degree: int = 32) -> RadialMap:
    """Built-in names ``koebe``, ``identity``, ``profile:c0,c1,...``,
    ``poly:coef@e1,..,en;coef@...`` or a path to a serialized map."""
    v = model.basis(0)
    if spec == "koebe":
        return koebe_map(model, v, degree)
    if spec == "identity":
        return identity_map(model)
    if spec.startswith("profile:"):
        coeffs = _parse_complex_list(spec[len("profile:"):], len("profile:"))
        return profile_map(model, v, TruncatedSeries.from_coeffs(coeffs, max(degree, len(coeffs) - 1)))
    if spec.startswith("poly:"):
        terms = {}
        pos = len("poly:")
        for chunk in spec[pos:].split(";"):
            if "@" not in chunk:
                raise SpecParseError("poly terms look like coef@e1,e2,...", 1, pos + 1)
            coef, exps = chunk.split("@", 1)
            c = _parse_complex_list(coef, pos)[0]
            try:
                e = tuple(int(k) for k in exps.split(","))
            except ValueError:
                raise SpecParseError(f"bad exponent list {exps!r}", 1, pos + len(coef) + 2) from None
            if len(e) != model.n:
                raise SpecParseError(f"exponent list needs {model.n} entries", 1, pos + len(coef) + 2)
            terms[e] = terms.get(e, 0) + c
            pos += len(chunk) + 1
        return poly_map(model, terms)
    path = Path(spec)
    if path.is_file():
        F = loads(path.read_text())
        if F.model != model:
            F = RadialMap(F.field, F.model)
        return F
    raise SpecParseError(f"unknown map spec {spec!r}", 1, 1)


def parse_u_spec(spec: str, F: RadialMap) -> np.ndarray:
    """``v`` (the map's own direction), ``e<k>`` (1-based basis vector) or a
    comma-separated complex vector, normalized to the unit sphere."""
    model = F.model
    if spec == "v":
        if F.is_profile and F.field.direction is not None:
            return np.asarray(F.field.direction)
        return model.basis(0)
    if spec.startswith("e") and spec[1:].isdigit():
        k = int(spec[1:])
        if not 1 <= k <= model.n:
            raise SpecParseError(f"basis index {k} outside 1..{model.n}", 1, 2)
        return model.basis(k - 1)
    u = model.vector(_parse_complex_list(spec, 0))
    nu = norm(u, model)
    if nu == 0:
        raise SpecParseError("direction must be nonzero", 1, 1)
    return u / nu


def parse_range(text: str) -> list[int]:
    if ".." in text:
        a, b = text.split("..", 1)
        return list(range(int(a), int(b) + 1))
    return [int(t) for t in text.split(",")]


# ---------------------------------------------------------------------------
# formatting
# ---------------------------------------------------------------------------


def fmt_float(x) -> str:
    if x is None:
        return ""
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": _jsonable(obj.real), "im": _jsonable(obj.imag)}
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else fmt_float(x)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def write_csv(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        out = []
        for c in columns:
            v = row.get(c)
            if isinstance(v, bool) or v is None:
                out.append("" if v is None else str(v).lower())
            elif isinstance(v, (float, np.floating)):
                out.append(fmt_float(v))
            else:
                out.append(str(v))
        w.writerow(out)
    return buf.getvalue()


def emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    try:
        path.write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write output to {path}: {exc.strerror}") from exc


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_radii(m_range, N_range, variant: str, config: RunConfig) -> str:
    rows = br.radius_table(m_range, N_range, variant)
    for row in rows:
        row["schema_version"] = SCHEMA_VERSION
        row["m"] = "inf" if row["m"] is None else row["m"]
    if config.fmt == "json":
        return json.dumps({"schema_version": SCHEMA_VERSION, "variant": variant, "rows": _jsonable(rows)}, indent=2) + "\n"
    return write_csv(rows, ["schema_version", "variant", "m", "N", "r", "residual", "iterations"])


def _samples(F: RadialMap, config: RunConfig) -> list[np.ndarray]:
    base = sphere_sample(F.model, config.sample_count, config.seed)
    if F.is_profile and F.field.direction is not None:
        v = np.asarray(F.field.direction)
        return with_directions(base, v, -v)
    return base


def _bound_records(suite: str, reports) -> list[dict]:
    return [{"suite": suite, **r.as_record()} for r in reports]


def run_suite(suite: str, F: RadialMap, config: RunConfig) -> list[dict]:
    samples = _samples(F, config)
    tol = config.bound_tol
    cfg = config.criterion
    if suite == "bieberbach":
        s_max = min(config.s_max, F.degree + 1)
        return _bound_records(suite, sb.check_bieberbach(F, F, s_max, samples, tol))
    if suite == "growth":
        return _bound_records(suite, sb.check_growth(F, samples, VERIFY_RADII, tol))
    if suite == "covering":
        return _bound_records(suite, [sb.covering_margin(F, r, samples, cfg.boundary_grid, tol) for r in VERIFY_RADII])
    if suite == "distortion":
        reps = sb.check_distortion_ray(F, samples, VERIFY_RADII, tol)
        if F.model.p == 2:
            reps += sb.check_distortion_hilbert(F, samples, VERIFY_RADII, tol)
        return _bound_records(suite, reps)
    if suite == "fekete":
        out = []
        for lam in FEKETE_LAMBDAS:
            reps = [sb.fekete_szego(F, u, lam, tol) for u in samples]
            worst = min(reps, key=lambda r: r.slack)
            worst.witness["u"] = np.asarray(samples[reps.index(worst)]).tolist()
            out.append(worst)
        return _bound_records(suite, out)
    if suite == "bloch":
        try:
            reps = [sb.check_bonk(F, samples), sb.bloch_schlicht_check(F, samples, cfg)]
        except NotInClass as exc:
            return [{"suite": suite, "name": "bloch_class", "type": "note", "passed": True, "witness": {"skipped": str(exc)}}]
        return _bound_records(suite, reps)
    if suite == "bohr":
        v = np.asarray(F.field.direction) if F.is_profile and F.field.direction is not None else F.model.basis(0)
        out = []
        for m in (1, 2):
            for N in (1, 2, 3):
                r = br.solve_radius(br.RadiusQuery(m, N), config.root_tol).r
                V = SchwarzPower(v, support_functional(v, F.model), m)
                out.append(br.rogosinski_check(F, m, N, r, samples, V=V, tol=tol))
        return _bound_records(suite, out)
    if suite == "alexander":
        out = []
        for r in ALEXANDER_RADII:
            rep = gc.alexander_check(F, r, samples, cfg)
            out.append({
                "suite": suite,
                "name": f"alexander[r={r:g}]",
                "type": "criterion",
                "verdict": f"{rep.quasiconvex.verdict}/{rep.starlike.verdict}",
                "margin": min(rep.quasiconvex.margin_observed, rep.starlike.margin_observed),
                "witness": {"quasiconvex_margin": rep.quasiconvex.margin_observed, "starlike_margin": rep.starlike.margin_observed},
                "passed": rep.agree or not rep.decisive,
            })
        return out
    raise ValueError(f"unknown suite {suite!r}")


def cmd_verify(suite: str, map_spec: str, config: RunConfig) -> SuiteResult:
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES + ('all',))}")
    t0 = time.perf_counter()
    F = parse_map_spec(map_spec, config.model, config.degree)
    records = []
    for name in SUITES if suite == "all" else (suite,):
        records.extend(run_suite(name, F, config))
    cfg = asdict(config)
    cfg["map"] = map_spec
    cfg["suite"] = suite
    return SuiteResult(_jsonable(records), cfg, time.perf_counter() - t0)


def suite_csv(result: SuiteResult) -> str:
    rows = []
    for r in result.records:
        rows.append({
            "schema_version": SCHEMA_VERSION,
            "suite": r.get("suite", ""),
            "name": r["name"],
            "type": r["type"],
            "passed": r["passed"],
            "verdict": r.get("verdict", ""),
            "lhs": r.get("lhs"),
            "rhs": r.get("rhs"),
            "slack": r.get("slack"),
            "attained": r.get("attained"),
            "margin": r.get("margin", r.get("margin_observed")),
        })
    for row in rows:
        for k in ("lhs", "rhs", "slack", "margin"):
            if isinstance(row[k], str):
                row[k] = float(row[k])
    return write_csv(rows, ["schema_version", "suite", "name", "type", "passed", "verdict", "lhs", "rhs", "slack", "attained", "margin"])


def cmd_slice(map_spec: str, u_spec: str, config: RunConfig, radii=None) -> dict:
    F = parse_map_spec(map_spec, config.model, config.degree)
    u = parse_u_spec(u_spec, F)
    s = slice_series(F, u, config.degree + 1)
    d = s.derivative()
    cfg = config.criterion
    radii = radii if radii is not None else [round(0.05 * k, 2) for k in range(1, 20)]
    margins = []
    for r in radii:
        row = {"r": r}
        for key, fn in (("univalent_margin", gc.univalent_disc), ("starlike_margin", gc.starlike_disc), ("convex_margin", gc.convex_disc)):
            try:
                row[key] = fn(s, r, cfg).margin_observed
            except DegeneracyError:
                row[key] = -math.inf
        margins.append(row)
    coeffs = [
        {"k": k, "slice_re": s[k].real, "slice_im": s[k].imag,
         "deriv_re": d[k].real if k <= d.degree else 0.0, "deriv_im": d[k].imag if k <= d.degree else 0.0}
        for k in range(s.degree + 1)
    ]
    return {"schema_version": SCHEMA_VERSION, "map": map_spec, "u": u.tolist(), "coefficients": coeffs, "margins": margins}


def slice_csv(dump: dict) -> tuple[str, str]:
    margins = write_csv(dump["margins"], ["r", "univalent_margin", "starlike_margin", "convex_margin"])
    coeffs = write_csv(dump["coefficients"], ["k", "slice_re", "slice_im", "deriv_re", "deriv_im"])
    return margins, coeffs


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _global_flags() -> argparse.ArgumentParser:
    g = argparse.ArgumentParser(add_help=False)
    g.add_argument("--p", type=float, default=2.0, help="l^p exponent (use inf for the max norm)")
    g.add_argument("--n", type=int, default=3, help="dimension")
    g.add_argument("--seed", type=int, default=0, help=f"sampling seed ({SEED_ENV} overrides)")
    g.add_argument("--samples", type=int, default=64, help="sphere sample count")
    g.add_argument("--degree", type=int, default=32, help="series truncation degree")
    g.add_argument("--tol", type=float, default=1e-9, help="bound tolerance")
    g.add_argument("--margin", type=float, default=1e-9, help="strict-inequality margin")
    g.add_argument("--s-max", type=int, default=10, dest="s_max")
    g.add_argument("--format", choices=("csv", "json"), default="csv", dest="fmt")
    g.add_argument("--out", default=None, help="output path (default stdout)")
    return g


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="radialmaps", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    g = _global_flags()

    p = sub.add_parser("radii", parents=[g], help="tabulate Bohr-Rogosinski radii")
    p.add_argument("--variant", choices=("general", "fixed_v", "limit"), default="general")
    p.add_argument("--m", default="1..6", help="range A..B or list")
    p.add_argument("--N", default="1..6", help="range A..B or list")

    p = sub.add_parser("verify", parents=[g], help="run a verification suite")
    p.add_argument("--suite", default="all", help=f"one of {', '.join(SUITES)}, all")
    p.add_argument("--map", required=True, dest="map_spec")

    p = sub.add_parser("slice", parents=[g], help="dump a slice and its criterion margins")
    p.add_argument("--map", required=True, dest="map_spec")
    p.add_argument("--u", default="v", dest="u_spec")
    return parser


def config_from_args(args) -> RunConfig:
    seed = args.seed
    if os.environ.get(SEED_ENV):
        seed = int(os.environ[SEED_ENV])
    return RunConfig(
        p=args.p, n=args.n, seed=seed, sample_count=args.samples, degree=args.degree,
        margin=args.margin, bound_tol=args.tol, s_max=args.s_max, fmt=args.fmt, out=args.out,
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = config_from_args(args)
        if args.command == "radii":
            emit(cmd_radii(parse_range(args.m), parse_range(args.N), args.variant, config), config.out)
            return 0
        if args.command == "verify":
            result = cmd_verify(args.suite, args.map_spec, config)
            text = json.dumps(result.to_json(), indent=2) + "\n" if config.fmt == "json" else suite_csv(result)
            emit(text, config.out)
            return 1 if result.summary["failed"] else 0
        if args.command == "slice":
            dump = cmd_slice(args.map_spec, args.u_spec, config)
            if config.fmt == "json":
                emit(json.dumps(_jsonable(dump), indent=2) + "\n", config.out)
            else:
                margins, coeffs = slice_csv(dump)
                if config.out is None:
                    emit(margins + "\n" + coeffs, None)
                else:
                    emit(margins, config.out)
                    stem = Path(config.out)
                    emit(coeffs, str(stem.with_name(stem.stem + "_coeffs" + stem.suffix)))
            return 0
    except (RadialMapsError, ValueError, OSError) as exc:
        print(f"radialmaps: error: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
