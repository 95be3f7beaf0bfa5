"""Command-line front end.

Subcommands: kappa, envelope, verify, extremal, sharpness, nonexist.
Each takes a single strict JSON configuration document; outputs are CSV
files with fixed 17-significant-digit float formatting (byte-reproducible
for identical configs) plus optional minimal SVG polyline plots.

Exit codes: 0 success, 1 verification failure, 2 configuration error,
3 numeric failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

import numpy as np

from .dilatation import (
    CircleQuadrature,
    GridCoefficient,
    LinearCoefficient,
    LogLogCoefficient,
    PowerCoefficient,
    RadialCoefficient,
    SpiralCoefficient,
    kappa as circle_kappa,
)
from .errors import BeltramiGrowthError
from .growth import (
    ConstantProfile,
    area_bound_check,
    FieldProfile,
    LogProductProfile,
    PiecewiseProfile,
    RadiusLadder,
    TableProfile,
    differential_inequality_check,
    envelope_integral,
    isoperimetric_check,
    modulus_extremes,
    nonexistence_diagnostic,
    theorem1_check,
)
from .mappings import Identity, Linear, LogLog, Power, RadialTable, Spiral
from .verify import (
    AnnulusGrid,
    build_extremal,
    catalog_pair,
    pde_residual,
    sharpness_ladder,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3


class ConfigError(Exception):
    """Invalid or malformed configuration document."""


# ---------------------------------------------------------------------------
# formatting and output helpers


def fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return value
    return format(float(value), ".17g")


def write_csv(path: Path, header, rows) -> Path:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(v) for v in row])
    return path


def write_svg_polyline(path: Path, xs, ys, *, log_x=False, log_y=False, label="") -> Path:
    """Standalone minimal SVG: one polyline in a fixed 640x480 viewBox."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if log_x:
        if np.any(xs <= 0.0):
            raise ValueError("log x-axis requires positive values")
        xs = np.log10(xs)
    if log_y:
        if np.any(ys <= 0.0):
            raise ValueError("log y-axis requires positive values")
        ys = np.log10(ys)
    width, height, margin = 640, 480, 50
    span_x = max(xs.max() - xs.min(), 1e-30)
    span_y = max(ys.max() - ys.min(), 1e-30)
    px = margin + (xs - xs.min()) / span_x * (width - 2 * margin)
    py = height - margin - (ys - ys.min()) / span_y * (height - 2 * margin)
    points = " ".join(f"{x:.3f},{y:.3f}" for x, y in zip(px, py))
    body = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}">\n'
        f'  <rect x="{margin}" y="{margin}" width="{width - 2 * margin}" '
        f'height="{height - 2 * margin}" fill="none" stroke="black"/>\n'
        f'  <polyline points="{points}" fill="none" stroke="blue"/>\n'
        f'  <text x="{margin}" y="{margin - 10}">{label}</text>\n'
        "</svg>\n"
    )
    with open(path, "w") as fh:
        fh.write(body)
    return path


# ---------------------------------------------------------------------------
# strict config parsing


def _require_keys(cfg, name, allowed, required):
    if not isinstance(cfg, dict):
        raise ConfigError(f"{name} must be an object, got {type(cfg).__name__}")
    unknown = set(cfg) - set(allowed)
    if unknown:
        raise ConfigError(f"unknown keys in {name}: {sorted(unknown)}")
    missing = set(required) - set(cfg)
    if missing:
        raise ConfigError(f"missing keys in {name}: {sorted(missing)}")


def _cnum(value, name) -> complex:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
    ):
        raise ConfigError(f"{name} must be a [re, im] pair of numbers")
    return complex(value[0], value[1])


def _num(value, name, *, positive=False) -> float:
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ConfigError(f"{name} must be a number")
    if positive and not value > 0:
        raise ConfigError(f"{name} must be positive, got {value}")
    return float(value)


def _int(value, name, *, minimum=None) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise ConfigError(f"{name} must be an integer")
    if minimum is not None and value < minimum:
        raise ConfigError(f"{name} must be at least {minimum}, got {value}")
    return value


def _load_radial_table_csv(path: str):
    try:
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header != ["r", "rho"]:
                raise ConfigError(f"expected header r,rho in {path}, got {header}")
            rows = []
            for lineno, row in enumerate(reader, start=2):
                if len(row) != 2 or any(c.strip() == "" for c in row):
                    raise ConfigError(f"malformed row at {path}:{lineno}")
                rows.append((float(row[0]), float(row[1])))
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    except ValueError as exc:
        raise ConfigError(f"bad number in {path}: {exc}") from exc
    data = np.asarray(rows, dtype=float)
    return data[:, 0], data[:, 1]


def parse_mapping(cfg):
    _require_keys(
        cfg,
        "mapping",
        {"kind", "alpha", "a", "b", "c", "path", "center", "linear_inner"},
        {"kind"},
    )
    kind = cfg["kind"]
    try:
        if kind == "identity":
            return Identity()
        if kind == "linear":
            return Linear(
                _cnum(cfg["a"], "a"),
                _cnum(cfg["b"], "b"),
                _cnum(cfg.get("c", [0, 0]), "c"),
            )
        if kind == "spiral":
            return Spiral()
        if kind == "power":
            return Power(_num(cfg["alpha"], "alpha", positive=True))
        if kind == "loglog":
            return LogLog(_num(cfg["alpha"], "alpha", positive=True))
        if kind == "radial_table":
            knots, rho = _load_radial_table_csv(cfg["path"])
            center = _cnum(cfg.get("center", [0, 0]), "center")
            return RadialTable(knots, rho, center, bool(cfg.get("linear_inner", False)))
    except KeyError as exc:
        raise ConfigError(f"mapping kind {kind!r} requires key {exc}") from exc
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    raise ConfigError(f"unknown mapping kind {kind!r}")


def parse_coefficient(cfg):
    _require_keys(
        cfg,
        "coefficient",
        {"kind", "alpha", "a", "b", "center", "path", "profile"},
        {"kind"},
    )
    kind = cfg["kind"]
    center = _cnum(cfg.get("center", [0, 0]), "center")
    try:
        if kind == "linear":
            return LinearCoefficient(_cnum(cfg["a"], "a"), _cnum(cfg["b"], "b"), center)
        if kind == "spiral":
            return SpiralCoefficient(center)
        if kind == "power":
            return PowerCoefficient(_num(cfg["alpha"], "alpha", positive=True), center)
        if kind == "loglog":
            return LogLogCoefficient(_num(cfg["alpha"], "alpha", positive=True), center)
        if kind == "grid":
            return GridCoefficient.from_csv(cfg["path"], center)
        if kind == "radial":
            profile = parse_profile(cfg["profile"])
            return RadialCoefficient(
                profile,
                center=center,
                radial_breakpoints=tuple(profile.breakpoints),
                radial_domain=profile.domain,
            )
    except KeyError as exc:
        raise ConfigError(f"coefficient kind {kind!r} requires key {exc}") from exc
    except (ValueError, OSError) as exc:
        raise ConfigError(str(exc)) from exc
    raise ConfigError(f"unknown coefficient kind {kind!r}")


def parse_profile(cfg):
    _require_keys(
        cfg,
        "profile",
        {"kind", "alpha", "depth", "breakpoints", "pieces", "radii", "values",
         "coefficient", "n"},
        {"kind"},
    )
    kind = cfg["kind"]
    try:
        if kind == "constant":
            return ConstantProfile(_num(cfg["alpha"], "alpha"))
        if kind == "log_product":
            return LogProductProfile(
                _num(cfg["alpha"], "alpha"), _int(cfg["depth"], "depth", minimum=1)
            )
        if kind == "piecewise":
            cuts = tuple(_num(b, "breakpoint", positive=True) for b in cfg["breakpoints"])
            pieces = tuple(parse_profile(p) for p in cfg["pieces"])
            return PiecewiseProfile(cuts, pieces)
        if kind == "table":
            radii = [_num(v, "radius", positive=True) for v in cfg["radii"]]
            values = [_num(v, "kappa", positive=True) for v in cfg["values"]]
            return TableProfile(np.asarray(radii), np.asarray(values))
        if kind == "from_field":
            return FieldProfile(
                parse_coefficient(cfg["coefficient"]),
                CircleQuadrature(_int(cfg.get("n", 1024), "n", minimum=8)),
            )
    except KeyError as exc:
        raise ConfigError(f"profile kind {kind!r} requires key {exc}") from exc
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from exc
    raise ConfigError(f"unknown profile kind {kind!r}")


def parse_ladder(cfg):
    _require_keys(cfg, "ladder", {"r0", "factor", "count"}, {"r0"})
    try:
        return RadiusLadder(
            _num(cfg["r0"], "r0", positive=True),
            _num(cfg.get("factor", 2.0), "factor"),
            _int(cfg.get("count", 40), "count", minimum=1),
        )
    except BeltramiGrowthError as exc:
        raise ConfigError(str(exc)) from exc


def parse_pair(cfg):
    if not isinstance(cfg, dict):
        raise ConfigError("pair must be an object")
    if "name" in cfg:
        _require_keys(
            cfg,
            "pair",
            {"name", "alpha", "a", "b", "c", "profile", "r0", "rho0", "R", "knots"},
            {"name"},
        )
        name = cfg["name"]
        if name == "extremal":
            sol = build_extremal(
                parse_profile(cfg["profile"]),
                _num(cfg["r0"], "r0", positive=True),
                _num(cfg.get("rho0", 1.0), "rho0", positive=True),
                _num(cfg["R"], "R", positive=True),
                _int(cfg.get("knots", 128), "knots", minimum=64),
            )
            return sol.mapping(), sol.coefficient()
        params = {}
        for key in ("alpha",):
            if key in cfg:
                params[key] = _num(cfg[key], key)
        for key in ("a", "b", "c"):
            if key in cfg:
                params[key] = _cnum(cfg[key], key)
        try:
            return catalog_pair(name, **params)
        except (ValueError, KeyError) as exc:
            raise ConfigError(str(exc)) from exc
    _require_keys(cfg, "pair", {"mapping", "coefficient"}, {"mapping", "coefficient"})
    return parse_mapping(cfg["mapping"]), parse_coefficient(cfg["coefficient"])


def _quadrature(cfg):
    try:
        return CircleQuadrature(_int(cfg.get("n", 1024), "n", minimum=8))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


# ---------------------------------------------------------------------------
# subcommands


def cmd_kappa(cfg, outdir: Path, plot: bool, say) -> int:
    _require_keys(cfg, "config", {"coefficient", "radii", "n"}, {"coefficient", "radii"})
    coefficient = parse_coefficient(cfg["coefficient"])
    if not isinstance(cfg["radii"], list) or not cfg["radii"]:
        raise ConfigError("radii must be a non-empty list of positive numbers")
    radii = [_num(r, "radius", positive=True) for r in cfg["radii"]]
    q = _quadrature(cfg)
    breakpoints = set(coefficient.radial_breakpoints)
    rows = []
    for r in radii:
        if r in breakpoints:
            # one row per one-sided limit at a jump radius
            rows.append((r, circle_kappa(coefficient, r * (1 - 1e-9), q), "left"))
            rows.append((r, circle_kappa(coefficient, r * (1 + 1e-9), q), "right"))
        else:
            rows.append((r, circle_kappa(coefficient, r, q), "-"))
    path = write_csv(outdir / "kappa.csv", ["r", "kappa", "piece"], rows)
    say(f"wrote {path} ({len(rows)} rows)")
    return EXIT_OK


def cmd_envelope(cfg, outdir: Path, plot: bool, say) -> int:
    _require_keys(cfg, "config", {"profile", "r0", "ladder"}, {"profile", "r0", "ladder"})
    profile = parse_profile(cfg["profile"])
    r0 = _num(cfg["r0"], "r0", positive=True)
    ladder = parse_ladder(cfg["ladder"])
    rows = []
    integral = 0.0
    prev = r0
    for R in ladder.radii():
        seg, _ = envelope_integral(profile, prev, float(R))
        integral += seg
        prev = float(R)
        rows.append((float(R), integral, math.exp(integral)))
    path = write_csv(outdir / "envelope.csv", ["R", "I", "envelope"], rows)
    say(f"wrote {path} ({len(rows)} rows)")
    if plot:
        svg = write_svg_polyline(
            outdir / "envelope.svg",
            [row[0] for row in rows],
            [row[2] for row in rows],
            log_x=True,
            log_y=True,
            label="envelope vs R (log-log)",
        )
        say(f"wrote {svg}")
    return EXIT_OK


def _check_radii(mapping, r0: float, top: float, count: int = 10):
    radii = np.geomspace(r0, min(top, 100.0 * r0), count)
    mask = mapping.smooth_mask(radii.astype(complex), 0.05)
    if not np.any(mask):
        raise ConfigError("no check radii clear of the mapping's excluded bands")
    return radii[mask]


def cmd_verify(cfg, outdir: Path, plot: bool, say) -> int:
    _require_keys(
        cfg,
        "config",
        {"pair", "z0", "r0", "ladder", "n", "h", "grid", "residual_tol"},
        {"pair", "r0", "ladder"},
    )
    mapping, coefficient = parse_pair(cfg["pair"])
    z0 = _cnum(cfg.get("z0", [0, 0]), "z0")
    r0 = _num(cfg["r0"], "r0", positive=True)
    ladder = parse_ladder(cfg["ladder"])
    q = _quadrature(cfg)
    h = _num(cfg.get("h", 1e-5), "h", positive=True)
    residual_tol = _num(cfg.get("residual_tol", 1e-8), "residual_tol", positive=True)

    top = float(ladder.radii()[-1])
    if "grid" in cfg:
        g = cfg["grid"]
        _require_keys(g, "grid", {"r_inner", "r_outer", "n_r", "n_theta"}, {"r_inner", "r_outer"})
        try:
            grid = AnnulusGrid(
                _num(g["r_inner"], "r_inner", positive=True),
                _num(g["r_outer"], "r_outer", positive=True),
                _int(g.get("n_r", 64), "n_r", minimum=2),
                _int(g.get("n_theta", 256), "n_theta", minimum=8),
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    else:
        grid = AnnulusGrid(r0, min(top, 8.0 * r0), 32, 64)

    failures = []

    residual = pde_residual(mapping, coefficient, z0, grid, h=h)
    ok = residual.max_abs <= residual_tol
    say(f"{'PASS' if ok else 'FAIL'} pde_residual max={fmt(residual.max_abs)} "
        f"rms={fmt(residual.rms)} tol={fmt(residual_tol)}")
    if not ok:
        failures.append("pde_residual")
    write_csv(
        outdir / "verify_residual.csv",
        ["r", "theta", "abs_residual"],
        zip(residual.r, residual.theta, residual.abs_residual),
    )

    radii = _check_radii(mapping, r0, top)
    rows = differential_inequality_check(mapping, z0, radii, q, h=h)
    ok = all(row.ok for row in rows)
    worst = min(row.ratio for row in rows)
    say(f"{'PASS' if ok else 'FAIL'} differential_inequality min_ratio={fmt(worst)}")
    if not ok:
        failures.append("differential_inequality")

    iso_ok = True
    for r in radii:
        report = isoperimetric_check(mapping, z0, float(r), q, h=h)
        iso_ok &= report.ok
    say(f"{'PASS' if iso_ok else 'FAIL'} isoperimetric")
    if not iso_ok:
        failures.append("isoperimetric")

    area_R = float(radii[-1])
    area = area_bound_check(mapping, coefficient, z0, r0, area_R, q, h=h)
    say(f"{'PASS' if area.ok else 'FAIL'} area_bound slack={fmt(area.slack)}"
        + (" (equality)" if area.equality else ""))
    if not area.ok:
        failures.append("area_bound")

    growth = theorem1_check(mapping, coefficient, z0, r0, ladder, q)
    say(f"{'PASS' if growth.all_ok else 'FAIL'} growth_ladder "
        f"m={fmt(growth.m_inner)} liminf_proxy={fmt(growth.liminf_proxy)}")
    if not growth.all_ok:
        failures.append("growth_ladder")
    write_csv(
        outdir / "verify_growth.csv",
        ["R", "M", "m", "I", "envelope", "v", "bound_ok"],
        [
            (row.R, row.M, row.m, row.integral, row.envelope, row.v, row.bound_ok)
            for row in growth.rows
        ],
    )

    if failures:
        say(f"FAILED checks: {', '.join(failures)}")
        return EXIT_CHECK_FAILED
    say("all checks passed")
    return EXIT_OK


def cmd_extremal(cfg, outdir: Path, plot: bool, say) -> int:
    _require_keys(
        cfg,
        "config",
        {"profile", "r0", "rho0", "R", "knots", "center"},
        {"profile", "r0", "R"},
    )
    profile = parse_profile(cfg["profile"])
    try:
        sol = build_extremal(
            profile,
            _num(cfg["r0"], "r0", positive=True),
            _num(cfg.get("rho0", 1.0), "rho0", positive=True),
            _num(cfg["R"], "R", positive=True),
            _int(cfg.get("knots", 128), "knots", minimum=64),
            _cnum(cfg.get("center", [0, 0]), "center"),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    rho_path = write_csv(
        outdir / "extremal_rho.csv", ["r", "rho"], zip(sol.knots, sol.rho)
    )
    kappa_fn = sol.kappa_of_r()
    coef_path = write_csv(
        outdir / "extremal_coefficient.csv",
        ["r", "kappa"],
        [(r, kappa_fn(float(r))) for r in sol.knots],
    )
    say(f"wrote {rho_path} and {coef_path} ({sol.knots.size} knots)")
    return EXIT_OK


def cmd_sharpness(cfg, outdir: Path, plot: bool, say) -> int:
    _require_keys(cfg, "config", {"example", "ladder", "n"}, {"example", "ladder"})
    example = cfg["example"]
    _require_keys(example, "example", {"kind", "alpha"}, {"kind", "alpha"})
    kind = example["kind"]
    alpha = _num(example["alpha"], "alpha", positive=True)
    if kind == "power":
        mapping = Power(alpha)
    elif kind == "loglog":
        mapping = LogLog(alpha)
    else:
        raise ConfigError(f"sharpness example kind must be power or loglog, got {kind!r}")
    ladder = parse_ladder(cfg["ladder"])
    report = sharpness_ladder(mapping, ladder, _quadrature(cfg))
    path = write_csv(outdir / "sharpness.csv", ["R", "ratio"], report.rows)
    say(f"wrote {path} ({len(report.rows)} rows)")
    if plot:
        svg = write_svg_polyline(
            outdir / "sharpness.svg",
            [row[0] for row in report.rows],
            [row[1] for row in report.rows],
            log_x=True,
            label="sharpness ratio vs R",
        )
        say(f"wrote {svg}")
    if report.kind == "power":
        ok = report.max_deviation <= 1e-9
        say(f"{'PASS' if ok else 'FAIL'} ratio constant at 1 "
            f"(max deviation {fmt(report.max_deviation)})")
    else:
        ok = report.strictly_decreasing and report.halved
        say(f"{'PASS' if ok else 'FAIL'} ratio strictly decreasing "
            f"and below half its initial value "
            f"(decreasing={fmt(report.strictly_decreasing)}, halved={fmt(report.halved)})")
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_nonexist(cfg, outdir: Path, plot: bool, say) -> int:
    _require_keys(
        cfg,
        "config",
        {"observed", "mapping", "ladder", "profile", "r0", "n"},
        {"profile", "r0"},
    )
    profile = parse_profile(cfg["profile"])
    r0 = _num(cfg["r0"], "r0", positive=True)
    if "observed" in cfg:
        if "mapping" in cfg:
            raise ConfigError("give either observed data or a mapping, not both")
        raw = cfg["observed"]
        if not isinstance(raw, list) or not raw:
            raise ConfigError("observed must be a non-empty list of [R, M] pairs")
        observed = [
            (_num(p[0], "R", positive=True), _num(p[1], "M", positive=True))
            for p in raw
            if isinstance(p, list) and len(p) == 2
        ]
        if len(observed) != len(raw):
            raise ConfigError("observed entries must be [R, M] pairs")
    elif "mapping" in cfg:
        if "ladder" not in cfg:
            raise ConfigError("a mapping-based diagnostic needs a ladder")
        mapping = parse_mapping(cfg["mapping"])
        ladder = parse_ladder(cfg["ladder"])
        q = _quadrature(cfg)
        observed = []
        for R in ladder.radii():
            m_max, _ = modulus_extremes(mapping, 0j, float(R), q)
            observed.append((float(R), m_max))
    else:
        raise ConfigError("need observed data or a mapping plus ladder")
    report = nonexistence_diagnostic(observed, profile, r0)
    path = write_csv(outdir / "nonexist.csv", ["R", "M", "v"], report.rows)
    say(f"wrote {path} ({len(report.rows)} rows)")
    say(f"verdict: {report.verdict} ({report.note})")
    return EXIT_OK


COMMANDS = {
    "kappa": cmd_kappa,
    "envelope": cmd_envelope,
    "verify": cmd_verify,
    "extremal": cmd_extremal,
    "sharpness": cmd_sharpness,
    "nonexist": cmd_nonexist,
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="beltrami-growth",
        description="Growth and residual checks for the nonlinear Beltrami "
        "equation with the Jacobian on the right-hand side.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="path to a JSON config")
        p.add_argument("--out", default=".", help="output directory for CSV/SVG")
        p.add_argument("--plot", action="store_true", help="also emit SVG plots")
        p.add_argument("--quiet", action="store_true", help="suppress progress text")
    args = parser.parse_args(argv)

    def say(message: str):
        if not args.quiet:
            print(message)

    try:
        with open(args.config) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    outdir = Path(args.out)
    try:
        outdir.mkdir(parents=True, exist_ok=True)
        return COMMANDS[args.command](cfg, outdir, args.plot, say)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (BeltramiGrowthError, OverflowError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    raise SystemExit(main())
