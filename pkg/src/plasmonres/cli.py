"""Command-line interface: classify, solve, count, disp, field, selftest.

Exit codes: 0 success, 1 usage or configuration error, 2 regime or domain
error, 3 partial numerical failure.  Payload files depend only on the
configuration and flags; the run timestamp goes to ``<command>.meta.json``.
"""
from __future__ import annotations

import argparse
import csv
import datetime as _dt
import json
import math
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import __version__
from .cavity import Disk, Regime, validate_jump
from .collar import corrected_quasi_eigenvalue
from .config import RunConfig, load
from .dispersion import camo_quasi_eigenvalue, principal_quasi_eigenvalue
from .errors import ConfigError, NoBracket, PlasmonError
from .modes import GridSpec, localization_report, synthesize, trace_ratio
from .rootfind import Rect, scan_modes
from .weylcount import count_disk, predicted_count, region_volume

EXIT_OK, EXIT_CONFIG, EXIT_DOMAIN, EXIT_PARTIAL = 0, 1, 2, 3

SOLVE_HEADER = ("m", "re_lambda", "im_lambda", "multiplicity", "residual", "newton_iters")
DISP_HEADER = ("m", "principal", "corrected", "camo_formula", "exact_if_available")
FIELD_HEADER = ("r", "theta", "re_u", "im_u", "log_abs_u")


class DomainFailure(Exception):
    """Raised by a command for conditions that map to exit code 2."""


# output helpers

def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return str(int(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else None
    return obj


def write_json(path: Path, obj) -> None:
    text = json.dumps(_clean(obj), sort_keys=True, indent=2, allow_nan=False)
    Path(path).write_text(text + "\n", encoding="utf-8")


def _meta(out: Path, command: str, argv) -> None:
    stamp = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    write_json(out / f"{command}.meta.json",
               {"command": command, "argv": list(argv), "version": __version__, "timestamp": stamp})


def _outdir(cfg: RunConfig) -> Path:
    cfg.output_dir.mkdir(parents=True, exist_ok=True)
    return cfg.output_dir


def _disk_index(cfg: RunConfig) -> tuple[float, float]:
    c = cfg.cavity()
    if not isinstance(c.boundary, Disk) or c.index_n is None or cfg.dimension != 2:
        raise ConfigError("this command needs a two-dimensional disk with constant index")
    return float(c.index_n[0]), c.boundary.radius


def _check_regime(cfg: RunConfig, allow_non_plasmonic: bool = True):
    c = cfg.cavity()
    rep = validate_jump(c, cfg.jump_delta)
    if rep.regime is Regime.DEGENERATE:
        raise DomainFailure("jump condition violated: rho_O^2 gO - tau^2 rho_I^2 gI vanishes "
                            f"within {rep.threshold:.3g} on the boundary")
    if not allow_non_plasmonic and rep.regime is Regime.NON_PLASMONIC:
        raise DomainFailure("cavity is non-plasmonic")
    return c, rep


# commands

def cmd_classify(cfg: RunConfig, argv=()) -> int:
    """Report the plasmonic regime of the cavity."""
    c = cfg.cavity()
    rep = validate_jump(c, cfg.jump_delta)
    out = _outdir(cfg)
    payload = rep.as_dict()
    write_json(out / "classify.json", payload)
    _meta(out, "classify", argv)
    print(json.dumps(_clean(payload), sort_keys=True))
    if rep.regime is Regime.DEGENERATE:
        print("error: jump condition rho_O^2|xi|_O^2 != tau^2 rho_I^2|xi|_I^2 fails "
              "(degenerate regime)", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


def _scan(cfg: RunConfig, modes, rect: Rect):
    n, a = _disk_index(cfg)
    _check_regime(cfg)
    return n, a, scan_modes(n, a, modes, rect, tol=cfg.root_tol, workers=cfg.workers,
                            interior_exponent=cfg.interior_exponent)


def cmd_solve(cfg: RunConfig, argv=()) -> int:
    """Tabulate disk resonances in the scan window."""
    n, a, report = _scan(cfg, cfg.modes, cfg.window)
    out = _outdir(cfg)
    rows = [(r.m, r.lam.real, r.lam.imag, r.multiplicity, r.residual, r.newton_iters)
            for r in report.resonances]
    if "csv" in cfg.formats:
        write_csv(out / "resonances.csv", SOLVE_HEADER, rows)
    w = cfg.window
    if "json" in cfg.formats:
        write_json(out / "resonances.json", {
            "n": n, "radius": a, "interior_exponent": cfg.interior_exponent,
            "window": [w.re_min, w.re_max, w.im_min, w.im_max],
            "resonances": [dict(zip(SOLVE_HEADER, row)) for row in rows],
            "failures": {str(k): v for k, v in sorted(report.failures.items())},
        })
    if "svg" in cfg.formats:
        from .plotting import resonance_figure
        resonance_figure(report.resonances, out / "resonances.svg")
    write_json(out / "solve.failures.json", {str(k): v for k, v in sorted(report.failures.items())})
    _meta(out, "solve", argv)
    print(f"{len(rows)} resonances, {len(report.failures)} failed modes -> {out}")
    return EXIT_PARTIAL if report.failures else EXIT_OK


def cmd_count(cfg: RunConfig, argv=()) -> int:
    """Compare the exact resonance count with the phase-space prediction."""
    c, _ = _check_regime(cfg)
    lam = cfg.count_lambda
    region = region_volume(c)
    predicted = predicted_count(c, lam)
    payload = {"lambda": lam, "strip_depth": cfg.strip_depth, "volume": region.volume,
               "predicted": predicted, "exact": None, "ratio": None}
    failures = {}
    if lam == 0:
        payload.update(exact=0, predicted=0.0)
    elif isinstance(c.boundary, Disk) and c.constant and c.dimension == 2:
        res = count_disk(c, lam, cfg.strip_depth, cfg.margin, cfg.workers, cfg.root_tol,
                         cfg.interior_exponent)
        failures = res.scan.failures
        payload.update(exact=res.exact, ratio=res.ratio)
        payload["failures"] = {str(k): v for k, v in sorted(failures.items())}
    out = _outdir(cfg)
    write_json(out / "count.json", payload)
    _meta(out, "count", argv)
    print(json.dumps(_clean(payload), sort_keys=True))
    return EXIT_PARTIAL if failures else EXIT_OK


def _nearest_root(n, a, m, target, p, tol):
    rect = Rect(max(0.05, 0.5 * target), 1.5 * target + 1.0, -0.5, -1e-9)
    rep = scan_modes(n, a, [m], rect, tol=tol, interior_exponent=p)
    if not rep.resonances:
        return None
    return min(rep.resonances, key=lambda r: abs(r.lam.real - target)).lam


def cmd_disp(cfg: RunConfig, argv=()) -> int:
    """Compare dispersion-based frequencies with exact roots."""
    c, _ = _check_regime(cfg, allow_non_plasmonic=False)
    n, a = _disk_index(cfg)
    table = []
    for m in sorted({abs(m) for m in cfg.modes if m != 0}):
        p = principal_quasi_eigenvalue(c, m)
        try:
            corr = corrected_quasi_eigenvalue(c, m)
        except NoBracket:
            corr = None
        camo = camo_quasi_eigenvalue(n, c.boundary.length(), m) if n > 1 else None
        exact = _nearest_root(n, a, m, p, cfg.interior_exponent, cfg.root_tol)
        table.append({"m": m, "principal": p, "corrected": corr, "camo_formula": camo,
                      "exact_if_available": None if exact is None else exact.real})
    out = _outdir(cfg)
    if "csv" in cfg.formats:
        write_csv(out / "dispersion.csv", DISP_HEADER, [[row[k] for k in DISP_HEADER] for row in table])
    if "json" in cfg.formats:
        write_json(out / "dispersion.json", table)
    if "svg" in cfg.formats:
        from .plotting import dispersion_figure
        dispersion_figure(table, out / "dispersion.svg")
    _meta(out, "disp", argv)
    print(f"{len(table)} modes -> {out}")
    return EXIT_OK


def cmd_field(cfg: RunConfig, argv=()) -> int:
    """Synthesize one resonant state and its localization report."""
    if cfg.field_m is None:
        raise ConfigError("field needs a resonance selector ([field] m or --m)")
    n, a, report = _scan(cfg, [cfg.field_m], cfg.window)
    if report.failures:
        print(f"error: scan of mode {cfg.field_m} failed: {report.failures}", file=sys.stderr)
        return EXIT_PARTIAL
    roots = report.resonances
    if cfg.field_root_index >= len(roots):
        raise DomainFailure(f"mode {cfg.field_m} has {len(roots)} roots in the window; "
                            f"root_index {cfg.field_root_index} is out of range")
    res = roots[cfg.field_root_index]
    grid = GridSpec(r_max=cfg.field_r_max, n_theta=cfg.field_n_theta)
    f = synthesize(cfg.cavity(), res, grid, cfg.interior_exponent)
    loc = localization_report(f)
    loc.update(m=res.m, re_lambda=res.lam.real, im_lambda=res.lam.imag)
    loc["trace_ratio_0.3"] = trace_ratio(f, min(0.3, 0.5 * a))
    out = _outdir(cfg)
    if "csv" in cfg.formats:
        write_csv(out / "field.csv", FIELD_HEADER, f.rows())
    if "json" in cfg.formats:
        write_json(out / "field.json", loc)
    if "svg" in cfg.formats:
        from .plotting import field_figure
        field_figure(f, out / "field.svg", cfg.field_clip)
    _meta(out, "field", argv)
    print(json.dumps(_clean(loc), sort_keys=True))
    return EXIT_OK


def cmd_selftest(cfg: RunConfig, argv=()) -> int:
    """Run the embedded invariant checks."""
    from .selftest import run_checks

    results = run_checks()
    for name, ok, detail in results:
        print(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
    return EXIT_OK if all(ok for _, ok, _ in results) else EXIT_PARTIAL


COMMANDS = {
    "classify": cmd_classify,
    "solve": cmd_solve,
    "count": cmd_count,
    "disp": cmd_disp,
    "field": cmd_field,
    "selftest": cmd_selftest,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="plasmonres", description="Surface-plasmon resonances of index cavities")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sp = sub.add_parser(name, help=COMMANDS[name].__doc__)
        sp.add_argument("-c", "--config", help="INI configuration file")
        sp.add_argument("-n", "--index", type=float, help="constant index (overrides [cavity] n)")
        sp.add_argument("-o", "--output-dir", help="output directory")
        sp.add_argument("-j", "--workers", type=int, help="parallel worker processes")
        sp.add_argument("--formats", help="comma list of csv, json, svg")
        if name == "count":
            sp.add_argument("--lambda", dest="lam", type=float, help="counting frequency")
        if name == "field":
            sp.add_argument("--m", type=int, help="mode number of the resonance")
    return ap


def _apply_flags(cfg: RunConfig, args) -> RunConfig:
    from .config import validate

    if args.index is not None:
        cfg = replace(cfg, n=args.index, n_table=None)
    if args.output_dir is not None:
        cfg = replace(cfg, output_dir=Path(args.output_dir))
    if args.workers is not None:
        cfg = replace(cfg, workers=args.workers)
    if args.formats is not None:
        cfg = replace(cfg, formats=tuple(x.strip().lower() for x in args.formats.split(",") if x.strip()))
    if getattr(args, "lam", None) is not None:
        cfg = replace(cfg, count_lambda=args.lam)
    if getattr(args, "m", None) is not None:
        cfg = replace(cfg, field_m=args.m)
    validate(cfg)
    return cfg


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(argv)
    try:
        cfg = _apply_flags(load(args.config), args)
        return COMMANDS[args.command](cfg, argv)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (DomainFailure, PlasmonError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
