"""Run configuration: an INI file of ``key = value`` lines under sections.

Recognised sections and keys (all optional unless a command needs them)::

    [cavity]      n | n_table, geometry (disk | ellipse), radius, semi_axes,
                  dimension, samples, interior_exponent
    [window]      re_min, re_max, im_min, im_max
    [modes]       m_min, m_max  |  m (comma list)
    [tolerances]  root, jump_delta
    [output]      directory, formats (comma list of csv, json, svg)
    [run]         workers
    [count]       lambda, strip_depth, margin
    [field]       m, root_index, r_max, n_theta, clip

``n_table`` lists index values at equally spaced boundary angles starting
at 0; they are interpolated periodically.  The environment variable
``OUTPUT_DIR`` overrides ``[output] directory``.
"""
from __future__ import annotations

import configparser
import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .cavity import CavityModel, Curve, Disk, from_index
from .errors import ConfigError
from .rootfind import DEFAULT_TOL, Rect

FORMATS = ("csv", "json", "svg")

_KNOWN = {
    "cavity": {"n", "n_table", "geometry", "radius", "semi_axes", "dimension", "samples",
               "interior_exponent"},
    "window": {"re_min", "re_max", "im_min", "im_max"},
    "modes": {"m_min", "m_max", "m"},
    "tolerances": {"root", "jump_delta"},
    "output": {"directory", "formats"},
    "run": {"workers"},
    "count": {"lambda", "strip_depth", "margin"},
    "field": {"m", "root_index", "r_max", "n_theta", "clip"},
}


@dataclass
class RunConfig:
    n: float | None = 3.0
    n_table: tuple[float, ...] | None = None
    geometry: str = "disk"
    radius: float = 1.0
    semi_axes: tuple[float, float] = (1.0, 1.0)
    dimension: int = 2
    samples: int = 64
    interior_exponent: float = 0.5
    window: Rect = field(default_factory=lambda: Rect(0.05, 40.0, -0.5, -1e-9))
    modes: tuple[int, ...] = tuple(range(0, 61))
    root_tol: float = DEFAULT_TOL
    jump_delta: float | None = None
    output_dir: Path = Path("out")
    formats: tuple[str, ...] = ("csv", "json")
    workers: int = 1
    count_lambda: float = 40.0
    strip_depth: float = 0.5
    margin: int = 8
    field_m: int | None = None
    field_root_index: int = 0
    field_r_max: float | None = None
    field_n_theta: int = 128
    field_clip: float | None = None

    def cavity(self) -> CavityModel:
        if self.geometry == "disk":
            boundary = Disk(self.radius, self.samples)
        elif self.geometry == "ellipse":
            a, b = self.semi_axes
            boundary = Curve.ellipse(a, b, self.samples)
        else:
            raise ConfigError(f"unknown geometry {self.geometry!r}")
        if self.n_table is not None:
            table = np.asarray(self.n_table, dtype=float)
            nodes = 2 * np.pi * np.arange(len(table)) / len(table)
            n = lambda t: np.interp(t, nodes, table, period=2 * np.pi)  # noqa: E731
            if isinstance(boundary, Disk) and np.ptp(table) > 0:
                raise ConfigError("a disk needs a constant index; use geometry = ellipse")
            if isinstance(boundary, Disk):
                n = float(table[0])
        else:
            n = self.n
        return from_index(n, boundary, self.dimension)


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(x) for x in text.replace(",", " ").split())


def _ints(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.replace(",", " ").split())


def load(path: str | os.PathLike | None) -> RunConfig:
    """Parse a config file (``None`` gives the defaults) and validate it."""
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"))
    if path is not None:
        try:
            with open(path, encoding="utf-8") as fh:
                cp.read_file(fh)
        except (OSError, configparser.Error) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        cfg = _build(cp)
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from exc
    env = os.environ.get("OUTPUT_DIR")
    if env:
        cfg.output_dir = Path(env)
    validate(cfg)
    return cfg


def _build(cp: configparser.ConfigParser) -> RunConfig:
    for sec in cp.sections():
        if sec not in _KNOWN:
            raise ConfigError(f"unknown section [{sec}]")
        extra = set(cp[sec]) - _KNOWN[sec]
        if extra:
            raise ConfigError(f"unknown keys in [{sec}]: {', '.join(sorted(extra))}")
    cfg = RunConfig()
    if cp.has_section("cavity"):
        s = cp["cavity"]
        if "n" in s and "n_table" in s:
            raise ConfigError("give either n or n_table, not both")
        if "n" in s:
            cfg.n = s.getfloat("n")
        if "n_table" in s:
            cfg.n_table, cfg.n = _floats(s["n_table"]), None
        cfg.geometry = s.get("geometry", cfg.geometry).strip().lower()
        cfg.radius = s.getfloat("radius", cfg.radius)
        if "semi_axes" in s:
            axes = _floats(s["semi_axes"])
            if len(axes) != 2:
                raise ConfigError("semi_axes takes two values")
            cfg.semi_axes = axes
        cfg.dimension = s.getint("dimension", cfg.dimension)
        cfg.samples = s.getint("samples", cfg.samples)
        cfg.interior_exponent = s.getfloat("interior_exponent", cfg.interior_exponent)
    if cp.has_section("window"):
        s = cp["window"]
        w = cfg.window
        cfg.window = Rect(s.getfloat("re_min", w.re_min), s.getfloat("re_max", w.re_max),
                          s.getfloat("im_min", w.im_min), s.getfloat("im_max", w.im_max))
    if cp.has_section("modes"):
        s = cp["modes"]
        if "m" in s:
            cfg.modes = _ints(s["m"])
        else:
            cfg.modes = tuple(range(s.getint("m_min", 0), s.getint("m_max", 60) + 1))
    if cp.has_section("tolerances"):
        s = cp["tolerances"]
        cfg.root_tol = s.getfloat("root", cfg.root_tol)
        if "jump_delta" in s:
            cfg.jump_delta = s.getfloat("jump_delta")
    if cp.has_section("output"):
        s = cp["output"]
        cfg.output_dir = Path(s.get("directory", str(cfg.output_dir)))
        if "formats" in s:
            cfg.formats = tuple(x.strip().lower() for x in s["formats"].split(",") if x.strip())
    if cp.has_section("run"):
        cfg.workers = cp["run"].getint("workers", cfg.workers)
    if cp.has_section("count"):
        s = cp["count"]
        cfg.count_lambda = s.getfloat("lambda", cfg.count_lambda)
        cfg.strip_depth = s.getfloat("strip_depth", cfg.strip_depth)
        cfg.margin = s.getint("margin", cfg.margin)
    if cp.has_section("field"):
        s = cp["field"]
        if "m" in s:
            cfg.field_m = s.getint("m")
        cfg.field_root_index = s.getint("root_index", cfg.field_root_index)
        if "r_max" in s:
            cfg.field_r_max = s.getfloat("r_max")
        cfg.field_n_theta = s.getint("n_theta", cfg.field_n_theta)
        if "clip" in s:
            cfg.field_clip = s.getfloat("clip")
    return cfg


def validate(cfg: RunConfig) -> None:
    w = cfg.window
    if not (w.re_min < w.re_max and w.im_min < w.im_max):
        raise ConfigError("window bounds must be increasing")
    if w.im_max > -1e-9:
        raise ConfigError("window must lie below the real axis (im_max <= -1e-9)")
    if cfg.root_tol <= 0 or (cfg.jump_delta is not None and cfg.jump_delta <= 0):
        raise ConfigError("tolerances must be positive")
    if cfg.workers < 1:
        raise ConfigError("workers must be >= 1")
    if cfg.samples < 3 or cfg.dimension < 2:
        raise ConfigError("need samples >= 3 and dimension >= 2")
    if cfg.radius <= 0 or min(cfg.semi_axes) <= 0:
        raise ConfigError("lengths must be positive")
    bad = set(cfg.formats) - set(FORMATS)
    if bad:
        raise ConfigError(f"unknown output formats: {', '.join(sorted(bad))}")
    if cfg.strip_depth <= 0 or cfg.margin < 0 or cfg.count_lambda < 0:
        raise ConfigError("count parameters out of range")
    if cfg.field_n_theta < 4 or cfg.field_root_index < 0:
        raise ConfigError("field parameters out of range")
    if not cfg.modes:
        raise ConfigError("mode list is empty")
