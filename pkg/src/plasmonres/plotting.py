"""Static figures for the CLI report path (Agg backend, deterministic SVG)."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .modes import ModeField  # noqa: E402

plt.rcParams["svg.hashsalt"] = "plasmonres"
plt.rcParams["svg.fonttype"] = "none"

_META = {"svg": {"Date": None}, "pdf": {"CreationDate": None}, "png": {}}


def _save(fig, path):
    fmt = str(path).rsplit(".", 1)[-1].lower()
    fig.savefig(path, metadata=_META.get(fmt, {}), bbox_inches="tight")
    plt.close(fig)


def field_figure(f: ModeField, path, clip: float | None = None):
    """Heat map of ``Re u`` over the polar lattice, drawn in Cartesian axes."""
    vals = f.plot_values(clip)
    vmax = float(np.max(np.abs(vals))) or 1.0
    theta = np.append(f.theta, 2 * np.pi)
    vals = np.concatenate([vals, vals[:, :1]], axis=1)
    R, T = np.meshgrid(f.r, theta, indexing="ij")
    fig, ax = plt.subplots(figsize=(5, 4.4))
    mesh = ax.pcolormesh(R * np.cos(T), R * np.sin(T), vals, cmap="RdBu_r",
                         vmin=-vmax, vmax=vmax, shading="gouraud", rasterized=True)
    t = np.linspace(0, 2 * np.pi, 400)
    ax.plot(f.a * np.cos(t), f.a * np.sin(t), "k-", lw=0.6)
    ax.set_aspect("equal")
    ax.set_title(f"m = {f.m},  lambda = {f.lam.real:.5f} {f.lam.imag:+.3e} i", fontsize=9)
    fig.colorbar(mesh, ax=ax, label="Re u")
    _save(fig, path)


def resonance_figure(rows, path):
    """Scatter of resonances in the lower half plane (log scale in -Im)."""
    fig, ax = plt.subplots(figsize=(6, 3.5))
    if rows:
        re = np.array([r.lam.real for r in rows])
        im = np.array([-r.lam.imag for r in rows])
        ms = np.array([r.m for r in rows])
        sc = ax.scatter(re, im, c=ms, s=12, cmap="viridis")
        fig.colorbar(sc, ax=ax, label="m")
        ax.set_yscale("log")
    ax.set_xlabel("Re lambda")
    ax.set_ylabel("-Im lambda")
    _save(fig, path)


def dispersion_figure(table, path):
    """Principal, corrected and exact frequencies against the mode number."""
    fig, ax = plt.subplots(figsize=(5, 3.5))
    m = np.array([row["m"] for row in table], dtype=float)
    for key, style in (("principal", "--"), ("corrected", "-"), ("camo_formula", ":")):
        y = np.array([np.nan if row[key] is None else row[key] for row in table], dtype=float)
        ax.plot(m, y, style, label=key)
    ex = np.array([np.nan if row["exact_if_available"] is None else row["exact_if_available"]
                   for row in table], dtype=float)
    ax.plot(m, ex, "ko", ms=3, label="exact")
    ax.set_xlabel("m")
    ax.set_ylabel("Re lambda")
    ax.legend(fontsize=8)
    _save(fig, path)
