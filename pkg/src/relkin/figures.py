"""PNG rendering for the command-line reports.

Rendering is optional (the reports stand alone as text/CSV); every
function writes a single file and closes its figure so repeated calls
stay cheap and deterministic.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

DPI = 150


def _finish(fig, path: str) -> str:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    fig.savefig(path, dpi=DPI)
    plt.close(fig)
    return path


def render_rigidity(path: str, s_values, residuals, title: str) -> str:
    """Rigidity residual along the space point, log scale."""
    fig, ax = plt.subplots(figsize=(6.0, 3.6))
    r = np.maximum(np.asarray(residuals, dtype=float), 1e-18)
    ax.semilogy(np.asarray(s_values, dtype=float), r, lw=1.5)
    ax.set_xlabel("proper time s")
    ax.set_ylabel("rigidity residual")
    ax.set_title(title)
    ax.grid(True, which="both", alpha=0.3)
    return _finish(fig, path)


def render_gyro_history(path: str, history, title: str) -> str:
    """Comoving gyro components over proper time.

    history is a list of (s, h0) pairs with h0 a 4-vector in the initial
    rest space; the spatial chart components show the precession.
    """
    s = np.array([p[0] for p in history])
    h = np.array([p[1] for p in history])
    fig, ax = plt.subplots(figsize=(6.0, 3.6))
    for i, label in ((1, "x"), (2, "y"), (3, "z")):
        if np.abs(h[:, i]).max() > 1e-12:
            ax.plot(s, h[:, i], lw=1.4, label=label)
    ax.set_xlabel("proper time s")
    ax.set_ylabel("comoving gyro components")
    ax.set_title(title)
    ax.legend(loc="best", fontsize=8)
    ax.grid(True, alpha=0.3)
    return _finish(fig, path)


def render_orbit_gyro(path: str, points, vectors, title: str) -> str:
    """Orbit in the chart x-y plane with the transported vector drawn
    as arrows at sampled positions."""
    pts = np.asarray(points, dtype=float)
    vecs = np.asarray(vectors, dtype=float)
    fig, ax = plt.subplots(figsize=(4.8, 4.8))
    ax.plot(pts[:, 1], pts[:, 2], color="0.6", lw=1.0)
    scale = 0.35 * (pts[:, 1].max() - pts[:, 1].min() + 1e-9)
    ax.quiver(
        pts[:, 1],
        pts[:, 2],
        vecs[:, 1],
        vecs[:, 2],
        angles="xy",
        scale_units="xy",
        scale=1.0 / scale,
        width=0.004,
        color="tab:blue",
    )
    ax.set_aspect("equal")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    return _finish(fig, path)


def render_sweep(path: str, rows) -> str:
    """Unwrapped angles against speed for a sweep result."""
    v = np.array([r["v"] for r in rows])
    thomas = np.array([r["thomas_angle_unwrapped"] for r in rows])
    fouc = np.array([r["foucault_angle_unwrapped"] for r in rows])
    fig, ax = plt.subplots(figsize=(6.0, 3.6))
    ax.plot(v, thomas, "o-", lw=1.4, label="net gyro rotation")
    ax.plot(v, fouc, "s-", lw=1.4, label="accumulated precession")
    ax.set_xlabel("orbital speed v")
    ax.set_ylabel("angle per revolution [rad]")
    ax.legend(loc="best", fontsize=8)
    ax.grid(True, alpha=0.3)
    return _finish(fig, path)
