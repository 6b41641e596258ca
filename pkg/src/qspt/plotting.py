"""Static figure rendering for run artifacts.

Figures are conveniences next to the CSV outputs; everything renders through
the Agg backend and saves as SVG.  A fixed hash salt and stripped date
metadata keep the files reproducible.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

plt.rcParams["svg.hashsalt"] = "qspt"


def save_figure(fig, path) -> None:
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def pulse_train_figure(tau, relative_intensity, title: str = "Pulse train"):
    """Relative intensity against retarded time at the medium exit."""
    fig, ax = plt.subplots(figsize=(7.0, 4.0))
    ax.plot(np.asarray(tau) / (2.0 * np.pi), relative_intensity, lw=1.2)
    ax.axhline(1.0, color="gray", lw=0.8, ls="--", alpha=0.6)
    ax.set_xlabel(r"retarded time $\Delta_0 (t - z/c) / 2\pi$")
    ax.set_ylabel("relative intensity")
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    return fig


def bracket_figure(etas, bracket_abs, lambda_gap):
    """Bracket magnitude and branch gap against the field amplitude."""
    fig, axes = plt.subplots(2, 1, figsize=(6.5, 6.0), sharex=True)
    axes[0].plot(etas, bracket_abs, lw=1.2)
    axes[0].set_ylabel(r"$|[A_2, A_1]|$")
    axes[0].grid(True, alpha=0.3)
    axes[1].plot(etas, lambda_gap, lw=1.2, color="tab:orange")
    axes[1].set_xlabel(r"field amplitude $\eta$")
    axes[1].set_ylabel(r"$\lambda_1 - \lambda_2$")
    axes[1].grid(True, alpha=0.3)
    fig.tight_layout()
    return fig


def intensity_map_figure(field):
    """Space-time intensity map of a propagated field."""
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    mesh = ax.pcolormesh(
        field.tau_grid / (2.0 * np.pi),
        field.zeta_grid,
        field.values,
        shading="auto",
        cmap="inferno",
    )
    fig.colorbar(mesh, ax=ax, label=r"$|\eta|^2$")
    ax.set_xlabel(r"retarded time $/ 2\pi$")
    ax.set_ylabel(r"$\zeta = \Delta_0 z / c$")
    ax.set_title(f"intensity ({field.mode})")
    fig.tight_layout()
    return fig
