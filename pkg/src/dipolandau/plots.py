"""Figure rendering for the command-line report paths.

Each helper takes the already-computed table rows and writes one PNG next
to (or instead of) the delimited output. Matplotlib is imported lazily
with the Agg backend so headless runs and table-only runs stay cheap.
"""

from __future__ import annotations

__all__ = [
    "spectrum_figure",
    "wavefunction_figure",
    "crosscheck_figure",
    "convergence_figure",
]


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    _pyplot().close(fig)


def spectrum_figure(rows, model_label, path):
    """Level diagram: energy (units of omega) against the angular number."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    by_nu = {}
    for row in rows:
        by_nu.setdefault(row["nu"], []).append((row["ell"], row["energy_over_omega"]))
    for nu, points in sorted(by_nu.items()):
        points.sort()
        ax.plot(
            [p[0] for p in points],
            [p[1] for p in points],
            "o-",
            markersize=4,
            linewidth=0.8,
            label=f"nu = {nu}",
        )
    ax.set_xlabel("angular number l")
    ax.set_ylabel("energy / omega")
    ax.set_title(f"{model_label} levels")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    _save(fig, path)


def wavefunction_figure(samples, label, path):
    """Radial profile R(r) from sampled values."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot([s[0] for s in samples], [s[1] for s in samples], "b-", linewidth=1.5)
    ax.axhline(0.0, color="gray", linewidth=0.5)
    ax.set_xlabel("r")
    ax.set_ylabel("R(r)")
    ax.set_title(label)
    ax.grid(True, alpha=0.3)
    _save(fig, path)


def crosscheck_figure(rows, tolerance, path):
    """Per-level relative error of the grid solve against the closed form."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ks = [row["k"] for row in rows]
    errors = [row["relative_error"] for row in rows]
    ax.semilogy(ks, errors, "bo-", linewidth=1.0, label="measured")
    ax.axhline(tolerance, color="red", linestyle="--", linewidth=1.0, label="tolerance")
    ax.set_xlabel("level index")
    ax.set_ylabel("relative error")
    ax.set_xticks(ks)
    ax.set_title("grid solve vs closed form")
    ax.grid(True, alpha=0.3, which="both")
    ax.legend(fontsize=8)
    _save(fig, path)


def convergence_figure(rows, path):
    """Worst eigenvalue error against the grid step, with an h^2 guide."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    steps = [row["step"] for row in rows]
    errors = [row["max_rel_error"] for row in rows]
    ax.loglog(steps, errors, "bo-", linewidth=1.0, label="measured")
    guide = [errors[0] * (h / steps[0]) ** 2 for h in steps]
    ax.loglog(steps, guide, "k--", linewidth=1.0, label="order 2 guide")
    ax.set_xlabel("grid step h")
    ax.set_ylabel("max relative error")
    ax.set_title("eigenvalue convergence")
    ax.grid(True, alpha=0.3, which="both")
    ax.legend(fontsize=8)
    _save(fig, path)
