"""Figure rendering for bound curves."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def render_curve(points, path, title: str = "") -> None:
    """Render the per-theta bounds to an image file.

    `points` is a sequence of CurvePoint; columns that are None are skipped.
    """
    thetas = [p.theta for p in points]
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    ax.plot(thetas, [p.upper2 for p in points], color="tab:green",
            label="upper (two-scale)")
    upper3 = [(p.theta, p.upper3) for p in points if p.upper3 is not None]
    if upper3:
        ax.plot([t for t, _ in upper3], [v for _, v in upper3],
                color="tab:olive", linestyle="--", label="upper (three-scale)")
    ax.plot(thetas, [p.lower_env for p in points], color="tab:red",
            label="lower envelope")
    ax.plot(thetas, [p.lower_psi for p in points], color="tab:orange",
            linewidth=0.8, alpha=0.7, label="lower (mixed vectors)")
    ax.plot(thetas, [p.lower_linear for p in points], color="tab:blue",
            linewidth=0.8, alpha=0.7, label="lower (box line)")
    ax.plot(thetas, [p.lower_ffk for p in points], color="tab:purple",
            linewidth=0.8, alpha=0.7, label="lower (Hausdorff line)")
    ax.axhline(points[0].hdim, color="gray", linestyle=":", linewidth=0.8)
    ax.axhline(points[0].bdim, color="gray", linestyle=":", linewidth=0.8)
    ax.set_xlabel(r"$\theta$")
    ax.set_ylabel("dimension bound")
    if title:
        ax.set_title(title)
    ax.legend(loc="lower right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
