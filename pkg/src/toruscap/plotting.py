"""Rendering of F surfaces to image files.

Import stays local to the render call so the CLI's compute paths do not pay
the matplotlib startup cost.
"""

from __future__ import annotations

from .optimize import FSurface


def render_surface(surface: FSurface, path: str, title: str = "F over the tau plane") -> None:
    """Render the mesh as a 3D surface (the classic mesh-plot view) to path."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    import numpy as np

    re_mesh, im_mesh = np.meshgrid(surface.re_grid, surface.im_grid)
    fig = plt.figure(figsize=(8, 6))
    ax = fig.add_subplot(projection="3d")
    ax.plot_surface(re_mesh, im_mesh, surface.values, cmap="viridis",
                    linewidth=0, antialiased=True)
    ax.set_xlabel("Re tau")
    ax.set_ylabel("Im tau")
    ax.set_zlabel("F")
    ax.set_title(title)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
