"""Figure construction: document polylines to a 3D matplotlib axes.

No geometry is computed here beyond projection; every drawn vertex is a
document vertex, in document order.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .document import RenderSpec, color_value, load_document


def draw_document(doc: dict, spec: RenderSpec):
    """Build the figure; returns (figure, axes)."""
    fig = plt.figure(figsize=(8.0, 8.0), dpi=110)
    ax = fig.add_subplot(projection="3d")
    fibers = doc["fibers"]

    if fibers:
        keys = np.array([color_value(f, spec.color_by) for f in fibers])
        lo, hi = float(keys.min()), float(keys.max())
        span = hi - lo if hi > lo else 1.0
        cmap = plt.get_cmap("viridis")
        for fiber, key in zip(fibers, keys):
            pts = np.asarray(fiber["points"], dtype=float)
            ax.plot(
                pts[:, 0],
                pts[:, 1],
                pts[:, 2],
                color=cmap((key - lo) / span),
                linewidth=0.9,
            )

    if doc["space"] == "H3-ball":
        ax.set_xlim(-1, 1)
        ax.set_ylim(-1, 1)
        ax.set_zlim(-1, 1)
    ax.set_box_aspect((1, 1, 1))
    ax.view_init(elev=spec.elev, azim=spec.azim)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_zlabel("z")
    return fig, ax


def drawn_vertices(ax) -> list[np.ndarray]:
    """Vertex arrays of every polyline on the axes, in draw order."""
    out = []
    for line in ax.lines:
        xs, ys, zs = line.get_data_3d()
        out.append(np.column_stack([xs, ys, zs]))
    return out


def render(spec: RenderSpec) -> str:
    """Render the input document to the output image; returns the path."""
    doc = load_document(spec.input_path)
    fig, _ax = draw_document(doc, spec)
    fig.savefig(spec.output_path)
    plt.close(fig)
    return spec.output_path
