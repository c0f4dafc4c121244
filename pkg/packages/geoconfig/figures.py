"""SVG figures of planar geodesics."""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.patches import Circle  # noqa: E402

from .altmetric import plan_alt  # noqa: E402
from .errors import FigureDimensionError  # noqa: E402
from .ordered import GeodesicType, classify, geodesic  # noqa: E402
from .vecgeo import OrderedConfig, SampledPath, Vec  # noqa: E402

FIXTURES: dict[str, tuple[OrderedConfig, OrderedConfig]] = {
    "ex1": (OrderedConfig([-6.0, 4.0], [6.0, 8.0]), OrderedConfig([8.0, -6.0], [2.0, -10.0])),
    "ex2": (OrderedConfig([-6.0, 4.0], [6.0, 12.0]), OrderedConfig([8.0, -6.0], [2.0, -10.0])),
}
FIGURES = ("fig1", "fig2", "fig3")

FIRST_COLOR = "#2563eb"
SECOND_COLOR = "#dc2626"
SAMPLES = 400


def _require_plane(*configs: OrderedConfig) -> None:
    for config in configs:
        if config.dim != 2:
            raise FigureDimensionError(f"figures only in the plane, got dimension {config.dim}")


def _contact_circles(P: OrderedConfig, Q: OrderedConfig) -> list[Vec]:
    cls = classify(P, Q)
    if cls.tag is GeodesicType.TYPE_A:
        return []
    assert cls.x is not None and cls.y is not None
    return [cls.x, cls.y]


def scene(paths: list[SampledPath], circles: list[Vec], scale: float = 1.0) -> tuple[list[np.ndarray], list[Vec]]:
    """Sampled trajectories and contact circle centers, multiplied by `scale`.

    Paths and circles live in solver units (clearance 2); `scale` maps them back
    to the units of the query.
    """
    ts = np.linspace(0.0, 1.0, SAMPLES)
    return [path.sample(ts) * scale for path in paths], [np.asarray(center) * scale for center in circles]


def draw(paths: list[SampledPath], circles: list[Vec], title: str, out: Path, scale: float = 1.0) -> Path:
    """Draw both point trajectories of every path, the contact circles and the endpoints.

    Args:
        paths: Paths in F(R^2, 2)
        circles: Centers of unit circles to draw
        title: Figure title
        out: SVG file to write
        scale: Factor from solver units to the units of the drawing; circles get radius `scale`

    Returns:
        The written path
    """
    trajectories, centers = scene(paths, circles, scale)
    fig, ax = plt.subplots(figsize=(6, 6))
    points = []
    for i, samples in enumerate(trajectories):
        points.append(samples.reshape(-1, 2))
        ax.plot(samples[:, 0, 0], samples[:, 0, 1], color=FIRST_COLOR, linewidth=1.5, gid=f"path{i}-first")
        ax.plot(samples[:, 1, 0], samples[:, 1, 1], color=SECOND_COLOR, linewidth=1.5, gid=f"path{i}-second")
        for end, marker in ((samples[0], "o"), (samples[-1], "s")):
            ax.plot(end[0, 0], end[0, 1], marker, color=FIRST_COLOR, markersize=5)
            ax.plot(end[1, 0], end[1, 1], marker, color=SECOND_COLOR, markersize=5)

    for center, gid in zip(centers, ("contact-x", "contact-y"), strict=False):
        ax.add_patch(Circle((float(center[0]), float(center[1])), scale, fill=False, color="#6b7280", gid=gid))
        points.append(np.array([center - scale, center + scale]))

    everything = np.concatenate(points)
    low, high = everything.min(axis=0), everything.max(axis=0)
    margin = 0.1 * np.maximum(high - low, 1e-9)
    ax.set_xlim(low[0] - margin[0], high[0] + margin[0])
    ax.set_ylim(low[1] - margin[1], high[1] + margin[1])
    ax.set_aspect("equal")
    ax.axhline(0.0, color="#9ca3af", linewidth=0.8)
    ax.axvline(0.0, color="#9ca3af", linewidth=0.8)
    ax.grid(True, alpha=0.3)
    ax.set_title(title)
    fig.tight_layout()

    out = Path(out)
    with matplotlib.rc_context({"svg.hashsalt": "geoconfig"}):
        fig.savefig(out, format="svg", metadata={"Date": None})
    plt.close(fig)
    return out


def render_fixture(name: str, out: Path) -> Path:
    """Render one of the fixed figures: fig1, fig2 or fig3."""
    if name == "fig1":
        P, Q = FIXTURES["ex1"]
        return draw([geodesic(P, Q)], _contact_circles(P, Q), "Example of geodesic", out)
    if name == "fig2":
        P, Q = FIXTURES["ex2"]
        w = np.array([2.0, -3.0]) / np.sqrt(13.0)
        paths = [geodesic(P, Q, w), geodesic(P, Q, -w)]
        return draw(paths, _contact_circles(P, Q), "Example of two geodesics", out)
    if name == "fig3":
        P, Q = FIXTURES["ex1"]
        return draw([plan_alt(P, Q)], [], "Geodesic under the product metric", out)
    raise ValueError(f"unknown figure {name!r}; expected one of {', '.join(FIGURES)}")


def render_path(
    P: OrderedConfig, Q: OrderedConfig, path: SampledPath, out: Path, contact: bool = True, scale: float = 1.0
) -> Path:
    """Render an arbitrary planar query given in solver units, drawn multiplied by `scale`.

    Raises:
        FigureDimensionError: If the configurations are not planar
    """
    _require_plane(P, Q)
    circles = _contact_circles(P, Q) if contact else []
    return draw([path], circles, "Geodesic", out, scale=scale)
