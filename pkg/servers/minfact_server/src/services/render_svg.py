"""Chord diagrams as SVG: the unit circle plus the chords of one or more laminations."""
import io
import math
from pathlib import Path
from typing import List, Optional, Sequence

import matplotlib

matplotlib.use("Agg")
from matplotlib.collections import LineCollection  # noqa: E402
from matplotlib.figure import Figure  # noqa: E402
from matplotlib.patches import Circle  # noqa: E402

from shared.config import FrameSweep  # noqa: E402
from shared.types import Factorization, Lamination, RangeError  # noqa: E402
from shared.utils.logger import get_logger  # noqa: E402

from servers.minfact_server.src.services.lamination import (  # noqa: E402
    lam_of_forest,
    lam_of_partition,
)
from servers.minfact_server.src.services.samplers import (  # noqa: E402
    forest_edges,
    partial_product_partition,
)

logger = get_logger(__name__)

PANEL_POINTS = 1000.0
DPI = 72.0
CIRCLE_WIDTH = 1.0
CHORD_WIDTH = 2.0
CHORD_COLOR = "#1f3b73"
HASH_SALT = "minfact"


def chord_width(n: int, chords: int) -> float:
    """Stroke width shrinking like 1/log(n); continuous laminations use their chord count."""
    size = n if n > 0 else chords
    return CHORD_WIDTH / max(math.log(max(size, 1)), 1.0)


def _draw(ax, lamination: Lamination) -> None:
    ax.set_xlim(-1.02, 1.02)
    ax.set_ylim(-1.02, 1.02)
    ax.set_aspect("equal")
    ax.axis("off")
    ax.add_patch(Circle((0.0, 0.0), 1.0, fill=False, linewidth=CIRCLE_WIDTH, color="black"))
    segments = [c.endpoints() for c in lamination.sorted_chords() if not c.is_point]
    if segments:
        ax.add_collection(
            LineCollection(
                segments,
                linewidths=chord_width(lamination.n, len(segments)),
                colors=CHORD_COLOR,
                capstyle="round",
            )
        )


def render(laminations: Sequence[Lamination]) -> bytes:
    """One panel per lamination, side by side; identical input gives identical bytes."""
    if not laminations:
        raise RangeError("nothing to render")
    with matplotlib.rc_context({"svg.hashsalt": HASH_SALT, "svg.fonttype": "none"}):
        fig = Figure(figsize=(PANEL_POINTS * len(laminations) / DPI, PANEL_POINTS / DPI), dpi=DPI)
        axes = fig.subplots(1, len(laminations), squeeze=False)[0]
        fig.subplots_adjust(left=0, right=1, bottom=0, top=1, wspace=0)
        for ax, lamination in zip(axes, laminations):
            _draw(ax, lamination)
        buffer = io.BytesIO()
        fig.savefig(buffer, format="svg", metadata={"Date": None})
    return buffer.getvalue()


def write_svg(laminations: Sequence[Lamination], path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(render(laminations))
    logger.debug("write_svg", path=str(path), panels=len(laminations))
    return path


def prefix_laminations(f: Factorization, k: int, panels: str = "forest") -> List[Lamination]:
    """Laminations of the first k factors: the forest chords, the partition polygons or both."""
    if panels not in ("forest", "partition", "both"):
        raise RangeError(f"unknown panel choice {panels!r}")
    out: List[Lamination] = []
    if panels in ("forest", "both"):
        out.append(lam_of_forest(f.n, forest_edges(f, k)))
    if panels in ("partition", "both"):
        out.append(lam_of_partition(partial_product_partition(f, k)) if k else Lamination(f.n, frozenset()))
    return out


def frame_steps(n: int, sweep: FrameSweep) -> List[int]:
    """k = floor(c sqrt(n)) for every c of the sweep, clipped to [0, n-1]."""
    return [min(max(int(math.floor(c * math.sqrt(n))), 0), n - 1) for c in sweep.values()]


def render_frames(
    f: Factorization,
    sweep: FrameSweep,
    out_dir: Path,
    panels: str = "forest",
    stem: Optional[str] = None,
) -> List[Path]:
    """One SVG per value of c, named ``<stem>-0000.svg``, ``<stem>-0001.svg``, ..."""
    stem = stem or f"frame-n{f.n}"
    paths = []
    for index, k in enumerate(frame_steps(f.n, sweep)):
        paths.append(write_svg(prefix_laminations(f, k, panels), Path(out_dir) / f"{stem}-{index:04d}.svg"))
    logger.info("render_frames", n=f.n, frames=len(paths), out_dir=str(out_dir))
    return paths
