"""SVG drawings of tilings."""
import logging
from pathlib import Path
from typing import Dict, List, Sequence, Tuple, Union

from trilab._errors import TopologyMismatchError, WindowError
from trilab._generators import extract_tlr_indexing
from trilab._lattice import RationalLike, Triangle, format_rational, to_cartesian
from trilab._tiling import Tiling, materialize

logger = logging.getLogger(__name__)

SIZE_PALETTE = ("#0d3b66", "#faf0ca", "#f4d35e", "#ee964b", "#f95738", "#3c896d", "#9b5de5")
ROLE_COLORS = {"T": "#f4d35e", "L": "#ee964b", "R": "#0d3b66", "other": "#cccccc"}
PADDING = 10


def _roles(t: Tiling, margin: RationalLike) -> Dict[Triangle, str]:
    try:
        indexing = extract_tlr_indexing(t, margin)
    except (TopologyMismatchError, WindowError) as exc:
        logger.warning("no T/L/R labelling, drawing every tile as other: %s", exc)
        return {}
    roles = {}
    for cell in indexing.cells.values():
        for name, tile in (("T", cell.t), ("L", cell.l), ("R", cell.r)):
            if tile is not None:
                roles[tile] = name
    return roles


def _fills(
    tiles: Sequence[Triangle], t: Tiling, color_by: str, margin: RationalLike
) -> List[str]:
    if color_by == "size":
        sizes = sorted({tile.side for tile in tiles}, reverse=True)
        palette = {size: SIZE_PALETTE[idx % len(SIZE_PALETTE)] for idx, size in enumerate(sizes)}
        return [palette[tile.side] for tile in tiles]
    if color_by == "role":
        roles = _roles(t, margin)
        return [ROLE_COLORS[roles.get(tile, "other")] for tile in tiles]
    raise ValueError(f"color_by must be 'size' or 'role', got {color_by!r}")


def render_svg(
    t: Tiling, color_by: str = "size", pixels_per_unit: int = 100, margin: RationalLike = 2
) -> str:
    """Draws the analysed patch of ``t`` as an SVG document.

    Coordinates are Cartesian images scaled by ``pixels_per_unit``, with the y axis pointing
    down, written with four decimals. Tiles are filled by size class or by T/L/R role.
    """
    tiles = materialize(t)
    fills = _fills(tiles, t, color_by, margin)
    points: List[List[Tuple[float, float]]] = [
        [to_cartesian(v) for v in tile.ccw_coords()] for tile in tiles
    ]
    xs = [x for polygon in points for x, _ in polygon] or [0.0]
    ys = [y for polygon in points for _, y in polygon] or [0.0]
    x_min, y_max = min(xs), max(ys)
    width = (max(xs) - x_min) * pixels_per_unit + 2 * PADDING
    height = (y_max - min(ys)) * pixels_per_unit + 2 * PADDING

    def place(x: float, y: float) -> str:
        px = (x - x_min) * pixels_per_unit + PADDING
        py = (y_max - y) * pixels_per_unit + PADDING
        return f"{px:.4f},{py:.4f}"

    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{width:.4f}" height="{height:.4f}" viewBox="0 0 {width:.4f} {height:.4f}">'
    ]
    for tile, polygon, fill in zip(tiles, points, fills):
        coordinates = " ".join(place(x, y) for x, y in polygon)
        lines.append(
            f'  <polygon points="{coordinates}" fill="{fill}" stroke="#000000" '
            f'stroke-width="1" data-side="{format_rational(tile.side)}"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def write_svg(
    t: Tiling,
    path: Union[str, Path],
    color_by: str = "size",
    pixels_per_unit: int = 100,
    margin: RationalLike = 2,
) -> Tuple[int, int]:
    """Writes ``render_svg`` to ``path``; returns the number of polygons and of fill colours."""
    document = render_svg(t, color_by, pixels_per_unit, margin)
    Path(path).write_text(document)
    polygons = document.count("<polygon ")
    fills = {line.split('fill="')[1][:7] for line in document.splitlines() if "fill=" in line}
    return polygons, len(fills)
