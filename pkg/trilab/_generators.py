"""Constructions of concrete tilings, T/L/R extraction and parameter inference.

The family of plane tilings is built from a cell of three tiles: a unit up-triangle ``T``
above two down-triangles ``L`` (side ``alpha``) and ``R`` (side ``1 - alpha``) whose upper
sides split the lower side of ``T``. Cells repeat along ``t_NE = (1 - alpha, alpha)`` and
``t_N = (-alpha, 1)``. Cell ``(i, j)``, with ``i + j`` even, sits at
``i * t_NE + (j - i) / 2 * t_N``.
"""
import logging
from collections import deque
from fractions import Fraction
from typing import Any, Deque, Dict, List, Optional, Set, Tuple

from pydantic import BaseModel, validator

from trilab._errors import (
    IndexConflictError,
    InconsistentIndexingError,
    RelationError,
    TopologyMismatchError,
)
from trilab._lattice import (
    Coords,
    Direction,
    LatticeIsometry,
    LatticePoint,
    Rational,
    RationalLike,
    Triangle,
    all_isometries,
    format_rational,
    point_on_line,
)
from trilab._skeleton import (
    LineKey,
    MaximalSegment,
    NeighborhoodPattern,
    _analysis,
    _core,
    _neighborhood,
    _Patch,
)
from trilab._tiling import Region, Tiling, Window, largest_side, materialize
from trilab._walk import FieldFunction

logger = logging.getLogger(__name__)

Index = Tuple[int, int]


class FamilyParams(BaseModel):
    """FamilyParams selects one tiling of the family.

    Attributes:
        alpha: Side of the smaller down-triangle, in (0, 1/2].
    """

    alpha: Rational

    class Config:  # noqa: D101, D106
        frozen = True

    @validator("alpha")
    def _validate_alpha(cls, value: Fraction) -> Fraction:
        if not 0 < value <= Fraction(1, 2):
            raise ValueError(f"alpha must lie in (0, 1/2], got {value}")
        return value

    @property
    def t_ne(self) -> Coords:
        return Fraction(1 - self.alpha), Fraction(self.alpha)

    @property
    def t_n(self) -> Coords:
        return Fraction(-self.alpha), Fraction(1)


def family_cell(params: FamilyParams, i: int, j: int) -> Tuple[Triangle, Triangle, Triangle]:
    """The tiles ``T``, ``L`` and ``R`` of cell ``(i, j)`` as placed by ``generate_family``."""
    if (i + j) % 2:
        raise ValueError(f"cell indices must have an even sum, got ({i}, {j})")
    alpha = Fraction(params.alpha)
    (ea, eb), (na, nb) = params.t_ne, params.t_n
    k = Fraction(j - i, 2)
    a, b = i * ea + k * na, i * eb + k * nb
    return (
        Triangle.up(a, b, 1),
        Triangle.down(a, b, alpha),
        Triangle.down(a + alpha, b, 1 - alpha),
    )


def generate_family(params: FamilyParams, reps: int = 1) -> Tiling:
    """Builds the periodic family tiling with a ``reps`` by ``reps`` super-cell.

    The analysed window is ``(-reps, reps, -reps, reps)``.
    """
    if reps < 1:
        raise ValueError(f"reps must be at least 1, got {reps}")
    (ea, eb), (na, nb) = params.t_ne, params.t_n
    tiles = []
    for x in range(reps):
        for y in range(reps):
            for tile in family_cell(params, 0, 0):
                tiles.append(tile.translated((x * ea + y * na, x * eb + y * nb)))
    periods = (LatticePoint(a=reps * ea, b=reps * eb), LatticePoint(a=reps * na, b=reps * nb))
    return Tiling(
        tiles=tuple(tiles),
        region=Region.plane_window(-reps, reps, -reps, reps),
        periods=periods,
    )


_FIGURE3: Dict[int, Tuple[List[Tuple[int, int]], List[Tuple[str, int, int, int]]]] = {
    1: (
        [(0, 0), (2, 0), (0, 2)],
        [("up", 0, 0, 1), ("up", 1, 0, 1), ("up", 0, 1, 1), ("down", 0, 1, 1)],
    ),
    2: ([(0, 0), (1, 0), (1, 1), (0, 1)], [("up", 0, 0, 1), ("down", 0, 1, 1)]),
    3: (
        [(0, 0), (2, 0), (1, 1), (0, 1)],
        [("up", 0, 0, 1), ("down", 0, 1, 1), ("up", 1, 0, 1)],
    ),
    4: (
        [(0, 0), (2, 0), (2, 1), (1, 2), (0, 2)],
        [("up", 0, 0, 2), ("down", 1, 1, 1), ("up", 1, 1, 1), ("down", 0, 2, 1)],
    ),
    5: (
        [(1, 0), (2, 0), (2, 1), (1, 2), (0, 2), (0, 1)],
        [
            ("up", 1, 1, 1),
            ("down", 0, 2, 1),
            ("up", 0, 1, 1),
            ("down", 0, 1, 1),
            ("up", 1, 0, 1),
            ("down", 1, 1, 1),
        ],
    ),
}


def generate_figure3(variant: int) -> Tiling:
    """The finite tilings of a triangle, parallelogram, trapezoid, pentagon and hexagon.

    Variants 1 to 5 in that order, at unit scale.
    """
    if variant not in _FIGURE3:
        raise ValueError(f"variant must be between 1 and 5, got {variant}")
    vertices, specs = _FIGURE3[variant]
    tiles = tuple(
        Triangle.up(a, b, s) if kind == "up" else Triangle.down(a, b, s) for kind, a, b, s in specs
    )
    return Tiling(tiles=tiles, region=Region.polygon(vertices))


def generate_hexagonal(n: int) -> Tiling:
    """The unit triangle tiling with an ``n`` by ``n`` cell of ``2 n**2`` tiles."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    tiles = []
    for i in range(n):
        for j in range(n):
            tiles.append(Triangle.up(i, j, 1))
            tiles.append(Triangle.down(i, j + 1, 1))
    return Tiling(
        tiles=tuple(tiles),
        region=Region.plane_window(-n, n, -n, n),
        periods=(LatticePoint(a=n, b=0), LatticePoint(a=0, b=n)),
    )


class TLRCell(BaseModel):
    """TLRCell holds the tiles labelled with one index.

    Attributes:
        t: The unit up-triangle ``T``.
        l: The down-triangle ``L`` below the western part of ``T``.
        r: The down-triangle ``R`` below the eastern part of ``T``.
    """

    t: Optional[Triangle] = None
    l: Optional[Triangle] = None  # noqa: E741
    r: Optional[Triangle] = None

    @property
    def complete(self) -> bool:
        return self.t is not None and self.l is not None and self.r is not None

    def to_document(self) -> Dict[str, Any]:
        return {
            name: tile.to_document() if tile is not None else None
            for name, tile in (("T", self.t), ("L", self.l), ("R", self.r))
        }


class TLRIndexing(BaseModel):
    """TLRIndexing labels the tiles of a family-like tiling by indices ``(i, j)``.

    Attributes:
        cells: Labelled tiles per index, in the frame of the analysed tiling.
        frame: The isometry that made the starting segment horizontal with ``T`` above it.
    """

    cells: Dict[Tuple[int, int], TLRCell]
    frame: LatticeIsometry = LatticeIsometry()

    def complete_indices(self) -> List[Index]:
        return sorted(idx for idx, cell in self.cells.items() if cell.complete)

    def side(self, kind: str, i: int, j: int) -> Optional[Fraction]:
        """Diameter of the ``kind`` ("t", "l" or "r") tile at ``(i, j)``, if labelled."""
        cell = self.cells.get((i, j))
        tile = getattr(cell, kind) if cell is not None else None
        return Fraction(tile.side) if tile is not None else None

    def diameter_field(self) -> FieldFunction:
        """The diameter of ``T`` as a function of the index."""
        return FieldFunction(
            {idx: Fraction(cell.t.side) for idx, cell in self.cells.items() if cell.t is not None}
        )

    def to_document(self) -> Dict[str, Any]:
        return {
            "frame": {"rotation": self.frame.rotation, "reflect": self.frame.reflect},
            "cells": [
                {"index": [i, j], **self.cells[(i, j)].to_document()}
                for i, j in sorted(self.cells)
            ],
        }


def _canonical_frame(tile: Triangle, m: MaximalSegment) -> LatticeIsometry:
    for g in all_isometries():
        image = g.apply_triangle(tile)
        segment = g.apply_segment(m.segment)
        if segment.line_class == Direction.E and image.is_up and image.anchor.b == segment.start.b:
            return g
    raise TopologyMismatchError(f"no isometry puts {tile} above {m.segment}", segment=m)


class _Extraction:
    """Breadth-first labelling in the canonical frame."""

    def __init__(
        self, patch: _Patch, canon: _Patch, inverse: LatticeIsometry, zone: Optional[Window]
    ) -> None:
        self.patch = patch
        self.canon = canon
        self.inverse = inverse
        self.zone = zone
        self.labels: Dict[str, Dict[Index, int]] = {"t": {}, "l": {}, "r": {}}

    def witness(self, key: LineKey, lo: Fraction) -> MaximalSegment:
        line, coordinate = key
        interval = self.canon.interval_at(line, point_on_line(line, coordinate, lo))
        seg_lo, seg_hi = interval if interval is not None else (lo, lo)
        segment = MaximalSegment.on_line(line, coordinate, seg_lo, seg_hi).segment
        image = self.inverse.apply_segment(segment)
        image_lo, image_hi = image.parameter_range()
        return MaximalSegment.on_line(image.line_class, image.line_key, image_lo, image_hi)

    def assign(self, kind: str, index: Index, tile: int) -> None:
        known = self.labels[kind].get(index)
        if known is not None and known != tile:
            raise IndexConflictError(
                f"{kind.upper()}{index} is claimed by {self.patch.tiles[known]} "
                f"and {self.patch.tiles[tile]}"
            )
        self.labels[kind][index] = tile

    def split(self, key: LineKey, lo: Fraction, hi: Fraction, side: int) -> Tuple[int, int]:
        edges = self.canon.adjacent(key, lo, hi, side)
        if (
            len(edges) != 2
            or edges[0].lo != lo
            or edges[0].hi != edges[1].lo
            or edges[1].hi != hi
            or any(self.canon.tiles[e.tile].is_up for e in edges)
        ):
            raise TopologyMismatchError(
                f"a side of a T tile is not split into two down-triangles ({len(edges)} tiles)",
                segment=self.witness(key, lo),
            )
        return edges[0].tile, edges[1].tile

    def opposite(self, key: LineKey, lo: Fraction, hi: Fraction, side: int) -> Optional[int]:
        edges = self.canon.adjacent(key, lo, hi, side)
        if not edges:
            return None
        tile = self.canon.tiles[edges[0].tile]
        if len(edges) != 1 or edges[0].lo != lo or edges[0].hi != hi or not tile.is_up:
            raise TopologyMismatchError(
                "the sides of an L/R pair do not form the side of a single T tile",
                segment=self.witness(key, lo),
            )
        return edges[0].tile

    def expandable(self, tile: int) -> bool:
        return self.zone is None or self.patch.tile_inside(self.patch.tiles[tile], self.zone)

    def run(self, start: int) -> None:
        self.assign("t", (0, 0), start)
        queue: Deque[Index] = deque([(0, 0)])
        expanded: Set[Index] = set()
        while queue:
            i, j = queue.popleft()
            if (i, j) in expanded:
                continue
            expanded.add((i, j))
            tile_index = self.labels["t"][(i, j)]
            if not self.expandable(tile_index):
                continue
            tile = self.canon.tiles[tile_index]
            a0, b0, s = Fraction(tile.anchor.a), Fraction(tile.anchor.b), Fraction(tile.side)
            west, east = self.split((Direction.E, b0), a0, a0 + s, -1)
            self.assign("l", (i, j), west)
            self.assign("r", (i, j), east)
            lower, upper = self.split((Direction.NW, a0 + b0 + s), b0, b0 + s, -1)
            self.assign("l", (i + 1, j + 1), lower)
            self.assign("r", (i, j + 2), upper)
            lower, upper = self.split((Direction.NE, a0), b0, b0 + s, 1)
            self.assign("r", (i - 1, j + 1), lower)
            self.assign("l", (i, j + 2), upper)
            for index, found in (
                ((i, j + 2), self.above(self.labels["l"][(i, j + 2)], self.labels["r"][(i, j + 2)])),
                ((i + 1, j - 1), self.east(self.labels["r"][(i, j)], self.labels["l"][(i + 1, j + 1)])),
                ((i - 1, j - 1), self.west(self.labels["l"][(i, j)], self.labels["r"][(i - 1, j + 1)])),
            ):
                if found is None:
                    continue
                self.assign("t", index, found)
                if index not in expanded:
                    queue.append(index)

    def above(self, left: int, right: int) -> Optional[int]:
        low, high = self.canon.tiles[left], self.canon.tiles[right]
        key = (Direction.E, Fraction(low.anchor.b))
        if high.anchor.b != low.anchor.b or low.anchor.a + low.side != high.anchor.a:
            raise TopologyMismatchError(
                "L and R below a T tile are not adjacent", segment=self.witness(key, low.anchor.a)
            )
        return self.opposite(key, Fraction(low.anchor.a), Fraction(high.anchor.a + high.side), 1)

    def east(self, lower: int, upper: int) -> Optional[int]:
        r, l = self.canon.tiles[lower], self.canon.tiles[upper]  # noqa: E741
        key = (Direction.NE, Fraction(r.anchor.a + r.side))
        if l.anchor.a + l.side != key[1] or r.anchor.b != l.anchor.b - l.side:
            raise TopologyMismatchError(
                "R and L east of a T tile are not stacked",
                segment=self.witness(key, r.anchor.b - r.side),
            )
        return self.opposite(key, Fraction(r.anchor.b - r.side), Fraction(l.anchor.b), -1)

    def west(self, lower: int, upper: int) -> Optional[int]:
        l, r = self.canon.tiles[lower], self.canon.tiles[upper]  # noqa: E741
        key = (Direction.NW, Fraction(l.anchor.a + l.anchor.b))
        if r.anchor.a + r.anchor.b != key[1] or l.anchor.b != r.anchor.b - r.side:
            raise TopologyMismatchError(
                "L and R west of a T tile are not stacked",
                segment=self.witness(key, l.anchor.b - l.side),
            )
        return self.opposite(key, Fraction(l.anchor.b - l.side), Fraction(r.anchor.b), 1)

    def indexing(self, frame: LatticeIsometry) -> TLRIndexing:
        indices = set().union(*(labels.keys() for labels in self.labels.values()))
        cells = {}
        for index in sorted(indices):
            tiles = {
                kind: self.patch.tiles[labels[index]] if index in labels else None
                for kind, labels in self.labels.items()
            }
            cells[index] = TLRCell(**tiles)
        return TLRIndexing(cells=cells, frame=frame)


def extract_tlr_indexing(t: Tiling, margin: RationalLike = 2) -> TLRIndexing:
    """Labels the tiles of a family-like tiling with ``T``, ``L`` and ``R`` indices.

    Starts at the first maximal segment inside the core, which must have one tile on one
    side and two on the other. Tiles are labelled breadth-first while the ``T`` tiles lie
    inside the window inset by the largest tile side.

    Raises:
        TopologyMismatchError: a neighbourhood does not follow the T/L/R pattern.
        IndexConflictError: two tiles claim the same label.
    """
    core = _core(t, margin)
    patch = _analysis(t)
    zone = None
    if patch.window is not None:
        zone = patch.window.inset(largest_side(t))
    start = next(
        (
            m
            for m in patch.maximal_segments()
            if core is None
            or (core.contains(m.segment.start.coords) and core.contains(m.segment.end.coords))
        ),
        None,
    )
    if start is None:
        raise TopologyMismatchError("no maximal segment lies inside the core")
    line, key = start.line_direction, start.segment.line_key
    lo, hi = start.segment.parameter_range()
    neighborhood, north, south = _neighborhood(patch, line, key, lo, hi)
    if neighborhood.pattern != NeighborhoodPattern.FIGURE5:
        raise TopologyMismatchError(
            f"{start.segment} has {neighborhood.n_north} tiles on one side and "
            f"{neighborhood.n_south} on the other",
            segment=start,
        )
    single = north[0] if len(north) == 1 else south[0]
    frame = _canonical_frame(patch.tiles[single.tile], start)
    canon = _Patch([frame.apply_triangle(tile) for tile in patch.tiles])
    extraction = _Extraction(patch, canon, frame.inverse(), zone)
    extraction.run(single.tile)
    indexing = extraction.indexing(frame)
    logger.info(
        "labelled %d indices, %d complete", len(indexing.cells), len(indexing.complete_indices())
    )
    return indexing


def _check_relation(
    equation: str, index: Index, left: Optional[Fraction], right: Optional[Fraction]
) -> None:
    if left is not None and right is not None and left != right:
        raise RelationError(equation, index, f"{format_rational(left)} != {format_rational(right)}")


def _add(x: Optional[Fraction], y: Optional[Fraction]) -> Optional[Fraction]:
    return x + y if x is not None and y is not None else None


def infer_alpha(idx: TLRIndexing, t: Tiling) -> FamilyParams:
    """Recovers the family parameter from a labelling, checking every size relation.

    Relations are checked in order over all indices: the three side splittings of ``T``
    (``eq_sum1`` to ``eq_sum3``), constant ``T`` (``eq_T``), the periodicities of ``L``
    (``eq_L1``, ``eq_L2``) and ``R = T - L`` (``eq_R``).

    Raises:
        InconsistentIndexingError: the labelling references tiles outside ``t``.
        RelationError: a relation fails; names the equation and the index.
    """
    members = set(materialize(t))
    for index, cell in idx.cells.items():
        for tile in (cell.t, cell.l, cell.r):
            if tile is not None and tile not in members:
                raise InconsistentIndexingError(f"{tile} labelled at {index} is not a tile")
    indices = sorted(idx.cells)
    if not idx.complete_indices():
        raise InconsistentIndexingError("the indexing has no complete cell")

    def side(kind: str, i: int, j: int) -> Optional[Fraction]:
        return idx.side(kind, i, j)

    for i, j in indices:
        _check_relation("eq_sum1", (i, j), side("t", i, j), _add(side("l", i, j), side("r", i, j)))
    for i, j in indices:
        _check_relation(
            "eq_sum2", (i, j), side("t", i, j), _add(side("l", i + 1, j + 1), side("r", i, j + 2))
        )
    for i, j in indices:
        _check_relation(
            "eq_sum3", (i, j), side("t", i, j), _add(side("l", i, j + 2), side("r", i - 1, j + 1))
        )
    reference = idx.complete_indices()[0]
    t_ref, l_ref = side("t", *reference), side("l", *reference)
    assert t_ref is not None and l_ref is not None
    for i, j in indices:
        _check_relation("eq_T", (i, j), side("t", i, j), t_ref)
    for i, j in indices:
        _check_relation("eq_L1", (i, j), side("l", i, j + 2), side("l", i, j))
    for i, j in indices:
        _check_relation("eq_L2", (i, j), side("l", i + 1, j + 1), side("l", i, j))
    for i, j in indices:
        r = side("r", i, j)
        l = side("l", i, j)  # noqa: E741
        _check_relation("eq_R", (i, j), r, t_ref - l if l is not None else None)
    alpha = l_ref / t_ref
    if alpha > Fraction(1, 2):
        alpha = 1 - alpha
    logger.info("inferred alpha = %s", alpha)
    return FamilyParams(alpha=alpha)
