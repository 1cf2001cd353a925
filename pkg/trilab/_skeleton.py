"""Skeleton extraction, E-configurations, the descent step and neighbourhood topology.

The skeleton of a tiling is the union of all tile boundaries. It consists of segments of
the three line classes E, NE and NW; every maximal segment is stored as an interval of
line parameters keyed by its line.
"""
import bisect
import functools
import json
import logging
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, root_validator, validator

from trilab._errors import (
    DescentError,
    InvalidTilingError,
    NotAnEConfigurationError,
    SharedSideError,
    WindowError,
    WindowExhaustedError,
)
from trilab._lattice import (
    LINE_CLASSES,
    Coords,
    Direction,
    LatticePoint,
    Rational,
    RationalLike,
    Segment,
    Triangle,
    cross,
    direction_between,
    format_rational,
    line_coordinate,
    line_parameter,
    point_along,
    point_on_line,
)
from trilab._tiling import Tiling, Window, largest_side, materialize, validate

logger = logging.getLogger(__name__)

LineKey = Tuple[Direction, Fraction]
Interval = Tuple[Fraction, Fraction]


class _Edge(NamedTuple):
    lo: Fraction
    hi: Fraction
    tile: int
    side: int  # +1 when the tile lies left of the line direction


def _tile_edges(tile: Triangle) -> Iterable[Tuple[LineKey, Fraction, Fraction, int]]:
    v = tile.vertex_coords()
    for p, q, r in ((v[0], v[1], v[2]), (v[1], v[2], v[0]), (v[2], v[0], v[1])):
        step = direction_between(p, q)
        assert step is not None
        line = step[0].line_class
        lo, hi = sorted((line_parameter(line, *p), line_parameter(line, *q)))
        offset = (r[0] - p[0], r[1] - p[1])
        side = 1 if cross(line.vector, offset) > 0 else -1
        yield (line, line_coordinate(line, *p)), lo, hi, side


def merge_intervals(intervals: Iterable[Interval]) -> List[Interval]:
    """Unions intervals that overlap or touch."""
    merged: List[Interval] = []
    for lo, hi in sorted(intervals):
        if merged and lo <= merged[-1][1]:
            if hi > merged[-1][1]:
                merged[-1] = (merged[-1][0], hi)
        else:
            merged.append((lo, hi))
    return merged


class _Patch:
    """Indexed skeleton of a finite list of tiles."""

    def __init__(self, tiles: Sequence[Triangle], window: Optional[Window] = None) -> None:
        self.tiles = list(tiles)
        self.window = window
        self.edges: Dict[LineKey, List[_Edge]] = {}
        self.at_vertex: Dict[Coords, List[int]] = {}
        for idx, tile in enumerate(self.tiles):
            for key, lo, hi, side in _tile_edges(tile):
                self.edges.setdefault(key, []).append(_Edge(lo, hi, idx, side))
            for vertex in tile.vertex_coords():
                self.at_vertex.setdefault(vertex, []).append(idx)
        self.segments: Dict[LineKey, List[Interval]] = {
            key: merge_intervals((e.lo, e.hi) for e in edges) for key, edges in self.edges.items()
        }
        self._starts = {key: [lo for lo, _ in intervals] for key, intervals in self.segments.items()}
        vertices: Dict[LineKey, Dict[Fraction, Coords]] = {}
        for vertex in self.at_vertex:
            for line in LINE_CLASSES:
                key = (line, line_coordinate(line, *vertex))
                if key in self.segments:
                    vertices.setdefault(key, {})[line_parameter(line, *vertex)] = vertex
        self.vertices: Dict[LineKey, List[Tuple[Fraction, Coords]]] = {
            key: sorted(points.items()) for key, points in vertices.items()
        }
        self.min_side = min((Fraction(t.side) for t in self.tiles), default=Fraction(0))
        logger.debug("indexed %d tiles on %d lines", len(self.tiles), len(self.segments))

    def interval_at(self, line: Direction, p: Coords) -> Optional[Interval]:
        """The maximal segment of class ``line`` through ``p``, as a parameter interval."""
        key = (line, line_coordinate(line, *p))
        starts = self._starts.get(key)
        if not starts:
            return None
        t = line_parameter(line, *p)
        idx = bisect.bisect_right(starts, t) - 1
        if idx < 0:
            return None
        lo, hi = self.segments[key][idx]
        return (lo, hi) if t <= hi else None

    def whisker(self, p: Coords, d: Direction) -> Fraction:
        """Length of skeleton leaving ``p`` in direction ``d``; zero when there is none."""
        line = d.line_class
        interval = self.interval_at(line, p)
        if interval is None:
            return Fraction(0)
        t = line_parameter(line, *p)
        return interval[1] - t if d == line else t - interval[0]

    def passes_through(self, line: Direction, p: Coords) -> bool:
        """Whether ``p`` lies in the relative interior of a maximal segment of class ``line``."""
        interval = self.interval_at(line, p)
        t = line_parameter(line, *p)
        return interval is not None and interval[0] < t < interval[1]

    def covers(self, key: LineKey, lo: Fraction, hi: Fraction) -> bool:
        interval = self.interval_at(key[0], point_on_line(key[0], key[1], lo))
        return interval is not None and interval[1] >= hi

    def adjacent(self, key: LineKey, lo: Fraction, hi: Fraction, side: int) -> List[_Edge]:
        """Tile sides on one side of the line overlapping ``[lo, hi]``, ordered along the line."""
        found = [
            e
            for e in self.edges.get(key, [])
            if e.side == side and max(lo, e.lo) < min(hi, e.hi)
        ]
        return sorted(found)

    def maximal_segments(self) -> List["MaximalSegment"]:
        return [
            MaximalSegment.on_line(line, coordinate, lo, hi)
            for (line, coordinate), intervals in sorted(self.segments.items())
            for lo, hi in intervals
        ]

    def tile_inside(self, tile: Triangle, window: Optional[Window] = None) -> bool:
        window = window or self.window
        return window is None or all(window.contains(v) for v in tile.vertex_coords())


@functools.lru_cache(maxsize=16)
def _analysis(t: Tiling) -> _Patch:
    report = validate(t)
    if not report.valid:
        raise InvalidTilingError(report)
    return _Patch(materialize(t), t.window)


def _core(t: Tiling, margin: RationalLike) -> Optional[Window]:
    """The inset window analyses are restricted to; None for polygon regions."""
    if t.region.is_polygon:
        return None
    window = t.window
    assert window is not None
    m = Rational.validate(margin)
    biggest = largest_side(t)
    if m < biggest:
        raise WindowError(f"margin {m} is smaller than the largest tile side {biggest}")
    core = window.inset(m)
    if core is None:
        raise WindowError(f"margin {m} leaves no core inside the window")
    return core


def _in(window: Optional[Window], p: Coords) -> bool:
    return window is None or window.contains(p)


class Skeleton(BaseModel):
    """Skeleton is the union of all tile boundaries.

    Attributes:
        segments: Maximal collinear pieces, ordered by line class, line and position.
    """

    segments: Tuple[Segment, ...]

    class Config:  # noqa: D101, D106
        frozen = True


class MaximalSegment(BaseModel):
    """MaximalSegment is a segment of the skeleton that no longer segment of it contains.

    Attributes:
        segment: The segment, oriented along its line class.
        line_direction: One of E, NE and NW.
    """

    segment: Segment
    line_direction: Direction

    class Config:  # noqa: D101, D106
        frozen = True

    @classmethod
    def on_line(
        cls, line: Direction, coordinate: Fraction, lo: Fraction, hi: Fraction
    ) -> "MaximalSegment":
        segment = Segment.between(
            point_on_line(line, coordinate, lo), point_on_line(line, coordinate, hi)
        )
        return cls(segment=segment, line_direction=line)

    def to_document(self) -> Dict[str, Any]:
        return {"segment": self.segment.to_document(), "line_direction": self.line_direction.name}


def build_skeleton(t: Tiling) -> Skeleton:
    """Merges the boundaries of all tiles of the analysed patch into maximal segments."""
    return Skeleton(segments=tuple(m.segment for m in _analysis(t).maximal_segments()))


def maximal_segments(s: Skeleton) -> List[MaximalSegment]:
    """Merges collinear skeleton segments per line and returns them in canonical order."""
    lines: Dict[LineKey, List[Interval]] = {}
    for segment in s.segments:
        key = (segment.line_class, segment.line_key)
        lines.setdefault(key, []).append(segment.parameter_range())
    return [
        MaximalSegment.on_line(line, coordinate, lo, hi)
        for (line, coordinate), intervals in sorted(lines.items())
        for lo, hi in merge_intervals(intervals)
    ]


class EConfiguration(BaseModel):
    """EConfiguration is a segment of the skeleton with three parallel whiskers.

    Whiskers of a common direction leave the skeleton at both ends of the base and at one
    interior point; the whisker direction makes a 120 degree angle with the base direction.

    Attributes:
        base: The basis, from its start to its end.
        interior_point: The interior whisker point.
        whisker_direction: Direction of all three whiskers.
        whisker_length: A common positive length available to all three whiskers.
    """

    base: Segment
    interior_point: LatticePoint
    whisker_direction: Direction
    whisker_length: Rational

    class Config:  # noqa: D101, D106
        frozen = True

    @validator("whisker_direction", pre=True)
    def _validate_direction(cls, value: Any) -> Any:
        if isinstance(value, str):
            try:
                return Direction[value]
            except KeyError:
                raise ValueError(f"Invalid direction {value!r}")
        return value

    @root_validator(skip_on_failure=True)
    def _validate_shape(cls, values: Dict[str, Any]) -> Dict[str, Any]:
        base: Segment = values["base"]
        if (values["whisker_direction"] - base.direction) % 6 not in (2, 4):
            raise ValueError("whiskers must make a 120 degree angle with the base")
        if not base.contains(values["interior_point"].coords, strict=True):
            raise ValueError("the interior point must lie strictly inside the base")
        if values["whisker_length"] <= 0:
            raise ValueError("the whisker length must be positive")
        return values

    @property
    def length(self) -> Fraction:
        return self.base.length

    @property
    def mu(self) -> Fraction:
        """Position of the interior point along the base, in (0, 1)."""
        line = self.base.line_class
        start = line_parameter(line, *self.base.start.coords)
        inner = line_parameter(line, *self.interior_point.coords)
        return abs(inner - start) / self.length

    def to_document(self) -> Dict[str, Any]:
        return {
            "base": self.base.to_document(),
            "interior_point": self.interior_point.to_document(),
            "whisker_direction": self.whisker_direction.name,
            "whisker_length": format_rational(self.whisker_length),
            "length": format_rational(self.length),
            "mu": format_rational(self.mu),
        }


def _whisker_directions(line: Direction) -> List[Direction]:
    return [d for d in Direction if d.line_class != line]


def _make_configuration(
    line: Direction,
    d: Direction,
    first: Tuple[Fraction, Coords, Fraction],
    inner: Tuple[Fraction, Coords, Fraction],
    last: Tuple[Fraction, Coords, Fraction],
) -> EConfiguration:
    start, end = first[1], last[1]
    if (d - line) % 6 not in (2, 4):
        start, end = end, start
    return EConfiguration(
        base=Segment.between(start, end),
        interior_point=LatticePoint(a=inner[1][0], b=inner[1][1]),
        whisker_direction=d,
        whisker_length=min(first[2], inner[2], last[2]),
    )


def _sort_key(e: EConfiguration) -> Tuple[Any, ...]:
    line = e.base.line_class
    lo, hi = e.base.parameter_range()
    inner = line_parameter(line, *e.interior_point.coords)
    return line, e.base.line_key, lo, hi, e.whisker_direction, inner


def find_e_configurations(
    t: Tiling, margin: RationalLike = 2, all_witnesses: bool = False
) -> List[EConfiguration]:
    """Lists the E-configurations whose basis lies in the analysed core.

    For plane windows the core is the window inset by ``margin``, which must be at least the
    largest tile side. Polygon regions are analysed whole and ignore ``margin``.

    Args:
        t: A valid tiling.
        margin: Inset of the core from the window.
        all_witnesses: Report every interior whisker point instead of the first one only.
    """
    core = _core(t, margin)
    patch = _analysis(t)
    found = []
    for key, intervals in sorted(patch.segments.items()):
        line = key[0]
        points = [(param, p) for param, p in patch.vertices.get(key, []) if _in(core, p)]
        for lo, hi in intervals:
            on_segment = [(param, p) for param, p in points if lo <= param <= hi]
            if len(on_segment) < 3:
                continue
            for d in _whisker_directions(line):
                whiskered = []
                for param, p in on_segment:
                    length = patch.whisker(p, d)
                    if length > 0:
                        whiskered.append((param, p, length))
                for x in range(len(whiskered)):
                    for z in range(x + 2, len(whiskered)):
                        inner = whiskered[x + 1 : z] if all_witnesses else whiskered[x + 1 : x + 2]
                        for y in inner:
                            found.append(
                                _make_configuration(line, d, whiskered[x], y, whiskered[z])
                            )
    found.sort(key=_sort_key)
    logger.info("found %d E-configurations", len(found))
    return found


def brute_force_e_configurations(t: Tiling, margin: RationalLike = 2) -> List[EConfiguration]:
    """Scans all triples of whisker points against the raw tile sides.

    Works without merged segments so it can check ``find_e_configurations``; returns one
    witness per basis and whisker direction, with the interior point nearest the lower end.
    """
    core = _core(t, margin)
    patch = _analysis(t)
    raw: Dict[LineKey, List[Interval]] = {}
    for tile in patch.tiles:
        for key, lo, hi, _ in _tile_edges(tile):
            raw.setdefault(key, []).append((lo, hi))

    def raw_whisker(p: Coords, d: Direction) -> Fraction:
        line = d.line_class
        t0 = line_parameter(line, *p)
        best = Fraction(0)
        for lo, hi in raw.get((line, line_coordinate(line, *p)), []):
            if lo <= t0 <= hi:
                best = max(best, hi - t0 if d == line else t0 - lo)
        return best

    def covered(key: LineKey, lo: Fraction, hi: Fraction) -> bool:
        reach = lo
        for e_lo, e_hi in sorted(raw.get(key, [])):
            if e_lo > reach:
                break
            reach = max(reach, e_hi)
        return reach >= hi

    vertices = sorted(set(v for tile in patch.tiles for v in tile.vertex_coords()))
    found: Dict[Tuple[Any, ...], EConfiguration] = {}
    for key in sorted(raw):
        line = key[0]
        on_line = sorted(
            (line_parameter(line, *v), v)
            for v in vertices
            if line_coordinate(line, *v) == key[1] and _in(core, v)
        )
        for d in _whisker_directions(line):
            whiskered = []
            for param, p in on_line:
                length = raw_whisker(p, d)
                if length > 0:
                    whiskered.append((param, p, length))
            for x in range(len(whiskered)):
                for y in range(x + 1, len(whiskered)):
                    for z in range(y + 1, len(whiskered)):
                        pair = (key, d, x, z)
                        if pair in found or not covered(key, whiskered[x][0], whiskered[z][0]):
                            continue
                        found[pair] = _make_configuration(
                            line, d, whiskered[x], whiskered[y], whiskered[z]
                        )
    return sorted(found.values(), key=_sort_key)


def _check_e_configuration(patch: _Patch, e: EConfiguration) -> None:
    line = e.base.line_class
    lo, hi = e.base.parameter_range()
    if not patch.covers((line, e.base.line_key), lo, hi):
        raise NotAnEConfigurationError(f"basis {e.base} is not contained in the skeleton")
    for p in (e.base.start, e.interior_point, e.base.end):
        if patch.whisker(p.coords, e.whisker_direction) <= 0:
            raise NotAnEConfigurationError(
                f"no skeleton leaves {p} in direction {e.whisker_direction.name}"
            )


def _resting_tile(patch: _Patch, x: Coords, u: Direction, apex: Direction) -> Triangle:
    if patch.window is not None and not patch.window.contains(x, strict=True):
        raise WindowExhaustedError(f"the basis point {x} is not inside the window")
    for idx in patch.at_vertex.get(x, []):
        tile = patch.tiles[idx]
        vertices = set(tile.vertex_coords())
        s = Fraction(tile.side)
        if point_along(x, u, s) in vertices and point_along(x, apex, s) in vertices:
            return tile
    raise DescentError(f"no tile rests on the basis at {x}")


def next_e_configuration(t: Tiling, e: EConfiguration) -> EConfiguration:
    """Builds a strictly shorter E-configuration from ``e``.

    The tile T1 resting on the basis at its start ``x1`` has vertices ``x1``, ``x2`` on the
    basis and the apex ``x3``. When skeleton leaves ``x3`` in the basis direction the new basis
    is ``[x2, x3]``; otherwise it is ``[x3, x1]`` with the original whisker direction.

    Raises:
        NotAnEConfigurationError: ``e`` is not an E-configuration of ``t``.
        WindowExhaustedError: T1 or the next tile T2 leaves the analysed window, or their
            corner on the basis is not strictly inside it.
        SharedSideError: the new basis is a full tile side with no interior whisker.
    """
    patch = _analysis(t)
    _check_e_configuration(patch, e)
    x1 = e.base.start.coords
    u, d = e.base.direction, e.whisker_direction
    apex = u.turn(1) if (d - u) % 6 == 2 else u.turn(-1)
    t1 = _resting_tile(patch, x1, u, apex)
    s1 = Fraction(t1.side)
    x2, x3 = point_along(x1, u, s1), point_along(x1, apex, s1)
    if not patch.tile_inside(t1):
        raise WindowExhaustedError(f"tile {t1} leaves the window")
    t2 = _resting_tile(patch, x2, u, apex)
    if not patch.tile_inside(t2):
        raise WindowExhaustedError(f"tile {t2} leaves the window")
    if s1 + t2.side > e.length:
        raise DescentError(f"tiles {t1} and {t2} do not fit on the basis {e.base}")
    if patch.whisker(x3, u) > 0:
        start, end, whisker = x2, x3, u
    elif patch.whisker(x3, d) > 0:
        start, end, whisker = x3, x1, d
    else:
        raise DescentError(f"no skeleton continues from the apex {x3}")
    base = Segment.between(start, end)
    line, key = base.line_class, base.line_key
    lo, hi = base.parameter_range()
    origin = line_parameter(line, *start)
    inner = sorted(
        (abs(param - origin), p)
        for param, p in patch.vertices.get((line, key), [])
        if lo < param < hi and patch.whisker(p, whisker) > 0
    )
    if not inner:
        raise SharedSideError(base)
    lengths = [patch.whisker(p, whisker) for p in (start, inner[0][1], end)]
    if min(lengths) <= 0:
        raise DescentError(f"the new basis {base} lacks an end whisker")
    logger.debug("descended from %s to %s", e.base, base)
    return EConfiguration(
        base=base,
        interior_point=LatticePoint(a=inner[0][1][0], b=inner[0][1][1]),
        whisker_direction=whisker,
        whisker_length=min(lengths),
    )


class StopReason(str, Enum):
    """Why a descent stopped."""

    MAX_STEPS = "max_steps"
    WINDOW_EXHAUSTED = "window_exhausted"
    SHARED_SIDE = "shared_side"


class DescentTrace(BaseModel):
    """DescentTrace is a sequence of E-configurations of strictly decreasing length.

    Attributes:
        steps: The E-configurations, starting with the initial one.
        lengths: Their lengths.
        stop_reason: Why the descent ended.
    """

    steps: Tuple[EConfiguration, ...]
    lengths: Tuple[Rational, ...]
    stop_reason: Optional[StopReason] = None

    @root_validator(skip_on_failure=True)
    def _validate_lengths(cls, values: Dict[str, Any]) -> Dict[str, Any]:
        lengths = values["lengths"]
        if list(lengths) != [e.length for e in values["steps"]]:
            raise ValueError("lengths must match the steps")
        if any(b >= a for a, b in zip(lengths, lengths[1:])):
            raise ValueError("lengths must be strictly decreasing")
        return values

    def to_document(self) -> Dict[str, Any]:
        return {
            "steps": [e.to_document() for e in self.steps],
            "lengths": [format_rational(v) for v in self.lengths],
            "stop_reason": self.stop_reason.value if self.stop_reason is not None else None,
        }

    def to_path(self, path: Union[str, Path]) -> None:
        Path(path).write_text(json.dumps(self.to_document(), indent=2) + "\n")


def descend(t: Tiling, e: EConfiguration, max_steps: int = 32) -> DescentTrace:
    """Iterates ``next_e_configuration`` until it stops or ``max_steps`` steps are taken."""
    if max_steps < 0:
        raise ValueError(f"max_steps must be non-negative, got {max_steps}")
    patch = _analysis(t)
    _check_e_configuration(patch, e)
    steps = [e]
    stop: Optional[StopReason] = None
    while True:
        if len(steps) > max_steps:
            stop = StopReason.MAX_STEPS
            break
        try:
            following = next_e_configuration(t, steps[-1])
        except WindowExhaustedError as exc:
            logger.info("descent stopped: %s", exc)
            stop = StopReason.WINDOW_EXHAUSTED
            break
        except SharedSideError as exc:
            logger.info("descent stopped: %s", exc)
            stop = StopReason.SHARED_SIDE
            break
        if following.length > steps[-1].length - patch.min_side:
            raise DescentError(
                f"length {following.length} does not drop below {steps[-1].length} "
                f"by the smallest diameter {patch.min_side}"
            )
        steps.append(following)
    return DescentTrace(steps=tuple(steps), lengths=tuple(s.length for s in steps), stop_reason=stop)


class NeighborhoodPattern(str, Enum):
    """Classification of the tiles around a maximal segment."""

    FIGURE5 = "figure5"
    OTHER = "other"


class SegmentNeighborhood(BaseModel):
    """SegmentNeighborhood counts the tiles on both sides of a maximal segment.

    North and south mean left and right of the line direction; west and east mean the start
    and the end of the segment.

    Attributes:
        n_north: Number of tiles whose sides partition the northern side.
        n_south: Number of tiles whose sides partition the southern side.
        west_bound: Class of the maximal segment crossing the start, if exactly one does.
        east_bound: Class of the maximal segment crossing the end, if exactly one does.
        pattern: Whether one big tile faces two tiles with the expected bounding segments.
    """

    n_north: int
    n_south: int
    west_bound: Optional[Direction]
    east_bound: Optional[Direction]
    pattern: NeighborhoodPattern

    def to_document(self) -> Dict[str, Any]:
        return {
            "n_north": self.n_north,
            "n_south": self.n_south,
            "west_bound": self.west_bound.name if self.west_bound is not None else None,
            "east_bound": self.east_bound.name if self.east_bound is not None else None,
            "pattern": self.pattern.value,
        }


_FIGURE5 = {
    Direction.E: {(1, 2, Direction.NW, Direction.NE), (2, 1, Direction.NE, Direction.NW)},
    Direction.NE: {(1, 2, Direction.E, Direction.NW), (2, 1, Direction.NW, Direction.E)},
    Direction.NW: {(1, 2, Direction.NE, Direction.E), (2, 1, Direction.E, Direction.NE)},
}


def _bound(patch: _Patch, p: Coords, line: Direction) -> Optional[Direction]:
    crossing = [c for c in LINE_CLASSES if c != line and patch.passes_through(c, p)]
    return crossing[0] if len(crossing) == 1 else None


def _neighborhood(
    patch: _Patch, line: Direction, key: Fraction, lo: Fraction, hi: Fraction
) -> Tuple[SegmentNeighborhood, List[_Edge], List[_Edge]]:
    north = patch.adjacent((line, key), lo, hi, 1)
    south = patch.adjacent((line, key), lo, hi, -1)
    west = _bound(patch, point_on_line(line, key, lo), line)
    east = _bound(patch, point_on_line(line, key, hi), line)
    pattern = (
        NeighborhoodPattern.FIGURE5
        if (len(north), len(south), west, east) in _FIGURE5[line]
        else NeighborhoodPattern.OTHER
    )
    neighborhood = SegmentNeighborhood(
        n_north=len(north), n_south=len(south), west_bound=west, east_bound=east, pattern=pattern
    )
    return neighborhood, north, south


def neighborhood_topology(t: Tiling, m: MaximalSegment) -> SegmentNeighborhood:
    """Counts and classifies the tiles along both sides of a maximal segment."""
    patch = _analysis(t)
    line, key = m.line_direction, m.segment.line_key
    lo, hi = m.segment.parameter_range()
    if (lo, hi) not in patch.segments.get((line, key), []):
        raise ValueError(f"{m.segment} is not a maximal segment of the skeleton")
    neighborhood, north, south = _neighborhood(patch, line, key, lo, hi)
    if patch.window is not None:
        tiles = [patch.tiles[e.tile] for e in north + south]
        ends = (point_on_line(line, key, lo), point_on_line(line, key, hi))
        if not all(patch.window.contains(p) for p in ends) or not all(
            patch.tile_inside(tile) for tile in tiles
        ):
            raise WindowError(f"the neighbourhood of {m.segment} is clipped by the window")
    return neighborhood
