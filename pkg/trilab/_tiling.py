"""The tiling data model, validity checks and global predicates over tilings."""
import collections
import json
import logging
import math
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Counter, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, root_validator, validator

from trilab._errors import EmptyTilingError
from trilab._lattice import (
    Coords,
    Direction,
    LatticeIsometry,
    LatticePoint,
    Rational,
    RationalLike,
    Segment,
    Triangle,
    cross,
    direction_between,
    format_rational,
    interiors_overlap,
    point_along,
    segment_overlap,
)

logger = logging.getLogger(__name__)

HalfPlane = Tuple[Fraction, Fraction, Fraction]


def clip_polygon(polygon: Sequence[Coords], half_planes: Iterable[HalfPlane]) -> List[Coords]:
    """Clips a convex polygon by half-planes ``ca * a + cb * b >= c``, exactly."""
    out = list(polygon)
    for ca, cb, c in half_planes:
        if not out:
            break
        clipped: List[Coords] = []
        for idx, p in enumerate(out):
            q = out[(idx + 1) % len(out)]
            fp = ca * p[0] + cb * p[1] - c
            fq = ca * q[0] + cb * q[1] - c
            if fp >= 0:
                clipped.append(p)
            if (fp > 0 > fq) or (fp < 0 < fq):
                t = Fraction(fp, fp - fq)
                clipped.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
        out = clipped
    return out


def polygon_area(polygon: Sequence[Coords]) -> Fraction:
    """Area of a polygon in lattice area units (a unit triangle has area 1)."""
    total = Fraction(0)
    for idx, p in enumerate(polygon):
        total += cross(p, polygon[(idx + 1) % len(polygon)])
    return abs(total)


def _edge_half_planes(polygon: Sequence[Coords]) -> List[HalfPlane]:
    planes = []
    for idx, p in enumerate(polygon):
        q = polygon[(idx + 1) % len(polygon)]
        # cross(q - p, x - p) >= 0
        ca, cb = -(q[1] - p[1]), q[0] - p[0]
        planes.append((Fraction(ca), Fraction(cb), ca * p[0] + cb * p[1]))
    return planes


def _inside(planes: Sequence[HalfPlane], p: Coords, strict: bool = False) -> bool:
    for ca, cb, c in planes:
        value = ca * p[0] + cb * p[1]
        if value < c or (strict and value == c):
            return False
    return True


class RegionKind(str, Enum):
    """Kind of region covered by a tiling."""

    CONVEX_POLYGON = "convex_polygon"
    PLANE_WINDOW = "plane_window"


class Window(BaseModel):
    """Window is an axis-parallel box in lattice coordinates, a parallelogram in the plane.

    Attributes:
        a_min: Lower bound of ``a``.
        a_max: Upper bound of ``a``.
        b_min: Lower bound of ``b``.
        b_max: Upper bound of ``b``.
    """

    a_min: Rational
    a_max: Rational
    b_min: Rational
    b_max: Rational

    class Config:  # noqa: D101, D106
        frozen = True

    @classmethod
    def validate(cls, value: Any) -> "Window":
        """Also accepts ``[a_min, a_max, b_min, b_max]``."""
        if isinstance(value, (list, tuple)):
            if len(value) != 4:
                raise ValueError(f"Invalid window {value!r}")
            return cls(a_min=value[0], a_max=value[1], b_min=value[2], b_max=value[3])
        return super().validate(value)  # type: ignore

    @root_validator(skip_on_failure=True)
    def _validate_bounds(cls, values: Dict[str, Any]) -> Dict[str, Any]:
        if values["a_min"] >= values["a_max"] or values["b_min"] >= values["b_max"]:
            raise ValueError("window bounds must satisfy min < max")
        return values

    def corners(self) -> List[Coords]:
        return [
            (self.a_min, self.b_min),
            (self.a_max, self.b_min),
            (self.a_max, self.b_max),
            (self.a_min, self.b_max),
        ]

    @property
    def area(self) -> Fraction:
        return Fraction(2 * (self.a_max - self.a_min) * (self.b_max - self.b_min))

    def half_planes(self) -> List[HalfPlane]:
        one = Fraction(1)
        zero = Fraction(0)
        return [
            (one, zero, Fraction(self.a_min)),
            (-one, zero, -Fraction(self.a_max)),
            (zero, one, Fraction(self.b_min)),
            (zero, -one, -Fraction(self.b_max)),
        ]

    def contains(self, p: Coords, strict: bool = False) -> bool:
        return _inside(self.half_planes(), p, strict)

    def inset(self, margin: Fraction) -> Optional["Window"]:
        """The window shrunk by ``margin`` on every side, or None when nothing is left."""
        a_lo, a_hi = self.a_min + margin, self.a_max - margin
        b_lo, b_hi = self.b_min + margin, self.b_max - margin
        if a_lo >= a_hi or b_lo >= b_hi:
            return None
        return Window(a_min=a_lo, a_max=a_hi, b_min=b_lo, b_max=b_hi)

    def to_document(self) -> List[str]:
        return [format_rational(v) for v in (self.a_min, self.a_max, self.b_min, self.b_max)]


class Region(BaseModel):
    """Region is the set a tiling covers.

    Attributes:
        kind: A convex polygon, or a window onto a tiling of the whole plane.
        vertices: Polygon vertices, counter-clockwise (polygon case).
        window: The analysed window (plane window case).
    """

    kind: RegionKind
    vertices: Tuple[LatticePoint, ...] = ()
    window: Optional[Window] = None

    class Config:  # noqa: D101, D106
        frozen = True

    @root_validator(skip_on_failure=True)
    def _validate_shape(cls, values: Dict[str, Any]) -> Dict[str, Any]:
        if values["kind"] == RegionKind.PLANE_WINDOW:
            if values.get("window") is None:
                raise ValueError("a plane window region needs a window")
            return values
        vertices = [v.coords for v in values.get("vertices", ())]
        if len(vertices) < 3:
            raise ValueError("a polygon region needs at least three vertices")
        directions = []
        for idx, p in enumerate(vertices):
            step = direction_between(p, vertices[(idx + 1) % len(vertices)])
            if step is None:
                raise ValueError(f"polygon edge {idx} is not along a lattice direction")
            directions.append(step[0])
        total = 0
        for idx, d in enumerate(directions):
            turn = (directions[(idx + 1) % len(directions)] - d) % 6
            if turn not in (1, 2):
                raise ValueError(
                    f"polygon turns by {turn * 60} degrees after edge {idx}, "
                    "inner angles must be 60 or 120 degrees"
                )
            total += turn
        if total != 6:
            raise ValueError("polygon is not convex and counter-clockwise")
        return values

    @classmethod
    def polygon(cls, vertices: Sequence[Tuple[RationalLike, RationalLike]]) -> "Region":
        return cls(
            kind=RegionKind.CONVEX_POLYGON,
            vertices=tuple(LatticePoint(a=a, b=b) for a, b in vertices),
        )

    @classmethod
    def plane_window(
        cls, a_min: RationalLike, a_max: RationalLike, b_min: RationalLike, b_max: RationalLike
    ) -> "Region":
        window = Window(a_min=a_min, a_max=a_max, b_min=b_min, b_max=b_max)
        return cls(kind=RegionKind.PLANE_WINDOW, window=window)

    @property
    def is_polygon(self) -> bool:
        return self.kind == RegionKind.CONVEX_POLYGON

    def vertex_coords(self) -> List[Coords]:
        if self.is_polygon:
            return [v.coords for v in self.vertices]
        assert self.window is not None
        return self.window.corners()

    def half_planes(self) -> List[HalfPlane]:
        return _edge_half_planes(self.vertex_coords())

    @property
    def area(self) -> Fraction:
        return polygon_area(self.vertex_coords())

    def contains(self, p: Coords, strict: bool = False) -> bool:
        return _inside(self.half_planes(), p, strict)

    def inner_angles(self) -> List[int]:
        """Inner angle at every polygon vertex in multiples of 60 degrees."""
        vertices = self.vertex_coords()
        steps = [
            direction_between(p, vertices[(idx + 1) % len(vertices)])
            for idx, p in enumerate(vertices)
        ]
        angles = []
        for idx in range(len(vertices)):
            incoming, outgoing = steps[idx - 1], steps[idx]
            assert incoming is not None and outgoing is not None
            angles.append(3 - (outgoing[0] - incoming[0]) % 6)
        return angles

    def to_document(self) -> Dict[str, Any]:
        if self.is_polygon:
            return {"kind": self.kind.value, "vertices": [v.to_document() for v in self.vertices]}
        assert self.window is not None
        return {"kind": self.kind.value, "window": self.window.to_document()}


class Tiling(BaseModel):
    """Tiling is a family of lattice triangles covering a region.

    Attributes:
        tiles: The tiles; a fundamental cell when ``periods`` is set.
        region: The covered region or the analysed window.
        periods: Optional pair of linearly independent translation vectors.
    """

    tiles: Tuple[Triangle, ...]
    region: Region
    periods: Optional[Tuple[LatticePoint, LatticePoint]] = None

    class Config:  # noqa: D101, D106
        frozen = True

    @validator("periods")
    def _validate_periods(
        cls, value: Optional[Tuple[LatticePoint, LatticePoint]], values: Dict[str, Any]
    ) -> Optional[Tuple[LatticePoint, LatticePoint]]:
        if value is None:
            return value
        if cross(value[0].coords, value[1].coords) == 0:
            raise ValueError("period vectors must be linearly independent")
        region = values.get("region")
        if region is not None and region.is_polygon:
            raise ValueError("periods require a plane window region")
        return value

    @classmethod
    def from_path(cls, path: Union[str, Path]) -> "Tiling":
        """Loads a tiling from a JSON document on disk."""
        return cls.parse_obj(json.loads(Path(path).read_text()))

    def to_path(self, path: Union[str, Path]) -> None:
        Path(path).write_text(json.dumps(self.to_document(), indent=2) + "\n")

    def to_document(self) -> Dict[str, Any]:
        document: Dict[str, Any] = {
            "tiles": [t.to_document() for t in self.tiles],
            "region": self.region.to_document(),
        }
        if self.periods is not None:
            document["periods"] = [p.to_document() for p in self.periods]
        return document

    @property
    def is_periodic(self) -> bool:
        return self.periods is not None

    @property
    def window(self) -> Optional[Window]:
        return self.region.window

    def translated(self, offset: Coords) -> "Tiling":
        """The tiling moved by a lattice vector; periods are unchanged."""
        da, db = offset
        if self.region.is_polygon:
            region = Region.polygon([(v.a + da, v.b + db) for v in self.region.vertices])
        else:
            window = self.window
            assert window is not None
            region = Region.plane_window(
                window.a_min + da, window.a_max + da, window.b_min + db, window.b_max + db
            )
        return Tiling(
            tiles=tuple(t.translated(offset) for t in self.tiles),
            region=region,
            periods=self.periods,
        )

    def scaled(self, factor: RationalLike) -> "Tiling":
        k = Rational.validate(factor)
        if k <= 0:
            raise ValueError(f"scale factor must be positive, got {k}")
        if self.region.is_polygon:
            region = Region.polygon([(v.a * k, v.b * k) for v in self.region.vertices])
        else:
            window = self.window
            assert window is not None
            region = Region.plane_window(
                window.a_min * k, window.a_max * k, window.b_min * k, window.b_max * k
            )
        periods = None
        if self.periods is not None:
            periods = (self.periods[0].scaled(k), self.periods[1].scaled(k))
        return Tiling(tiles=tuple(t.scaled(k) for t in self.tiles), region=region, periods=periods)

    def transformed(self, isometry: LatticeIsometry) -> "Tiling":
        """The image of the tiling under a lattice isometry.

        Polygon regions move with the tiles. Periodic tilings keep their window, which stays
        a window onto the transformed infinite tiling.
        """
        return transform_tiling(self, isometry)


def transform_tiling(t: Tiling, isometry: LatticeIsometry) -> Tiling:
    """Applies a lattice isometry to a polygon tiling or a periodic tiling."""
    tiles = tuple(isometry.apply_triangle(tile) for tile in t.tiles)
    if t.region.is_polygon:
        vertices = [isometry.apply_coords(v.coords) for v in t.region.vertices]
        if isometry.reflect:
            vertices.reverse()
        return Tiling(tiles=tiles, region=Region.polygon(vertices))
    if t.periods is None:
        raise ValueError("only polygon and periodic tilings can be transformed")
    periods = (isometry.apply_point(t.periods[0]), isometry.apply_point(t.periods[1]))
    return Tiling(tiles=tiles, region=t.region, periods=periods)


class FailureKind(str, Enum):
    """Reason a tiling fails validation."""

    OVERLAP = "overlap"
    GAP = "gap"
    OUTSIDE = "outside"
    PERIOD_INCONSISTENCY = "period_inconsistency"


class ValidityFailure(BaseModel):
    """ValidityFailure describes the first validity failure found.

    Attributes:
        kind: What failed.
        tiles: Indices of the tiles involved (into the tile list, or the 3x3 block for periodic
            tilings).
        witness: A point exhibiting the failure, when one was found.
        detail: Human-readable description.
    """

    kind: FailureKind
    tiles: Tuple[int, ...] = ()
    witness: Optional[LatticePoint] = None
    detail: str = ""

    def to_document(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "tiles": list(self.tiles),
            "witness": self.witness.to_document() if self.witness is not None else None,
            "detail": self.detail,
        }

    def __str__(self) -> str:
        return f"{self.kind.value}: {self.detail}"


class ValidityReport(BaseModel):
    """ValidityReport is the outcome of validating a tiling.

    Attributes:
        valid: Whether the tiling is valid.
        failure: The failure found, absent exactly when the tiling is valid.
    """

    valid: bool
    failure: Optional[ValidityFailure] = None

    @root_validator(skip_on_failure=True)
    def _validate_consistency(cls, values: Dict[str, Any]) -> Dict[str, Any]:
        if values["valid"] != (values.get("failure") is None):
            raise ValueError("a report is valid exactly when it carries no failure")
        return values

    def to_document(self) -> Dict[str, Any]:
        return {
            "valid": self.valid,
            "failure": self.failure.to_document() if self.failure is not None else None,
        }


def _point(p: Coords) -> LatticePoint:
    return LatticePoint(a=p[0], b=p[1])


def _first_overlap(tiles: Sequence[Triangle]) -> Optional[Tuple[int, int]]:
    projections = [t.projections() for t in tiles]
    order = sorted(range(len(tiles)), key=lambda i: projections[i][0][0])
    active: List[int] = []
    for i in order:
        a_lo = projections[i][0][0]
        active = [j for j in active if projections[j][0][1] > a_lo]
        for j in active:
            if interiors_overlap(tiles[i], tiles[j]):
                return min(i, j), max(i, j)
        active.append(i)
    return None


def _overlap_witness(t1: Triangle, t2: Triangle) -> Coords:
    common = clip_polygon(t1.ccw_coords(), t2.half_planes())
    n = len(common)
    return sum((p[0] for p in common), Fraction(0)) / n, sum((p[1] for p in common), Fraction(0)) / n


def _find_uncovered(tiles: Sequence[Triangle], boundary: Sequence[Coords]) -> Optional[Coords]:
    """Searches for a point inside ``boundary`` covered by no tile.

    Candidates are taken just off tile sides and region sides; every returned point is
    checked exactly, but a gap is not guaranteed to be found.
    """
    planes = _edge_half_planes(boundary)
    sides: List[Tuple[Coords, Coords, int]] = []
    for tile in tiles:
        p, q, r = tile.ccw_coords()
        sides.extend([(p, q, -2), (q, r, -2), (r, p, -2)])
    for idx, p in enumerate(boundary):
        sides.append((p, boundary[(idx + 1) % len(boundary)], 2))
    smallest = min((t.side for t in tiles), default=Fraction(1))
    for shrink in (4, 64, 4096):
        delta = Fraction(smallest) / shrink
        for p, q, turn in sides:
            step = direction_between(p, q)
            if step is None:
                continue
            direction, length = step
            for fraction in (Fraction(1, 2), Fraction(1, 8), Fraction(7, 8)):
                base = point_along(p, direction, length * fraction)
                candidate = point_along(base, direction.turn(turn), delta)
                if not _inside(planes, candidate, strict=True):
                    continue
                if not any(tile.contains(candidate) for tile in tiles):
                    return candidate
    return None


def _validate_disjoint(tiles: Sequence[Triangle]) -> Optional[ValidityFailure]:
    pair = _first_overlap(tiles)
    if pair is None:
        return None
    i, j = pair
    return ValidityFailure(
        kind=FailureKind.OVERLAP,
        tiles=pair,
        witness=_point(_overlap_witness(tiles[i], tiles[j])),
        detail=f"tiles {i} and {j} overlap",
    )


def _gap_failure(
    kind: FailureKind, tiles: Sequence[Triangle], boundary: Sequence[Coords], detail: str
) -> ValidityFailure:
    witness = _find_uncovered(tiles, boundary)
    return ValidityFailure(
        kind=kind, witness=_point(witness) if witness is not None else None, detail=detail
    )


def _validate_polygon(t: Tiling) -> ValidityReport:
    failure = _validate_disjoint(t.tiles)
    if failure is None:
        for idx, tile in enumerate(t.tiles):
            if not all(t.region.contains(v) for v in tile.vertex_coords()):
                failure = ValidityFailure(
                    kind=FailureKind.OUTSIDE, tiles=(idx,), detail=f"tile {idx} leaves the region"
                )
                break
    if failure is None:
        covered = sum((tile.area for tile in t.tiles), Fraction(0))
        if covered != t.region.area:
            failure = _gap_failure(
                FailureKind.GAP,
                t.tiles,
                t.region.vertex_coords(),
                f"tiles cover area {covered} of {t.region.area}",
            )
    return ValidityReport(valid=failure is None, failure=failure)


def _validate_window(t: Tiling) -> ValidityReport:
    window = t.window
    assert window is not None
    failure = _validate_disjoint(t.tiles)
    covered = Fraction(0)
    if failure is None:
        for idx, tile in enumerate(t.tiles):
            area = polygon_area(clip_polygon(tile.ccw_coords(), window.half_planes()))
            if area == 0:
                failure = ValidityFailure(
                    kind=FailureKind.OUTSIDE,
                    tiles=(idx,),
                    detail=f"tile {idx} does not meet the window",
                )
                break
            covered += area
    if failure is None and covered != window.area:
        failure = _gap_failure(
            FailureKind.GAP,
            t.tiles,
            window.corners(),
            f"tiles cover area {covered} of the window area {window.area}",
        )
    return ValidityReport(valid=failure is None, failure=failure)


def _cell_polygon(periods: Tuple[LatticePoint, LatticePoint]) -> List[Coords]:
    p1, p2 = periods[0].coords, periods[1].coords
    if cross(p1, p2) < 0:
        p1, p2 = p2, p1
    zero = Fraction(0)
    return [(zero, zero), p1, (p1[0] + p2[0], p1[1] + p2[1]), p2]


def cell_area(periods: Tuple[LatticePoint, LatticePoint]) -> Fraction:
    """Area of the period parallelogram in lattice area units."""
    return abs(2 * cross(periods[0].coords, periods[1].coords))


def _validate_periodic(t: Tiling) -> ValidityReport:
    assert t.periods is not None
    block = block_tiles(t)
    failure = _validate_disjoint(block)
    if failure is not None:
        failure = ValidityFailure(
            kind=FailureKind.OVERLAP,
            tiles=failure.tiles,
            witness=failure.witness,
            detail=f"translates {failure.tiles[0]} and {failure.tiles[1]} of the 3x3 block overlap",
        )
    else:
        covered = sum((tile.area for tile in t.tiles), Fraction(0))
        expected = cell_area(t.periods)
        if covered != expected:
            failure = _gap_failure(
                FailureKind.PERIOD_INCONSISTENCY,
                block,
                _cell_polygon(t.periods),
                f"cell tiles cover area {covered}, the period cell has area {expected}",
            )
    return ValidityReport(valid=failure is None, failure=failure)


def validate(t: Tiling) -> ValidityReport:
    """Checks that the tiles cover the region with pairwise disjoint interiors."""
    if t.region.is_polygon:
        report = _validate_polygon(t)
    elif t.is_periodic:
        report = _validate_periodic(t)
    else:
        report = _validate_window(t)
    logger.debug("validated %d tiles: %s", len(t.tiles), report.failure or "valid")
    return report


_BLOCK_OFFSETS = [(0, 0)] + [(k, l) for k in (-1, 0, 1) for l in (-1, 0, 1) if (k, l) != (0, 0)]


def block_tiles(t: Tiling) -> List[Triangle]:
    """The fundamental cell followed by its eight period translates."""
    if t.periods is None:
        return list(t.tiles)
    p1, p2 = t.periods[0].coords, t.periods[1].coords
    return [
        tile.translated((k * p1[0] + l * p2[0], k * p1[1] + l * p2[1]))
        for k, l in _BLOCK_OFFSETS
        for tile in t.tiles
    ]


def materialize(t: Tiling) -> List[Triangle]:
    """The tiles meeting the analysed window; the tile list itself for non-periodic tilings."""
    if t.periods is None or not t.tiles:
        return list(t.tiles)
    window = t.window
    assert window is not None
    p1, p2 = t.periods[0].coords, t.periods[1].coords
    det = cross(p1, p2)
    a_lo = min(tile.projections()[0][0] for tile in t.tiles)
    a_hi = max(tile.projections()[0][1] for tile in t.tiles)
    b_lo = min(tile.projections()[1][0] for tile in t.tiles)
    b_hi = max(tile.projections()[1][1] for tile in t.tiles)
    corners = [
        (window.a_min - a_hi, window.b_min - b_hi),
        (window.a_max - a_lo, window.b_min - b_hi),
        (window.a_max - a_lo, window.b_max - b_lo),
        (window.a_min - a_hi, window.b_max - b_lo),
    ]
    ks = [cross(v, p2) / det for v in corners]
    ls = [cross(p1, v) / det for v in corners]
    planes = window.half_planes()
    patch = []
    for k in range(math.floor(min(ks)), math.ceil(max(ks)) + 1):
        for l in range(math.floor(min(ls)), math.ceil(max(ls)) + 1):
            offset = (k * p1[0] + l * p2[0], k * p1[1] + l * p2[1])
            for tile in t.tiles:
                moved = tile.translated(offset)
                (ta_lo, ta_hi), (tb_lo, tb_hi), _ = moved.projections()
                if ta_hi <= window.a_min or ta_lo >= window.a_max:
                    continue
                if tb_hi <= window.b_min or tb_lo >= window.b_max:
                    continue
                if polygon_area(clip_polygon(moved.ccw_coords(), planes)) > 0:
                    patch.append(moved)
    logger.debug("materialized %d tiles in window %s", len(patch), window.to_document())
    return patch


def diameter_multiset(t: Tiling) -> Counter[Fraction]:
    """Multiset of tile diameters over the tile list."""
    return collections.Counter(Fraction(tile.side) for tile in t.tiles)


def inf_diameter(t: Tiling) -> Fraction:
    """Smallest tile diameter."""
    if not t.tiles:
        raise EmptyTilingError("the infimum diameter of an empty tiling is undefined")
    return min(Fraction(tile.side) for tile in t.tiles)


def largest_side(t: Tiling) -> Fraction:
    if not t.tiles:
        raise EmptyTilingError("an empty tiling has no largest side")
    return max(Fraction(tile.side) for tile in t.tiles)


class PerfectnessReport(BaseModel):
    """PerfectnessReport tells whether all tiles have pairwise distinct diameters.

    Attributes:
        perfect: Whether the tiling is perfect.
        reason: Why it is not perfect, when it is not.
        repeated: Diameters occurring more than once in the tile list.
    """

    perfect: bool
    reason: Optional[str] = None
    repeated: Tuple[Rational, ...] = ()

    def to_document(self) -> Dict[str, Any]:
        return {
            "perfect": self.perfect,
            "reason": self.reason,
            "repeated": [format_rational(v) for v in self.repeated],
        }


def perfectness(t: Tiling) -> PerfectnessReport:
    counts = diameter_multiset(t)
    repeated = tuple(sorted(v for v, n in counts.items() if n > 1))
    if t.is_periodic and t.tiles:
        return PerfectnessReport(perfect=False, reason="periodic repetition", repeated=repeated)
    if repeated:
        sizes = ", ".join(str(v) for v in repeated)
        return PerfectnessReport(perfect=False, reason=f"repeated diameters {sizes}", repeated=repeated)
    return PerfectnessReport(perfect=True)


def is_perfect(t: Tiling) -> bool:
    """Whether all tile diameters are pairwise distinct."""
    return perfectness(t).perfect


def shared_side_pairs(t: Tiling) -> List[Tuple[int, int]]:
    """Pairs of tiles having a common full side.

    For periodic tilings the indices refer to the 3x3 block, whose first ``len(t.tiles)``
    entries are the fundamental cell; only pairs touching the cell are reported.
    """
    tiles = block_tiles(t)
    owners: Dict[Tuple[Coords, Coords], List[int]] = {}
    for idx, tile in enumerate(tiles):
        for side in tile.edges():
            key = tuple(sorted((side.start.coords, side.end.coords)))
            owners.setdefault(key, []).append(idx)  # type: ignore[arg-type]
    pairs = set()
    for indices in owners.values():
        for x in range(len(indices)):
            for y in range(x + 1, len(indices)):
                i, j = sorted((indices[x], indices[y]))
                if i < len(t.tiles):
                    pairs.add((i, j))
    return sorted(pairs)


# area of the unit disc over the unit triangle, rounded up to the next double
_DISC_OVER_TRIANGLE = Fraction(math.nextafter(4 * math.pi / math.sqrt(3), math.inf))


def packing_bound(rho: RationalLike, d: RationalLike) -> int:
    """Bound on the number of disjoint triangles of diameter ``d`` meeting a disc of radius ``rho``.

    Every such triangle lies in the disc of radius ``rho + d``; the bound is the area ratio,
    rounded outwards before taking the floor.
    """
    rho_q, d_q = Rational.validate(rho), Rational.validate(d)
    if rho_q <= 0 or d_q <= 0:
        raise ValueError("packing_bound needs positive radius and diameter")
    ratio = ((rho_q + d_q) / d_q) ** 2 * _DISC_OVER_TRIANGLE
    return ratio.numerator // ratio.denominator


class SideConditionViolation(BaseModel):
    """SideConditionViolation is a polygon side breaking a boundary condition.

    Attributes:
        side: Index of the region side, starting at the first vertex.
        condition: "i" (a side at a 120 degree corner holds exactly one tile side) or
            "ii" (a side between two 60 degree corners holds at most two tile sides).
        count: Number of tiles with a side on the region side.
    """

    side: int
    condition: str
    count: int


def side_conditions(t: Tiling) -> List[SideConditionViolation]:
    """Checks the boundary conditions that single out the finite polygon tilings."""
    if not t.region.is_polygon:
        raise ValueError("side conditions apply to polygon regions only")
    vertices = t.region.vertex_coords()
    angles = t.region.inner_angles()
    violations = []
    for idx, p in enumerate(vertices):
        q = vertices[(idx + 1) % len(vertices)]
        region_side = Segment.between(p, q)
        count = sum(
            1
            for tile in t.tiles
            if any(segment_overlap(region_side, edge) is not None for edge in tile.edges())
        )
        corners = (angles[idx], angles[(idx + 1) % len(vertices)])
        if 2 in corners and count != 1:
            violations.append(SideConditionViolation(side=idx, condition="i", count=count))
        elif corners == (1, 1) and count > 2:
            violations.append(SideConditionViolation(side=idx, condition="ii", count=count))
    return violations

