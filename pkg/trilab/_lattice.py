"""Exact geometry on the triangular lattice.

Points are written in the lattice basis ``e1 = (1, 0)`` and ``e2 = (1/2, sqrt(3)/2)``,
so a point ``(a, b)`` sits at ``a * e1 + b * e2``. Every coordinate is a ``Fraction``;
the only floating point values produced here are Cartesian images used for drawing.
"""
import math
from enum import Enum, IntEnum
from fractions import Fraction
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, Field, validator

Coords = Tuple[Fraction, Fraction]
RationalLike = Union[int, Fraction, str]


class Rational(Fraction):
    """Pydantic field type for exact rationals.

    Accepts ``int``, ``Fraction`` and strings of the form ``"n"`` or ``"n/d"``.
    """

    @classmethod
    def __get_validators__(cls) -> Iterator[Callable[..., Any]]:  # noqa: D105
        yield cls.validate

    @classmethod
    def validate(cls, value: Any) -> Fraction:
        """Converts ``value`` into a ``Fraction``."""
        if isinstance(value, bool):
            raise ValueError(f"Invalid type {type(value)} for a rational")
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        if isinstance(value, str):
            try:
                return Fraction(value.strip())
            except (ValueError, ZeroDivisionError):
                raise ValueError(f"Invalid rational {value!r}")
        raise ValueError(f"Invalid type {type(value)} for a rational")


def format_rational(value: Fraction) -> str:
    """Formats a rational as ``"num/den"``, integers included."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


class Direction(IntEnum):
    """The six lattice directions, counter-clockwise from east."""

    E = 0
    NE = 1
    NW = 2
    W = 3
    SW = 4
    SE = 5

    @property
    def vector(self) -> Tuple[int, int]:
        """Unit vector of the direction in lattice coordinates."""
        return _VECTORS[self]

    @property
    def line_class(self) -> "Direction":
        """One of ``E``, ``NE`` or ``NW``: the class of lines parallel to the direction."""
        return Direction(self % 3)

    def rotate60(self) -> "Direction":
        """The direction turned counter-clockwise by 60 degrees."""
        return Direction((self + 1) % 6)

    def opposite(self) -> "Direction":
        return Direction((self + 3) % 6)

    def turn(self, steps: int) -> "Direction":
        """The direction turned counter-clockwise by ``steps`` times 60 degrees."""
        return Direction((self + steps) % 6)


_VECTORS: Dict[Direction, Tuple[int, int]] = {
    Direction.E: (1, 0),
    Direction.NE: (0, 1),
    Direction.NW: (-1, 1),
    Direction.W: (-1, 0),
    Direction.SW: (0, -1),
    Direction.SE: (1, -1),
}

LINE_CLASSES = (Direction.E, Direction.NE, Direction.NW)


def rotate60(direction: Direction) -> Direction:
    """Turns a direction counter-clockwise by 60 degrees."""
    return direction.rotate60()


def angle_between(d1: Direction, d2: Direction) -> int:
    """Unsigned angle between two directions in multiples of 60 degrees, from 0 to 3."""
    turn = (int(d2) - int(d1)) % 6
    return min(turn, 6 - turn)


def cross(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    """Determinant of two vectors in lattice coordinates.

    Positive when ``v`` lies counter-clockwise of ``u``.
    """
    return Fraction(u[0] * v[1] - u[1] * v[0])


def line_coordinate(line: Direction, a: Fraction, b: Fraction) -> Fraction:
    """The quantity constant along lines of class ``line`` through ``(a, b)``."""
    if line == Direction.E:
        return Fraction(b)
    if line == Direction.NE:
        return Fraction(a)
    return Fraction(a + b)


def line_parameter(line: Direction, a: Fraction, b: Fraction) -> Fraction:
    """Position of ``(a, b)`` along its line of class ``line``, increasing in the class direction."""
    if line == Direction.E:
        return Fraction(a)
    return Fraction(b)


def point_on_line(line: Direction, coordinate: Fraction, parameter: Fraction) -> Coords:
    """Inverse of ``(line_coordinate, line_parameter)``."""
    if line == Direction.E:
        return Fraction(parameter), Fraction(coordinate)
    if line == Direction.NE:
        return Fraction(coordinate), Fraction(parameter)
    return Fraction(coordinate - parameter), Fraction(parameter)


def direction_between(p: Coords, q: Coords) -> Optional[Tuple[Direction, Fraction]]:
    """Direction and length of ``q - p`` when it is parallel to a lattice direction."""
    da, db = q[0] - p[0], q[1] - p[1]
    if da == 0 and db == 0:
        return None
    if db == 0:
        return (Direction.E if da > 0 else Direction.W), Fraction(abs(da))
    if da == 0:
        return (Direction.NE if db > 0 else Direction.SW), Fraction(abs(db))
    if da == -db:
        return (Direction.NW if db > 0 else Direction.SE), Fraction(abs(db))
    return None


class LatticePoint(BaseModel):
    """LatticePoint is a point of the plane in lattice coordinates.

    Attributes:
        a: Coefficient of ``e1``.
        b: Coefficient of ``e2``.
    """

    a: Rational
    b: Rational

    class Config:  # noqa: D101, D106
        frozen = True

    @classmethod
    def validate(cls, value: Any) -> "LatticePoint":
        """Also accepts ``[a, b]`` pairs."""
        if isinstance(value, (list, tuple)):
            if len(value) != 2:
                raise ValueError(f"Invalid point {value!r}")
            return cls(a=value[0], b=value[1])
        return super().validate(value)  # type: ignore

    @classmethod
    def of(cls, a: RationalLike, b: RationalLike) -> "LatticePoint":
        return cls(a=a, b=b)

    @property
    def coords(self) -> Coords:
        return Fraction(self.a), Fraction(self.b)

    def __add__(self, other: "LatticePoint") -> "LatticePoint":
        return LatticePoint(a=self.a + other.a, b=self.b + other.b)

    def __sub__(self, other: "LatticePoint") -> "LatticePoint":
        return LatticePoint(a=self.a - other.a, b=self.b - other.b)

    def scaled(self, factor: RationalLike) -> "LatticePoint":
        k = Rational.validate(factor)
        return LatticePoint(a=self.a * k, b=self.b * k)

    def to_document(self) -> List[str]:
        return [format_rational(self.a), format_rational(self.b)]

    def __str__(self) -> str:
        return f"({self.a}, {self.b})"


def squared_norm(v: LatticePoint) -> Fraction:
    """Squared Euclidean length of a vector given in lattice coordinates."""
    return Fraction(v.a * v.a + v.a * v.b + v.b * v.b)


def to_cartesian(p: Union[LatticePoint, Coords]) -> Tuple[float, float]:
    """Cartesian image of a lattice point."""
    a, b = p.coords if isinstance(p, LatticePoint) else p
    return float(a + b / 2), float(b) * math.sqrt(3) / 2


def point_along(p: Coords, direction: Direction, length: Fraction) -> Coords:
    """The point reached from ``p`` after ``length`` units in ``direction``."""
    da, db = direction.vector
    return p[0] + da * length, p[1] + db * length


class Segment(BaseModel):
    """Segment is a non-degenerate segment parallel to a lattice direction.

    Attributes:
        start: First endpoint.
        end: Second endpoint.
    """

    start: LatticePoint
    end: LatticePoint

    class Config:  # noqa: D101, D106
        frozen = True

    @validator("end")
    def _validate_end(cls, value: LatticePoint, values: Dict[str, Any]) -> LatticePoint:
        start = values.get("start")
        if start is not None and direction_between(start.coords, value.coords) is None:
            raise ValueError(f"{start} -> {value} is not parallel to a lattice direction")
        return value

    @classmethod
    def between(cls, start: Coords, end: Coords) -> "Segment":
        return cls(start=LatticePoint(a=start[0], b=start[1]), end=LatticePoint(a=end[0], b=end[1]))

    @property
    def direction(self) -> Direction:
        found = direction_between(self.start.coords, self.end.coords)
        assert found is not None
        return found[0]

    @property
    def length(self) -> Fraction:
        found = direction_between(self.start.coords, self.end.coords)
        assert found is not None
        return found[1]

    @property
    def line_class(self) -> Direction:
        return self.direction.line_class

    @property
    def line_key(self) -> Fraction:
        """Coordinate identifying the supporting line within its class."""
        return line_coordinate(self.line_class, *self.start.coords)

    def parameter_range(self) -> Tuple[Fraction, Fraction]:
        """Sorted positions of both endpoints along the supporting line."""
        line = self.line_class
        lo = line_parameter(line, *self.start.coords)
        hi = line_parameter(line, *self.end.coords)
        return (lo, hi) if lo <= hi else (hi, lo)

    def reversed(self) -> "Segment":
        return Segment(start=self.end, end=self.start)

    def contains(self, p: Coords, strict: bool = False) -> bool:
        """Whether ``p`` lies on the segment (on its relative interior when ``strict``)."""
        line = self.line_class
        if line_coordinate(line, *p) != self.line_key:
            return False
        lo, hi = self.parameter_range()
        t = line_parameter(line, *p)
        return lo < t < hi if strict else lo <= t <= hi

    def to_document(self) -> List[List[str]]:
        return [self.start.to_document(), self.end.to_document()]

    def __str__(self) -> str:
        return f"[{self.start} -> {self.end}]"


def segment_overlap(s1: Segment, s2: Segment) -> Optional[Segment]:
    """Common part of two collinear segments, when it has positive length.

    The result runs in the increasing parameter direction of the supporting line.
    """
    if s1.line_class != s2.line_class or s1.line_key != s2.line_key:
        return None
    lo1, hi1 = s1.parameter_range()
    lo2, hi2 = s2.parameter_range()
    lo, hi = max(lo1, lo2), min(hi1, hi2)
    if lo >= hi:
        return None
    line, key = s1.line_class, s1.line_key
    return Segment.between(point_on_line(line, key, lo), point_on_line(line, key, hi))


class Orientation(str, Enum):
    """Orientation of a lattice triangle."""

    UP = "up"
    DOWN = "down"


class Triangle(BaseModel):
    """Triangle is an equilateral triangle with sides along lattice directions.

    An up triangle with anchor ``p`` and side ``s`` has vertices ``p``, ``p + s*E``,
    ``p + s*NE``. A down triangle has vertices ``p``, ``p + s*E``, ``p + s*SE``.

    Attributes:
        orientation: Up or down.
        anchor: The western vertex of the horizontal side.
        side: Side length, positive.
    """

    orientation: Orientation = Field(alias="o")
    anchor: LatticePoint
    side: Rational

    class Config:  # noqa: D101, D106
        frozen = True
        allow_population_by_field_name = True

    @validator("side")
    def _validate_side(cls, value: Fraction) -> Fraction:
        if value <= 0:
            raise ValueError(f"side must be positive, got {value}")
        return value

    @classmethod
    def up(cls, a: RationalLike, b: RationalLike, side: RationalLike = 1) -> "Triangle":
        return cls(orientation=Orientation.UP, anchor=LatticePoint(a=a, b=b), side=side)

    @classmethod
    def down(cls, a: RationalLike, b: RationalLike, side: RationalLike = 1) -> "Triangle":
        return cls(orientation=Orientation.DOWN, anchor=LatticePoint(a=a, b=b), side=side)

    @classmethod
    def from_vertices(cls, vertices: Sequence[Coords]) -> "Triangle":
        """Recovers the canonical description of a lattice triangle from its vertices."""
        points = sorted(set((Fraction(a), Fraction(b)) for a, b in vertices))
        if len(points) != 3:
            raise ValueError(f"{vertices} are not three distinct points")
        for i, j, k in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
            p, q, r = points[i], points[j], points[k]
            if p[1] != q[1]:
                continue
            west, east = (p, q) if p[0] < q[0] else (q, p)
            side = east[0] - west[0]
            if r == (west[0], west[1] + side):
                return cls.up(west[0], west[1], side)
            if r == (east[0], east[1] - side):
                return cls.down(west[0], west[1], side)
        raise ValueError(f"{vertices} do not form a lattice triangle")

    @property
    def is_up(self) -> bool:
        return self.orientation == Orientation.UP

    def vertex_coords(self) -> Tuple[Coords, Coords, Coords]:
        """Anchor, eastern end of the horizontal side, then the remaining vertex."""
        a, b, s = Fraction(self.anchor.a), Fraction(self.anchor.b), Fraction(self.side)
        if self.is_up:
            return (a, b), (a + s, b), (a, b + s)
        return (a, b), (a + s, b), (a + s, b - s)

    def ccw_coords(self) -> Tuple[Coords, Coords, Coords]:
        p, q, r = self.vertex_coords()
        return (p, q, r) if self.is_up else (p, r, q)

    def vertices(self) -> Tuple[LatticePoint, LatticePoint, LatticePoint]:
        p, q, r = self.vertex_coords()
        return (
            LatticePoint(a=p[0], b=p[1]),
            LatticePoint(a=q[0], b=q[1]),
            LatticePoint(a=r[0], b=r[1]),
        )

    def edges(self) -> Tuple[Segment, Segment, Segment]:
        """The three sides, counter-clockwise."""
        p, q, r = self.ccw_coords()
        return Segment.between(p, q), Segment.between(q, r), Segment.between(r, p)

    @property
    def area(self) -> Fraction:
        """Area in units of the unit triangle."""
        return Fraction(self.side * self.side)

    @property
    def diameter(self) -> Fraction:
        return Fraction(self.side)

    def projections(self) -> Tuple[Coords, Coords, Coords]:
        """Closed ranges of ``a``, ``b`` and ``a + b`` over the triangle."""
        a, b, s = Fraction(self.anchor.a), Fraction(self.anchor.b), Fraction(self.side)
        if self.is_up:
            return (a, a + s), (b, b + s), (a + b, a + b + s)
        return (a, a + s), (b - s, b), (a + b, a + b + s)

    def half_planes(self) -> List[Tuple[int, int, Fraction]]:
        """Constraints ``ca * a + cb * b >= c`` whose intersection is the triangle."""
        a, b, s = Fraction(self.anchor.a), Fraction(self.anchor.b), Fraction(self.side)
        if self.is_up:
            return [(1, 0, a), (0, 1, b), (-1, -1, -(a + b + s))]
        return [(-1, 0, -(a + s)), (0, -1, -b), (1, 1, a + b)]

    def contains(self, p: Coords, strict: bool = False) -> bool:
        """Whether ``p`` lies in the closed triangle, or its interior when ``strict``."""
        for ca, cb, c in self.half_planes():
            value = ca * p[0] + cb * p[1]
            if value < c or (strict and value == c):
                return False
        return True

    def translated(self, offset: Union[LatticePoint, Coords]) -> "Triangle":
        da, db = offset.coords if isinstance(offset, LatticePoint) else offset
        return Triangle(
            orientation=self.orientation,
            anchor=LatticePoint(a=self.anchor.a + da, b=self.anchor.b + db),
            side=self.side,
        )

    def scaled(self, factor: RationalLike) -> "Triangle":
        k = Rational.validate(factor)
        if k <= 0:
            raise ValueError(f"scale factor must be positive, got {k}")
        return Triangle(orientation=self.orientation, anchor=self.anchor.scaled(k), side=self.side * k)

    def to_document(self) -> Dict[str, Any]:
        return {
            "o": self.orientation.value,
            "anchor": self.anchor.to_document(),
            "side": format_rational(self.side),
        }

    def __str__(self) -> str:
        return f"{self.orientation.value}{self.anchor} side {self.side}"


def triangle_vertices(t: Triangle) -> Tuple[LatticePoint, LatticePoint, LatticePoint]:
    """Vertices of ``t``: anchor, eastern end of the horizontal side, remaining vertex."""
    return t.vertices()


def interiors_overlap(t1: Triangle, t2: Triangle) -> bool:
    """Whether two lattice triangles share interior points.

    Both triangles are cut out by half-planes bounded by lines of the three classes, so
    their interiors are disjoint exactly when their open projections on ``a``, ``b`` or
    ``a + b`` are disjoint.
    """
    for (lo1, hi1), (lo2, hi2) in zip(t1.projections(), t2.projections()):
        if max(lo1, lo2) >= min(hi1, hi2):
            return False
    return True


class LatticeIsometry(BaseModel):
    """LatticeIsometry is one of the twelve symmetries of the lattice fixing the origin.

    Applying it reflects across the horizontal axis first, when ``reflect`` is set,
    then rotates counter-clockwise by ``rotation`` times 60 degrees.

    Attributes:
        rotation: Number of 60 degree turns, 0 to 5.
        reflect: Whether to reflect first.
    """

    rotation: int = 0
    reflect: bool = False

    class Config:  # noqa: D101, D106
        frozen = True

    @validator("rotation")
    def _validate_rotation(cls, value: int) -> int:
        if not 0 <= value < 6:
            raise ValueError(f"rotation must be in [0, 6), got {value}")
        return value

    def apply_coords(self, p: Coords) -> Coords:
        a, b = Fraction(p[0]), Fraction(p[1])
        if self.reflect:
            a, b = a + b, -b
        for _ in range(self.rotation):
            a, b = -b, a + b
        return a, b

    def apply_point(self, p: LatticePoint) -> LatticePoint:
        a, b = self.apply_coords(p.coords)
        return LatticePoint(a=a, b=b)

    def apply_direction(self, d: Direction) -> Direction:
        index = -int(d) if self.reflect else int(d)
        return Direction((index + self.rotation) % 6)

    def apply_triangle(self, t: Triangle) -> Triangle:
        return Triangle.from_vertices([self.apply_coords(v) for v in t.vertex_coords()])

    def apply_segment(self, s: Segment) -> Segment:
        return Segment.between(self.apply_coords(s.start.coords), self.apply_coords(s.end.coords))

    def inverse(self) -> "LatticeIsometry":
        if self.reflect:
            return self
        return LatticeIsometry(rotation=(6 - self.rotation) % 6, reflect=False)


def all_isometries() -> List[LatticeIsometry]:
    """The twelve lattice isometries, rotations before reflections."""
    return [
        LatticeIsometry(rotation=rotation, reflect=reflect)
        for reflect in (False, True)
        for rotation in range(6)
    ]
