from fractions import Fraction

import pytest
import numpy as np
from pydantic import ValidationError

import trilab


@pytest.mark.parametrize(
    "value, expected",
    [
        (3, Fraction(3)),
        ("2/4", Fraction(1, 2)),
        (" -7/3 ", Fraction(-7, 3)),
        (Fraction(5, 10), Fraction(1, 2)),
    ],
)
def test_rational_validate(value, expected):
    assert trilab.Rational.validate(value) == expected


@pytest.mark.parametrize("value", [True, 0.5, "1/0", "one", None])
def test_rational_validate_rejects(value):
    with pytest.raises(ValueError):
        trilab.Rational.validate(value)


def test_format_rational():
    assert trilab.format_rational(Fraction(6, 4)) == "3/2"
    assert trilab.format_rational(Fraction(2)) == "2/1"


@pytest.mark.parametrize(
    "direction, rotated, vector",
    [
        (trilab.Direction.E, trilab.Direction.NE, (1, 0)),
        (trilab.Direction.NE, trilab.Direction.NW, (0, 1)),
        (trilab.Direction.NW, trilab.Direction.W, (-1, 1)),
        (trilab.Direction.W, trilab.Direction.SW, (-1, 0)),
        (trilab.Direction.SW, trilab.Direction.SE, (0, -1)),
        (trilab.Direction.SE, trilab.Direction.E, (1, -1)),
    ],
)
def test_direction_rotation(direction, rotated, vector):
    assert trilab.rotate60(direction) == rotated
    assert direction.vector == vector
    assert direction.opposite().vector == (-vector[0], -vector[1])


def test_direction_rotation_has_order_six():
    # GIVEN
    d = trilab.Direction.SW
    # WHEN
    for _ in range(6):
        d = trilab.rotate60(d)
    # THEN
    assert d == trilab.Direction.SW


@pytest.mark.parametrize(
    "d1, d2, angle",
    [
        (trilab.Direction.E, trilab.Direction.E, 0),
        (trilab.Direction.E, trilab.Direction.NW, 2),
        (trilab.Direction.E, trilab.Direction.W, 3),
        (trilab.Direction.NE, trilab.Direction.SE, 2),
        (trilab.Direction.SE, trilab.Direction.E, 1),
    ],
)
def test_angle_between(d1, d2, angle):
    assert trilab.angle_between(d1, d2) == angle


def test_squared_norm():
    assert trilab.squared_norm(trilab.LatticePoint.of(1, 0)) == 1
    assert trilab.squared_norm(trilab.LatticePoint.of(1, 1)) == 3
    assert trilab.squared_norm(trilab.LatticePoint.of(-1, 1)) == 1


def test_direction_between():
    zero = (Fraction(0), Fraction(0))
    assert trilab.direction_between(zero, (Fraction(-2), Fraction(2))) == (
        trilab.Direction.NW,
        Fraction(2),
    )
    assert trilab.direction_between(zero, (Fraction(1), Fraction(1))) is None
    assert trilab.direction_between(zero, zero) is None


def test_lattice_point_from_list():
    # GIVEN
    model = trilab.Segment.parse_obj({"start": ["0", "1/2"], "end": [3, "1/2"]})
    # THEN
    assert model.start == trilab.LatticePoint.of(0, Fraction(1, 2))
    assert model.direction == trilab.Direction.E
    assert model.length == 3
    assert model.to_document() == [["0/1", "1/2"], ["3/1", "1/2"]]


def test_segment_must_follow_a_lattice_direction():
    with pytest.raises(ValidationError, match="not parallel to a lattice direction"):
        trilab.Segment.between((0, 0), (1, 1))


def test_segment_contains():
    # GIVEN
    s = trilab.Segment.between((0, 2), (2, 0))
    # THEN
    assert s.line_class == trilab.Direction.NW
    assert s.contains((Fraction(1), Fraction(1)), strict=True)
    assert s.contains((Fraction(2), Fraction(0)))
    assert not s.contains((Fraction(2), Fraction(0)), strict=True)
    assert not s.contains((Fraction(1), Fraction(0)))


def test_segment_overlap():
    # GIVEN
    s1 = trilab.Segment.between((0, 0), (3, 0))
    s2 = trilab.Segment.between((5, 0), (2, 0))
    s3 = trilab.Segment.between((3, 0), (4, 0))
    # THEN
    assert trilab.segment_overlap(s1, s2) == trilab.Segment.between((2, 0), (3, 0))
    assert trilab.segment_overlap(s1, s3) is None


@pytest.mark.parametrize(
    "tile, vertices",
    [
        (trilab.Triangle.up(0, 0, 2), [(0, 0), (2, 0), (0, 2)]),
        (trilab.Triangle.down(1, 1, "1/2"), [(1, 1), ("3/2", 1), ("3/2", "1/2")]),
    ],
)
def test_triangle_vertices(tile, vertices):
    assert trilab.triangle_vertices(tile) == tuple(trilab.LatticePoint.of(a, b) for a, b in vertices)


def test_triangle_area_and_diameter():
    tile = trilab.Triangle.down(0, 0, "3/4")
    assert tile.area == Fraction(9, 16)
    assert tile.diameter == Fraction(3, 4)


def test_triangle_side_must_be_positive():
    with pytest.raises(ValidationError, match="side must be positive"):
        trilab.Triangle.up(0, 0, 0)


def test_triangle_document_aliases():
    # GIVEN
    tile = trilab.Triangle.parse_obj({"o": "down", "anchor": ["1", "2"], "side": "1/3"})
    # THEN
    assert tile == trilab.Triangle.down(1, 2, Fraction(1, 3))
    assert tile.to_document() == {"o": "down", "anchor": ["1/1", "2/1"], "side": "1/3"}


@pytest.mark.parametrize(
    "tile",
    [trilab.Triangle.up(1, -1, 3), trilab.Triangle.down("1/2", 0, "5/2")],
)
def test_triangle_from_vertices(tile):
    vertices = list(reversed(tile.vertex_coords()))
    assert trilab.Triangle.from_vertices(vertices) == tile


def test_triangle_from_vertices_rejects():
    with pytest.raises(ValueError, match="do not form a lattice triangle"):
        trilab.Triangle.from_vertices([(0, 0), (1, 0), (1, 1)])


def test_triangle_contains():
    tile = trilab.Triangle.up(0, 0, 3)
    assert tile.contains((Fraction(1), Fraction(1)), strict=True)
    assert tile.contains((Fraction(3), Fraction(0)))
    assert not tile.contains((Fraction(3), Fraction(0)), strict=True)
    assert not tile.contains((Fraction(2), Fraction(2)))


@pytest.mark.parametrize(
    "t1, t2, overlap",
    [
        (trilab.Triangle.up(0, 0), trilab.Triangle.down(0, 1), False),
        (trilab.Triangle.up(0, 0, 2), trilab.Triangle.down(0, 1), True),
        (trilab.Triangle.up(0, 0), trilab.Triangle.up(1, 0), False),
        (trilab.Triangle.up(0, 0, 2), trilab.Triangle.up(1, 0, 2), True),
        (trilab.Triangle.up(0, 0), trilab.Triangle.down(1, 0), False),
    ],
)
def test_interiors_overlap(t1, t2, overlap):
    assert trilab.interiors_overlap(t1, t2) == overlap
    assert trilab.interiors_overlap(t2, t1) == overlap


def _rasterized_interior(orientation, a, b, s):
    # unit cells of the quarter grid, by the centroid scaled by 3
    cells = set()
    for i in range(-2, 20):
        for j in range(-10, 20):
            for x, y in ((3 * i + 1, 3 * j + 1), (3 * i + 2, 3 * j + 2)):
                if orientation == "up":
                    inside = x > 3 * a and y > 3 * b and x + y < 3 * (a + b + s)
                else:
                    inside = y < 3 * b and x < 3 * (a + s) and x + y > 3 * (a + b)
                if inside:
                    cells.add((x, y))
    return cells


def _quarter_triangle(orientation, a, b, s):
    make = trilab.Triangle.up if orientation == "up" else trilab.Triangle.down
    return make(Fraction(a, 4), Fraction(b, 4), Fraction(s, 4))


def test_interiors_overlap_matches_rasterization():
    rng = np.random.default_rng(2024)
    for _ in range(200):
        # GIVEN two triangles on the quarter grid
        shapes = [
            (
                "up" if rng.integers(2) else "down",
                int(rng.integers(0, 8)),
                int(rng.integers(0, 8)),
                int(rng.integers(1, 9)),
            )
            for _ in range(2)
        ]
        expected = bool(_rasterized_interior(*shapes[0]) & _rasterized_interior(*shapes[1]))
        # WHEN
        t1, t2 = (_quarter_triangle(*shape) for shape in shapes)
        # THEN
        assert trilab.interiors_overlap(t1, t2) == expected, shapes


def test_to_cartesian():
    x, y = trilab.to_cartesian(trilab.LatticePoint.of(0, 1))
    assert x == pytest.approx(0.5)
    assert y == pytest.approx(3 ** 0.5 / 2)


def test_isometries_are_twelve_distinct_maps():
    # GIVEN
    tile = trilab.Triangle.up(1, 0, 1)
    # WHEN
    images = {g.apply_triangle(tile) for g in trilab.all_isometries()}
    # THEN
    assert len(trilab.all_isometries()) == 12
    assert len(images) == 12


@pytest.mark.parametrize("g", trilab.all_isometries())
def test_isometry_inverse(g):
    p = trilab.LatticePoint.of(2, "1/3")
    assert g.inverse().apply_point(g.apply_point(p)) == p
    for d in trilab.Direction:
        assert g.inverse().apply_direction(g.apply_direction(d)) == d


@pytest.mark.parametrize("g", trilab.all_isometries())
def test_isometry_preserves_directions_and_norms(g):
    for d in trilab.Direction:
        image = g.apply_point(trilab.LatticePoint.of(*d.vector))
        assert (image.a, image.b) == g.apply_direction(d).vector
        assert trilab.squared_norm(image) == 1


def test_isometry_rotation_is_bounded():
    with pytest.raises(ValidationError, match="rotation must be in"):
        trilab.LatticeIsometry(rotation=6)
