import json
from fractions import Fraction

import pytest
from pydantic import ValidationError

import trilab


def test_merge_intervals():
    from trilab._skeleton import merge_intervals

    assert merge_intervals([(3, 4), (0, 1), (1, 2)]) == [(0, 2), (3, 4)]


def test_build_skeleton():
    # GIVEN
    t = trilab.generate_figure3(1)
    # WHEN
    skeleton = trilab.build_skeleton(t)
    # THEN
    assert len(skeleton.segments) == 6
    assert trilab.Segment.between((0, 0), (2, 0)) in skeleton.segments
    assert trilab.Segment.between((0, 1), (1, 1)) in skeleton.segments


def test_maximal_segments_merge_collinear_pieces():
    # GIVEN
    skeleton = trilab.Skeleton(
        segments=(
            trilab.Segment.between((0, 0), (1, 0)),
            trilab.Segment.between((2, 0), (1, 0)),
            trilab.Segment.between((0, 0), (0, 1)),
        )
    )
    # WHEN
    segments = trilab.maximal_segments(skeleton)
    # THEN
    assert segments == [
        trilab.MaximalSegment(
            segment=trilab.Segment.between((0, 0), (2, 0)), line_direction=trilab.Direction.E
        ),
        trilab.MaximalSegment(
            segment=trilab.Segment.between((0, 0), (0, 1)), line_direction=trilab.Direction.NE
        ),
    ]


def test_maximal_segments_of_a_tiling(rhombus_tiling):
    skeleton = trilab.build_skeleton(rhombus_tiling)
    assert [m.segment for m in trilab.maximal_segments(skeleton)] == list(skeleton.segments)


@pytest.mark.parametrize(
    "changes, message",
    [
        ({"whisker_direction": trilab.Direction.E}, "120 degree"),
        ({"interior_point": trilab.LatticePoint.of(4, 0)}, "strictly inside the base"),
        ({"whisker_length": 0}, "must be positive"),
    ],
)
def test_e_configuration_shape(rhombus_configuration, changes, message):
    fields = {**rhombus_configuration.dict(), **changes}
    with pytest.raises(ValidationError, match=message):
        trilab.EConfiguration(**fields)


def test_e_configuration_properties(rhombus_configuration):
    assert rhombus_configuration.length == 4
    assert rhombus_configuration.mu == Fraction(3, 4)
    document = rhombus_configuration.to_document()
    assert document["whisker_direction"] == "NE"
    assert trilab.EConfiguration.parse_obj(
        {
            "base": {"start": [4, 0], "end": [0, 0]},
            "interior_point": [1, 0],
            "whisker_direction": "NE",
            "whisker_length": "4",
        }
    ) == rhombus_configuration


def test_figure1_is_e_configuration_free(figure1_tiling):
    assert trilab.find_e_configurations(figure1_tiling, margin=2) == []
    assert trilab.brute_force_e_configurations(figure1_tiling, margin=2) == []


def test_hexagonal_e_configurations(hexagonal_tiling):
    # WHEN
    found = trilab.find_e_configurations(hexagonal_tiling, margin=2)
    # THEN
    assert found
    assert found[0].base == trilab.Segment.between((-4, -6), (-6, -6))
    assert found[0].interior_point == trilab.LatticePoint.of(-5, -6)
    assert found[0].whisker_direction == trilab.Direction.NE
    assert found[0].length == 2


def _shapes(configurations):
    return [(e.base, e.interior_point, e.whisker_direction) for e in configurations]


@pytest.mark.parametrize("margin", [1, 2])
def test_detection_matches_brute_force(rhombus_tiling, margin):
    small = trilab.generate_hexagonal(4)
    assert _shapes(trilab.find_e_configurations(small, margin)) == _shapes(
        trilab.brute_force_e_configurations(small, margin)
    )
    assert _shapes(trilab.find_e_configurations(rhombus_tiling)) == _shapes(
        trilab.brute_force_e_configurations(rhombus_tiling)
    )


@pytest.mark.parametrize("variant", [1, 2, 3, 4, 5])
def test_figure3_is_e_configuration_free(variant):
    t = trilab.generate_figure3(variant)
    assert trilab.find_e_configurations(t) == []
    assert trilab.brute_force_e_configurations(t) == []


def test_detection_matches_brute_force_on_hexagonal_windows():
    counts = []
    for n in range(3, 7):
        t = trilab.generate_hexagonal(n)
        found = trilab.find_e_configurations(t, margin=1)
        assert _shapes(found) == _shapes(trilab.brute_force_e_configurations(t, margin=1))
        counts.append(len(found))
    assert counts == sorted(set(counts))
    assert counts[0] > 0


@pytest.mark.parametrize("reps", [3, 4, 5, 6])
def test_detection_matches_brute_force_on_family_windows(reps):
    t = trilab.generate_family(trilab.FamilyParams(alpha="1/3"), reps)
    assert trilab.find_e_configurations(t) == []
    assert trilab.brute_force_e_configurations(t) == []


def _moved(e, offset=(0, 0), factor=1):
    def point(p):
        return (p.a * factor + offset[0], p.b * factor + offset[1])

    return (
        point(e.base.start),
        point(e.base.end),
        point(e.interior_point),
        e.whisker_direction,
        e.whisker_length * factor,
    )


def test_detection_is_translation_invariant():
    # GIVEN
    t = trilab.generate_hexagonal(4)
    offset = (Fraction(1, 3), Fraction(2))
    # WHEN
    moved = trilab.find_e_configurations(t.translated(offset), margin=1)
    # THEN
    expected = {_moved(e, offset=offset) for e in trilab.find_e_configurations(t, margin=1)}
    assert {_moved(e) for e in moved} == expected
    assert len(moved) == len(expected)


@pytest.mark.parametrize("factor", [Fraction(1, 2), Fraction(3)])
def test_detection_is_scale_equivariant(rhombus_tiling, factor):
    original = trilab.find_e_configurations(rhombus_tiling, all_witnesses=True)
    scaled = trilab.find_e_configurations(rhombus_tiling.scaled(factor), all_witnesses=True)
    assert [_moved(e) for e in scaled] == [_moved(e, factor=factor) for e in original]
    hexagonal = trilab.generate_hexagonal(4)
    assert {
        _moved(e) for e in trilab.find_e_configurations(hexagonal.scaled(factor), margin=factor)
    } == {_moved(e, factor=factor) for e in trilab.find_e_configurations(hexagonal, margin=1)}


def test_all_witnesses(rhombus_tiling):
    canonical = trilab.find_e_configurations(rhombus_tiling)
    every = trilab.find_e_configurations(rhombus_tiling, all_witnesses=True)
    assert len(every) > len(canonical)
    assert set(canonical) <= set(every)


def test_found_configurations_are_valid(rhombus_tiling):
    for e in trilab.find_e_configurations(rhombus_tiling):
        assert e.whisker_length > 0
        assert trilab.angle_between(e.base.direction, e.whisker_direction) == 2


@pytest.mark.parametrize(
    "margin, message",
    [
        ("1/2", "smaller than the largest tile side"),
        (8, "leaves no core"),
    ],
)
def test_margin_errors(hexagonal_tiling, margin, message):
    with pytest.raises(trilab.WindowError, match=message):
        trilab.find_e_configurations(hexagonal_tiling, margin)


def test_invalid_tiling_is_rejected():
    # GIVEN
    t = trilab.Tiling(
        tiles=(trilab.Triangle.up(0, 0),),
        region=trilab.Region.polygon([(0, 0), (2, 0), (0, 2)]),
    )
    # WHEN
    with pytest.raises(trilab.InvalidTilingError) as error:
        trilab.find_e_configurations(t)
    # THEN
    assert error.value.report.failure.kind == trilab.FailureKind.GAP


def test_next_e_configuration(rhombus_tiling, rhombus_configuration):
    # WHEN
    following = trilab.next_e_configuration(rhombus_tiling, rhombus_configuration)
    # THEN
    assert following == trilab.EConfiguration(
        base=trilab.Segment.between((2, 0), (2, 2)),
        interior_point=trilab.LatticePoint.of(2, 1),
        whisker_direction=trilab.Direction.W,
        whisker_length=2,
    )
    assert following.length <= rhombus_configuration.length - trilab.inf_diameter(rhombus_tiling)


def test_next_e_configuration_on_a_shared_side(rhombus_tiling, rhombus_configuration):
    # GIVEN
    following = trilab.next_e_configuration(rhombus_tiling, rhombus_configuration)
    # WHEN
    with pytest.raises(trilab.SharedSideError) as error:
        trilab.next_e_configuration(rhombus_tiling, following)
    # THEN
    assert error.value.side == trilab.Segment.between((2, 1), (1, 1))


def test_next_e_configuration_rejects_non_configurations(rhombus_tiling):
    e = trilab.EConfiguration(
        base=trilab.Segment.between((0, 1), (4, 1)),
        interior_point=trilab.LatticePoint.of(1, 1),
        whisker_direction=trilab.Direction.NW,
        whisker_length=1,
    )
    with pytest.raises(trilab.NotAnEConfigurationError, match="not contained in the skeleton"):
        trilab.next_e_configuration(rhombus_tiling, e)


def test_descend(tmp_path, rhombus_tiling, rhombus_configuration):
    # WHEN
    trace = trilab.descend(rhombus_tiling, rhombus_configuration)
    # THEN
    assert trace.lengths == (4, 2)
    assert trace.stop_reason == trilab.StopReason.SHARED_SIDE
    path = tmp_path / "trace.json"
    trace.to_path(path)
    document = json.loads(path.read_text())
    assert document["lengths"] == ["4/1", "2/1"]
    assert document["stop_reason"] == "shared_side"


@pytest.mark.parametrize(
    "max_steps, lengths, stop",
    [
        (0, (4,), trilab.StopReason.MAX_STEPS),
        (1, (4, 2), trilab.StopReason.MAX_STEPS),
        (2, (4, 2), trilab.StopReason.SHARED_SIDE),
    ],
)
def test_descend_max_steps(rhombus_tiling, rhombus_configuration, max_steps, lengths, stop):
    trace = trilab.descend(rhombus_tiling, rhombus_configuration, max_steps)
    assert trace.lengths == lengths
    assert trace.stop_reason == stop


def test_descend_negative_steps(rhombus_tiling, rhombus_configuration):
    with pytest.raises(ValueError, match="non-negative"):
        trilab.descend(rhombus_tiling, rhombus_configuration, -1)


def test_descend_leaves_the_window(clipped_rhombus_tiling, rhombus_configuration):
    # GIVEN
    e = rhombus_configuration
    # WHEN
    trace = trilab.descend(clipped_rhombus_tiling, e)
    # THEN
    assert trace.lengths == (4,)
    assert trace.stop_reason == trilab.StopReason.WINDOW_EXHAUSTED
    with pytest.raises(trilab.WindowExhaustedError):
        trilab.next_e_configuration(clipped_rhombus_tiling, e)


def test_descend_hexagonal(hexagonal_tiling):
    # GIVEN
    e = trilab.find_e_configurations(hexagonal_tiling)[0]
    # WHEN
    trace = trilab.descend(hexagonal_tiling, e)
    # THEN
    assert trace.lengths == (2,)
    assert trace.stop_reason == trilab.StopReason.SHARED_SIDE


@pytest.mark.parametrize(
    "a, stop",
    [
        (-4, trilab.StopReason.WINDOW_EXHAUSTED),
        (-3, trilab.StopReason.SHARED_SIDE),
    ],
)
def test_descend_next_to_the_window_edge(a, stop):
    # GIVEN
    t = trilab.generate_hexagonal(4)
    e = trilab.EConfiguration(
        base=trilab.Segment.between((a, 0), (a, -2)),
        interior_point=trilab.LatticePoint.of(a, -1),
        whisker_direction=trilab.Direction.E,
        whisker_length=1,
    )
    # WHEN
    trace = trilab.descend(t, e)
    # THEN
    assert trace.lengths == (2,)
    assert trace.stop_reason == stop


def test_resting_tile_on_the_window_edge():
    t = trilab.generate_hexagonal(4)
    e = trilab.EConfiguration(
        base=trilab.Segment.between((-4, 0), (-4, -2)),
        interior_point=trilab.LatticePoint.of(-4, -1),
        whisker_direction=trilab.Direction.E,
        whisker_length=1,
    )
    with pytest.raises(trilab.WindowExhaustedError, match="not inside the window"):
        trilab.next_e_configuration(t, e)


def test_trace_lengths_must_decrease(rhombus_configuration):
    with pytest.raises(ValidationError, match="strictly decreasing"):
        trilab.DescentTrace(
            steps=(rhombus_configuration, rhombus_configuration), lengths=(4, 4)
        )


def test_neighborhood_topology(figure1_tiling):
    # GIVEN
    m = trilab.MaximalSegment(
        segment=trilab.Segment.between((0, 0), (1, 0)), line_direction=trilab.Direction.E
    )
    # WHEN
    neighborhood = trilab.neighborhood_topology(figure1_tiling, m)
    # THEN
    assert (neighborhood.n_north, neighborhood.n_south) == (1, 2)
    assert neighborhood.pattern == trilab.NeighborhoodPattern.FIGURE5


def test_neighborhood_topology_needs_a_maximal_segment(figure1_tiling):
    m = trilab.MaximalSegment(
        segment=trilab.Segment.between((0, 0), ("1/2", 0)), line_direction=trilab.Direction.E
    )
    with pytest.raises(ValueError, match="not a maximal segment"):
        trilab.neighborhood_topology(figure1_tiling, m)


def test_neighborhood_topology_clipped(clipped_rhombus_tiling):
    m = trilab.MaximalSegment.on_line(trilab.Direction.E, Fraction(2), Fraction(0), Fraction(4))
    with pytest.raises(trilab.WindowError, match="clipped by the window"):
        trilab.neighborhood_topology(clipped_rhombus_tiling, m)


def test_neighborhood_of_a_polygon_side():
    t = trilab.generate_figure3(1)
    m = trilab.MaximalSegment(
        segment=trilab.Segment.between((0, 0), (2, 0)), line_direction=trilab.Direction.E
    )
    neighborhood = trilab.neighborhood_topology(t, m)
    assert (neighborhood.n_north, neighborhood.n_south) == (2, 0)
    assert neighborhood.pattern == trilab.NeighborhoodPattern.OTHER
