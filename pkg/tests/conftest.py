from pathlib import Path

import pytest

import trilab


def _rhombus_tiles():
    big = [trilab.Triangle.up(2, 0, 2), trilab.Triangle.down(2, 2, 2)]
    units = []
    for i in range(4):
        for j in range(4):
            if i >= 2 and j <= 1:
                continue
            units.append(trilab.Triangle.up(i, j))
            units.append(trilab.Triangle.down(i, j + 1))
    return tuple(big + units)


@pytest.fixture
def figure1_tiling():
    yield trilab.generate_family(trilab.FamilyParams(alpha="1/4"), reps=3)


@pytest.fixture
def hexagonal_tiling():
    yield trilab.generate_hexagonal(8)


@pytest.fixture
def rhombus_tiling():
    region = trilab.Region.polygon([(0, 0), (4, 0), (4, 4), (0, 4)])
    yield trilab.Tiling(tiles=_rhombus_tiles(), region=region)


@pytest.fixture
def rhombus_configuration():
    yield trilab.EConfiguration(
        base=trilab.Segment.between((4, 0), (0, 0)),
        interior_point=trilab.LatticePoint.of(1, 0),
        whisker_direction=trilab.Direction.NE,
        whisker_length=4,
    )


@pytest.fixture
def clipped_rhombus_tiling():
    tiles = (
        trilab.Triangle.up(2, 0, 2),
        trilab.Triangle.down(2, 2, 2),
        trilab.Triangle.up(0, 0),
        trilab.Triangle.down(0, 1),
        trilab.Triangle.up(1, 0),
        trilab.Triangle.down(1, 1),
        trilab.Triangle.up(0, 1),
        trilab.Triangle.down(0, 2),
        trilab.Triangle.up(1, 1),
        trilab.Triangle.down(1, 2),
    )
    yield trilab.Tiling(tiles=tiles, region=trilab.Region.plane_window(0, 4, 0, "3/2"))


@pytest.fixture
def single_tile_tiling():
    region = trilab.Region.polygon([(0, 0), (1, 0), (0, 1)])
    yield trilab.Tiling(tiles=(trilab.Triangle.up(0, 0),), region=region)


@pytest.fixture
def figure1_path(tmp_path, figure1_tiling):
    path = tmp_path / "figure1.json"
    figure1_tiling.to_path(path)
    yield path


@pytest.fixture
def mock_config_path():
    yield Path("tests") / "testdata" / "trilab.toml"


@pytest.fixture
def mock_corrupted_path():
    yield Path("tests") / "testdata" / "corrupted.json"
