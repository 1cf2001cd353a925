import logging
import re

import pytest

import trilab


def test_render_single_tile(single_tile_tiling):
    # WHEN
    svg = trilab.render_svg(single_tile_tiling)
    # THEN
    assert svg.count("<polygon ") == 1
    assert 'points="10.0000,96.6025 110.0000,96.6025 60.0000,10.0000"' in svg
    assert 'width="120.0000" height="106.6025"' in svg
    assert 'data-side="1/1"' in svg


def test_render_coordinate_format(figure1_tiling):
    svg = trilab.render_svg(figure1_tiling)
    for points in re.findall(r'points="([^"]+)"', svg):
        for pair in points.split(" "):
            assert re.fullmatch(r"-?\d+\.\d{4},-?\d+\.\d{4}", pair)


def test_render_is_deterministic(figure1_tiling):
    assert trilab.render_svg(figure1_tiling) == trilab.render_svg(figure1_tiling)


def test_render_scale(single_tile_tiling):
    svg = trilab.render_svg(single_tile_tiling, pixels_per_unit=10)
    assert 'width="30.0000"' in svg


@pytest.mark.parametrize(
    "tiling, polygons, fills",
    [
        (trilab.generate_figure3(3), 3, 1),
        (trilab.generate_figure3(4), 4, 2),
    ],
)
def test_write_svg(tmp_path, tiling, polygons, fills):
    # GIVEN
    path = tmp_path / "tiling.svg"
    # WHEN
    result = trilab.write_svg(tiling, path)
    # THEN
    assert result == (polygons, fills)
    assert path.read_text().startswith("<svg ")


def test_write_svg_size_classes(tmp_path, figure1_tiling):
    polygons, fills = trilab.write_svg(figure1_tiling, tmp_path / "figure1.svg")
    assert polygons == len(trilab.materialize(figure1_tiling))
    assert fills == 3


def test_write_svg_roles(tmp_path, figure1_tiling):
    svg = trilab.render_svg(figure1_tiling, color_by="role")
    for color in ("T", "L", "R"):
        assert f'fill="{trilab._render.ROLE_COLORS[color]}"' in svg
    _, fills = trilab.write_svg(figure1_tiling, tmp_path / "roles.svg", color_by="role")
    assert fills >= 3


def test_render_roles_without_labelling(caplog):
    # GIVEN
    t = trilab.generate_hexagonal(4)
    # WHEN
    with caplog.at_level(logging.WARNING):
        svg = trilab.render_svg(t, color_by="role")
    # THEN
    assert "no T/L/R labelling" in caplog.text
    assert set(re.findall(r'fill="([^"]+)"', svg)) == {trilab._render.ROLE_COLORS["other"]}


def test_render_color_by(single_tile_tiling):
    with pytest.raises(ValueError, match="color_by must be"):
        trilab.render_svg(single_tile_tiling, color_by="area")
