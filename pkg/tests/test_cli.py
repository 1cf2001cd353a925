import json

import pytest

import trilab
from trilab._cli import _get_args, _settings


@pytest.fixture
def hexagonal_path(tmp_path):
    path = tmp_path / "hexagonal.json"
    trilab.generate_hexagonal(8).to_path(path)
    yield path


@pytest.fixture
def gap_path(tmp_path):
    figure = trilab.generate_figure3(1)
    path = tmp_path / "gap.json"
    trilab.Tiling(tiles=figure.tiles[:3], region=figure.region).to_path(path)
    yield path


def _report(capsys):
    return json.loads(capsys.readouterr().out)


def test_generate_family(tmp_path, capsys):
    # GIVEN
    path = tmp_path / "t.json"
    # WHEN
    code = trilab.run(["generate", "family", "--alpha", "1/3", "--reps", "3", "-o", str(path)])
    # THEN
    assert code == 0
    report = _report(capsys)
    assert report["tiles"] == 27
    assert sum(report["diameters"].values()) == 27
    assert trilab.Tiling.from_path(path) == trilab.generate_family(
        trilab.FamilyParams(alpha="1/3"), 3
    )


def test_generate_figure3(tmp_path, capsys):
    code = trilab.run(["generate", "figure3", "--variant", "5", "-o", str(tmp_path / "h.json")])
    assert code == 0
    assert _report(capsys)["tiles"] == 6


def test_generate_to_stdout(capsys):
    assert trilab.run(["generate", "hexagonal", "--n", "2"]) == 0
    report = _report(capsys)
    assert len(report["tiling"]["tiles"]) == 8
    assert report["tiling"]["periods"] == [["2/1", "0/1"], ["0/1", "2/1"]]


@pytest.mark.parametrize(
    "args",
    [
        ["generate", "family", "--alpha", "2/3"],
        ["generate", "family", "--alpha", "x"],
        ["generate", "figure3", "--variant", "7"],
        ["generate", "hexagonal", "--n", "0"],
        ["generate", "hexagonal"],
        ["walk", "exact"],
        ["walk", "green", "--M", "2", "--mode", "approximate"],
        ["walk", "reach", "--target", "one", "--max-steps", "3"],
        ["--threads", "0", "walk", "exact", "--n", "3"],
        ["unknown"],
    ],
)
def test_usage_errors(args, capsys):
    assert trilab.run(args) == 2
    assert capsys.readouterr().out == ""


@pytest.mark.parametrize(
    "args, key, value",
    [
        (["walk", "exact", "--n", "6"], "return_probability", "10/81"),
        (["walk", "exact", "--n", "6"], "paths", 90),
        (["walk", "exact", "--n", "61"], "paths", None),
        (["walk", "green", "--M", "2", "--mode", "exact"], "partial_sum", "109/81"),
        (["walk", "reach", "--target", "2,0", "--max-steps", "3"], "reachable", True),
        (["walk", "reach", "--target", "2,0", "--max-steps", "3"], "step_counts", [0, 2, 1]),
        (["walk", "reach", "--target", "2,0", "--max-steps", "2"], "reachable", False),
    ],
)
def test_walk(args, key, value, capsys):
    assert trilab.run(args) == 0
    assert _report(capsys)[key] == value


def test_walk_simulate(capsys):
    assert trilab.run(["walk", "simulate", "--seed", "42", "--trials", "100000", "--n", "3"]) == 0
    report = _report(capsys)
    assert abs(report["frequency"] - 0.2222) < 0.0053
    assert report["exact"] == pytest.approx(2 / 9)


def test_walk_stirling(capsys):
    assert trilab.run(["walk", "stirling", "--m", "5"]) == 0
    report = _report(capsys)
    assert report["m"] == 5
    assert report["term"] >= report["lower_bound"]


def test_walk_table(tmp_path, capsys):
    path = tmp_path / "stirling.csv"
    assert trilab.run(["walk", "table", "--M", "4", "-o", str(path)]) == 0
    assert _report(capsys)["rows"] == 4
    assert len(path.read_text().splitlines()) == 5


def test_verify(figure1_path, gap_path, capsys):
    assert trilab.run(["verify", str(figure1_path)]) == 0
    assert _report(capsys) == {"valid": True, "failure": None}
    assert trilab.run(["verify", str(gap_path)]) == 1
    assert _report(capsys)["failure"]["kind"] == "gap"


def test_analyze_figure1(figure1_path, capsys):
    # WHEN
    code = trilab.run(["analyze", str(figure1_path)])
    # THEN
    assert code == 0
    report = _report(capsys)
    assert report["validity"]["valid"]
    assert not report["perfectness"]["perfect"]
    assert report["shared_sides"] == []
    assert report["e_configurations"] == []
    assert report["tlr"]["outcome"] == "indexed"
    assert report["tlr"]["alpha"] == "1/4"
    assert report["theorems"]["holds"]
    assert report["theorems"]["alpha"] == "1/4"


def test_analyze_hexagonal(hexagonal_path, capsys):
    assert trilab.run(["analyze", str(hexagonal_path)]) == 0
    report = _report(capsys)
    assert report["e_configurations"]
    assert report["shared_sides"]
    assert report["tlr"]["outcome"] == "topology_mismatch"
    assert report["theorems"]["shared_side_or_family"]
    assert report["theorems"]["descent"]["lengths"]


def test_analyze_polygon(tmp_path, capsys):
    path = tmp_path / "pentagon.json"
    trilab.generate_figure3(4).to_path(path)
    assert trilab.run(["analyze", str(path)]) == 0
    report = _report(capsys)
    assert report["side_conditions"] == []
    assert "tlr" not in report


def test_analyze_invalid(gap_path, capsys):
    assert trilab.run(["analyze", str(gap_path)]) == 1
    assert not _report(capsys)["validity"]["valid"]


@pytest.mark.parametrize("command", ["verify", "analyze", "descend"])
def test_unreadable_input(command, tmp_path, mock_corrupted_path):
    assert trilab.run([command, str(mock_corrupted_path)]) == 2
    assert trilab.run([command, str(tmp_path / "missing.json")]) == 2


def test_malformed_tiling(tmp_path):
    path = tmp_path / "malformed.json"
    path.write_text(json.dumps({"tiles": [{"o": "up", "anchor": [0, 0], "side": "-1"}]}))
    assert trilab.run(["verify", str(path)]) == 2


def test_descend_without_e_configuration(figure1_path, capsys):
    assert trilab.run(["descend", str(figure1_path)]) == 1
    assert _report(capsys)["error"] == "no E-configuration"


def test_descend(tmp_path, hexagonal_path, capsys):
    # GIVEN
    trace_path = tmp_path / "trace.json"
    # WHEN
    code = trilab.run(["descend", str(hexagonal_path), "-o", str(trace_path)])
    # THEN
    assert code == 0
    report = _report(capsys)
    assert report["lengths"] == ["2/1"]
    assert report["stop_reason"] == "shared_side"
    assert json.loads(trace_path.read_text()) == report


def test_descend_max_steps(hexagonal_path, capsys):
    assert trilab.run(["descend", str(hexagonal_path), "--max-steps", "0"]) == 0
    report = _report(capsys)
    assert len(report["steps"]) == 1
    assert report["stop_reason"] == "max_steps"


def test_descend_small_margin(hexagonal_path, capsys):
    assert trilab.run(["descend", str(hexagonal_path), "--margin", "1/2"]) == 1
    assert _report(capsys)["error"] == "WindowError"


def test_render(tmp_path, figure1_path, capsys):
    # GIVEN
    svg = tmp_path / "figure1.svg"
    # WHEN
    code = trilab.run(["render", str(figure1_path), "-o", str(svg), "--color-by", "size"])
    # THEN
    assert code == 0
    report = _report(capsys)
    assert report["fill_classes"] == 3
    assert svg.read_text().count("<polygon ") == report["polygons"]
    first = svg.read_bytes()
    trilab.run(["render", str(figure1_path), "-o", str(svg)])
    assert svg.read_bytes() == first


def test_render_unwritable(tmp_path, figure1_path):
    svg = tmp_path / "missing" / "figure1.svg"
    assert trilab.run(["render", str(figure1_path), "-o", str(svg)]) == 2


def test_summary(capsys):
    assert trilab.run(["--summary", "walk", "exact", "--n", "3"]) == 0
    captured = capsys.readouterr()
    assert json.loads(captured.out)["return_probability"] == "2/9"
    assert "walk: exit 0" in captured.err
    assert "return_probability: 2/9" in captured.err


def test_settings_precedence(monkeypatch, mock_config_path):
    # GIVEN
    args = ["--config", str(mock_config_path), "walk", "exact", "--n", "3"]
    # THEN
    assert _settings(_get_args(args)).threads == 2
    monkeypatch.setenv("TRILAB_THREADS", "5")
    assert _settings(_get_args(args)).threads == 5
    assert _settings(_get_args(["--threads", "3"] + args)).threads == 3
    assert _settings(_get_args(args)).max_steps == 8


def test_main(monkeypatch, capsys):
    monkeypatch.setattr("sys.argv", ["trilab", "walk", "exact", "--n", "3"])
    with pytest.raises(SystemExit) as exc_info:
        trilab.main()
    assert exc_info.value.code == 0
    assert _report(capsys)["return_probability"] == "2/9"


def test_walk_odd_state(capsys):
    assert trilab.run(["walk", "reach", "--target", "1,0", "--max-steps", "3"]) == 1
    assert _report(capsys)["error"] == "InvalidStateError"
