"""SVG/CSV emitters and the command-line interface."""

import json
import os

import numpy as np
import pytest

from sixvertex.cli import main
from sixvertex.model import SquareDWBC, config_from_json
from sixvertex.render import RenderSpec, SvgCanvas, arc_to_csv, atomic_write
from sixvertex.sampler import cftp_sample
from sixvertex.tangent import ParametricArc


def test_svg_affine_roundtrip():
    canvas = SvgCanvas(width_units=10, height_units=7, spec=RenderSpec(scale=4, pad=12))
    for (x, y) in [(0, 0), (3, 5), (10, 7), (1, 6)]:
        px, py = canvas.to_px(x, y)
        bx, by = canvas.from_px(px, py)
        assert bx == x and by == y  # integer scale: exact


def test_arc_csv_format():
    arc = ParametricArc(
        z=np.array([1.5, 2.0]), x=np.array([1 / 3, 0.5]), y=np.array([0.1, 0.2]),
        label="test", frame="unit",
    )
    text = arc_to_csv(arc)
    lines = text.strip().split("\n")
    assert lines[0].startswith("# frame: unit")
    assert lines[1] == "z,x,y"
    assert "0.33333333333333331" in lines[2]  # 17 significant digits


def test_atomic_write(tmp_path):
    p = tmp_path / "out.txt"
    atomic_write(str(p), "hello")
    assert p.read_text() == "hello"
    atomic_write(str(p), "world")
    assert p.read_text() == "world"
    assert [f for f in os.listdir(tmp_path)] == ["out.txt"]


def test_cli_count(capsys):
    assert main(["count", "--model", "asm", "--n", "4"]) == 0
    assert capsys.readouterr().out.strip() == "42"
    assert main(["count", "--model", "hexagon", "--a", "2", "--b", "2", "--c", "2"]) == 0
    assert capsys.readouterr().out.strip() == "20"
    assert main(["count", "--model", "triangoloid", "--a", "1", "--b", "1", "--c", "1"]) == 0
    assert capsys.readouterr().out.strip() == "14"
    assert main(["count", "--model", "asm", "--n", "5", "--r", "3"]) == 0
    assert capsys.readouterr().out.strip() == "135"


def test_cli_exit_codes(capsys):
    assert main(["count", "--model", "asm"]) == 2  # usage
    capsys.readouterr()
    assert main(["count", "--model", "asm", "--n", "-3"]) == 1  # computation
    capsys.readouterr()
    with pytest.raises(SystemExit) as exc:
        main(["count", "--model", "nosuch"])
    assert exc.value.code == 2


def test_cli_curve_square_endpoints(tmp_path, capsys):
    out = str(tmp_path / "sq")
    assert main(["curve", "--geometry", "square", "--delta", "0.5", "--t", "1",
                 "--out", out, "--points", "50"]) == 0
    capsys.readouterr()
    files = [f for f in os.listdir(tmp_path) if f.endswith(".csv")]
    assert len(files) == 1
    rows = (tmp_path / files[0]).read_text().strip().split("\n")
    first = [float(v) for v in rows[2].split(",")]
    last = [float(v) for v in rows[-1].split(",")]
    assert abs(first[1] - 0.5) < 1e-6 and abs(first[2]) < 1e-6
    assert abs(last[1] - 1.0) < 1e-6 and abs(last[2] - 0.5) < 1e-6


def test_cli_curve_paper_frame(tmp_path, capsys):
    out = str(tmp_path / "sq")
    assert main(["curve", "--geometry", "square", "--delta", "0.5", "--t", "1",
                 "--out", out, "--points", "20", "--frame", "paper"]) == 0
    capsys.readouterr()
    f = [f for f in os.listdir(tmp_path) if f.endswith(".csv")][0]
    rows = (tmp_path / f).read_text().strip().split("\n")
    assert rows[0].startswith("# frame: paper")
    first = [float(v) for v in rows[2].split(",")]
    assert abs(first[1] - 0.5) < 1e-6  # x -> 1 - x maps 0.5 to itself


def test_cli_curve_triangoloid(tmp_path, capsys):
    out = str(tmp_path / "tri")
    assert main(["curve", "--geometry", "triangoloid", "--alpha", ".52",
                 "--beta", ".33", "--gamma", ".15", "--internal-guess",
                 "--out", out, "--points", "30"]) == 0
    capsys.readouterr()
    files = sorted(os.listdir(tmp_path))
    assert any("EXPERIMENTAL" in f for f in files)
    assert sum(f.endswith(".csv") for f in files) == 4


def test_cli_sample_square(tmp_path, capsys):
    svg = str(tmp_path / "s.svg")
    js = str(tmp_path / "s.json")
    assert main(["sample", "--geometry", "square", "--n", "12", "--seed", "7",
                 "--overlay", "--out", svg, "--json", js]) == 0
    capsys.readouterr()
    content = open(svg).read()
    assert content.startswith("<svg") and "circle" in content and "polyline" in content
    # the JSON dump reproduces the sampled configuration
    cfg = cftp_sample(SquareDWBC(12), 7)
    back = config_from_json(cfg.graph, open(js).read())
    assert dict(back.values) == dict(cfg.values)


def test_cli_sample_refined_segment(tmp_path, capsys):
    svg = str(tmp_path / "r.svg")
    assert main(["sample", "--geometry", "lambda", "--n", "20", "--refine", "16",
                 "--overlay", "--seed", "3", "--out", svg]) == 0
    capsys.readouterr()
    assert "polyline" in open(svg).read()


def test_cli_sample_determinism(tmp_path, capsys):
    a = str(tmp_path / "a.svg")
    b = str(tmp_path / "b.svg")
    for path in (a, b):
        assert main(["sample", "--geometry", "square", "--n", "10", "--seed", "4",
                     "--out", path]) == 0
    capsys.readouterr()
    assert open(a).read() == open(b).read()


def test_cli_verify_gauge(capsys):
    assert main(["verify", "--suite", "gauge"]) == 0
    out = capsys.readouterr().out
    assert "PASS 11-gauge" in out


def test_cli_correlator_json(tmp_path, capsys):
    out = str(tmp_path / "h.json")
    assert main(["correlator", "--geometry", "square", "--n", "3", "--out", out]) == 0
    capsys.readouterr()
    payload = json.loads(open(out).read())
    assert payload["Z"] == "7"
    assert payload["H"] == ["2/7", "3/7", "2/7"]
    assert payload["params"]["wa"] == "1"
    # triangoloid record with exact strings
    assert main(["correlator", "--geometry", "triangoloid",
                 "--a", "1", "--b", "1", "--c", "1"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["Z"] == "14"
    assert payload["H"][0] == "1/7"
