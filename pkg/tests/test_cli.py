import csv
import json
import subprocess
import sys
from fractions import Fraction as Q

import pytest

from conftest import square_arrangement
from packcover import io, samples
from packcover.cli import main
from packcover.torus import Arrangement, Lattice, uncovered_volume


@pytest.fixture
def arr(tmp_path):
    def make(side, points=((0, 0),), name=None):
        path = tmp_path / (name or f"sq_{str(side).replace('/', '_')}.json")
        io.save_arrangement(square_arrangement(side, points), path)
        return str(path)
    return make


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_tiling_packs(arr, capsys):
    code, out, _ = run(capsys, "check", "--input", arr(1), "--assert", "packing")
    assert code == 0
    assert json.loads(out)["is_packing"] is True


def test_check_overlap_reports_witness(arr, capsys):
    code, out, _ = run(capsys, "check", "--input", arr(Q(9, 10)), "--assert", "packing")
    assert code == 1
    w = json.loads(out)["packing_witness"]
    assert w["lattice_vector"] == ["9/10", "0"]


def test_check_gap_fails_covering(arr, capsys):
    code, out, _ = run(capsys, "check", "--input", arr(Q(6, 5)), "--assert", "covering")
    assert code == 1
    rep = json.loads(out)
    assert rep["uncovered_volume"] == "11/25"
    assert float(Q(rep["uncovered_volume"])) == pytest.approx(0.44)


def test_check_float_and_grid(arr, capsys):
    code, out, _ = run(capsys, "check", "--input", arr(Q(6, 5)), "--arithmetic", "float")
    assert code == 0
    assert json.loads(out)["uncovered_volume"] == pytest.approx(0.44, abs=1e-9)
    code, out, _ = run(capsys, "check", "--input", arr(Q(6, 5)), "--grid-h", "0.01")
    rep = json.loads(out)
    assert rep["coverage_method"] == "grid" and rep["coverage_certified"] is False


def test_check_output_file(arr, capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "check", "--input", arr(1), "--output", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["is_covering"] is True


def test_transform_pack_to_cover(arr, capsys, tmp_path):
    out_path, trace, svg = tmp_path / "out.json", tmp_path / "trace.json", tmp_path / "o.svg"
    code, out, _ = run(capsys, "transform", "--input", arr(Q(5, 4)), "--direction", "pack-to-cover",
                       "--alpha", "0.1", "--output", str(out_path), "--trace", str(trace),
                       "--svg", str(svg))
    assert code == 0
    rep = json.loads(out)
    assert rep["steps"] >= 1 and rep["certified"]
    result = io.load_arrangement(out_path)
    assert uncovered_volume(result).is_covering
    assert json.loads(trace.read_text())["l"] == rep["steps"]
    assert 'class="inserted"' in svg.read_text()


def test_transform_cover_to_pack(arr, capsys):
    code, out, _ = run(capsys, "transform", "--input", arr(Q(4, 5)), "--direction", "cover-to-pack")
    assert code == 0
    rep = json.loads(out)
    assert rep["steps"] == 0 and rep["refinement"] == 2
    assert rep["theorem_bound_satisfied"] is True


def test_transform_precondition_failure(arr, capsys):
    code, _, err = run(capsys, "transform", "--input", arr(Q(9, 10)), "--direction", "pack-to-cover")
    assert code == 1 and "precondition" in err
    code, _, err = run(capsys, "transform", "--input", arr(Q(6, 5)), "--direction", "cover-to-pack",
                       "--alpha", "0.2")
    assert code == 1 and "precondition" in err


@pytest.mark.parametrize("alpha", ["0", "1", "1.5", "-0.2"])
def test_transform_alpha_range(arr, capsys, alpha):
    code, _, _ = run(capsys, "transform", "--input", arr(Q(5, 4)), "--direction", "pack-to-cover",
                     "--alpha", alpha)
    assert code == 2


def test_transform_alpha_cap_for_asymmetric_bodies(capsys, tmp_path):
    A = Arrangement(samples.recentred(samples.triangle()), samples.square_lattice(2), [(0, 0)])
    path = tmp_path / "tri.json"
    io.save_arrangement(A, path)
    code, _, err = run(capsys, "transform", "--input", str(path), "--direction", "pack-to-cover",
                       "--alpha", "0.7")
    assert code == 2 and "1/d" in err


def test_bounds_table(capsys, tmp_path):
    csv_path = tmp_path / "b.csv"
    code, out, _ = run(capsys, "bounds", "--d", "2", "--eps", "0.1", "0.01", "0.001",
                       "--symmetric", "--csv", str(csv_path))
    assert code == 0
    rows = json.loads(out)["bounds"]
    for row, e in zip(rows, (0.1, 0.01, 0.001)):
        assert row["cover_bound"] == pytest.approx((1 + e ** (1 / 3)) ** 3, abs=1e-12)
        assert row["pack_bound"] == pytest.approx((1 - e ** (1 / 3)) ** 3, abs=1e-12)
    with open(csv_path) as fh:
        assert len(list(csv.DictReader(fh))) == 3


def test_bounds_crossover_csv(capsys, tmp_path):
    csv_path = tmp_path / "x.csv"
    code, out, _ = run(capsys, "bounds", "--d", "3", "--crossover-range", "3", "10",
                       "--symmetric", "--csv", str(csv_path))
    assert code == 0
    rows = json.loads(out)["crossovers"]
    assert len(rows) == 4 * 8
    # the general Fejes Toth threshold ln d / (e d^(d-1)) decreases with d
    ft = [r["value"] for r in rows if r["name"] == "fejes_toth_general"]
    assert all(a > b for a, b in zip(ft, ft[1:]))
    assert "fejes_toth_general" in csv_path.read_text()


def test_bounds_sweep(capsys):
    code, out, _ = run(capsys, "bounds", "--d", "2", "--sweep", "1e-6:1e-1:6")
    assert code == 0
    eps = [r["epsilon"] for r in json.loads(out)["bounds"]]
    assert eps[0] == pytest.approx(1e-6) and eps[-1] == pytest.approx(0.1) and len(eps) == 6


@pytest.mark.parametrize("argv", [
    ["bounds", "--d", "2", "--eps", "1.5"],
    ["bounds", "--d", "1", "--eps", "0.1"],
    ["bounds", "--d", "2", "--sweep", "bad"],
    ["bounds", "--d", "2", "--crossover-range", "2", "4"],
    ["check"],
    ["frobnicate"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_malformed_json_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"body": {"d": 2,}')
    code, _, err = run(capsys, "check", "--input", str(bad))
    assert code == 2 and "bad.json:1:" in err
    missing = tmp_path / "missing.json"
    missing.write_text('{"body": {"d": 2, "vertices": [[0, 0]]}}')
    code, _, err = run(capsys, "check", "--input", str(missing))
    assert code == 2 and "arrangement" in err
    assert run(capsys, "check", "--input", str(tmp_path / "nope.json"))[0] == 2


def test_render(arr, capsys, tmp_path):
    svg = tmp_path / "r.svg"
    assert run(capsys, "render", "--input", arr(Q(6, 5)), "--svg", str(svg))[0] == 0
    text = svg.read_text()
    assert "uncovered_area=11/25" in text and 'class="uncovered"' in text
    assert run(capsys, "render", "--input", arr(1), "--svg", str(svg))[0] == 0
    assert 'class="uncovered"' not in svg.read_text()
    assert run(capsys, "render", "--input", arr(1))[0] == 2


def test_render_rejects_three_dimensions(capsys, tmp_path):
    cube = [[x, y, z] for x in ("-1/2", "1/2") for y in ("-1/2", "1/2") for z in ("-1/2", "1/2")]
    obj = {"body": {"d": 3, "vertices": cube, "symmetric": True, "arithmetic": "rational"},
           "lattice": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]], "points": [["0", "0", "0"]]}
    path = tmp_path / "cube.json"
    path.write_text(json.dumps(obj))
    assert run(capsys, "render", "--input", str(path), "--svg", str(tmp_path / "c.svg"))[0] == 2
    assert run(capsys, "check", "--input", str(path))[0] == 2
    code, out, _ = run(capsys, "check", "--input", str(path), "--grid-h", "0.1")
    assert code == 0 and json.loads(out)["is_covering"] is True


def test_refine(arr, capsys):
    code, out, _ = run(capsys, "refine", "--input", arr(1))
    assert code == 0 and json.loads(out) == {"m": 2}
    code, out, _ = run(capsys, "refine", "--input", arr(3))
    assert json.loads(out) == {"m": 1}
    code, _, err = run(capsys, "refine", "--input", arr(Q(1, 100)), "--cap", "4")
    assert code == 1


def test_module_entry_point(arr):
    proc = subprocess.run([sys.executable, "-m", "packcover", "check", "--input", arr(1),
                           "--assert", "covering"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["is_covering"] is True
