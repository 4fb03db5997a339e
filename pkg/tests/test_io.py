import json
from fractions import Fraction as Q

import numpy as np
import pytest

from conftest import square_arrangement
from packcover import io, samples
from packcover.greedy import pack_to_cover
from packcover.torus import Arrangement


def test_body_round_trip():
    C = samples.recentred(samples.triangle())
    obj = io.body_to_dict(C)
    assert obj["vertices"][0] == ["-1/3", "-1/3"]
    assert io.body_from_dict(obj) == C


def test_arrangement_round_trip_is_byte_identical(tmp_path):
    A = square_arrangement(Q(6, 5), [(0, 0), (Q(3, 5), Q(3, 5))])
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    io.save_arrangement(A, p1)
    io.save_arrangement(io.load_arrangement(p1), p2)
    assert p1.read_bytes() == p2.read_bytes()


@pytest.mark.parametrize("seed", range(15))
def test_random_round_trip(seed, tmp_path):
    rng = np.random.default_rng(seed)
    A = samples.random_small_arrangement(rng)
    text = io.dumps(io.arrangement_to_dict(A))
    B = io.arrangement_from_dict(io.loads(text))
    assert io.dumps(io.arrangement_to_dict(B)) == text
    assert sorted(B.points) == sorted(A.points) and B.body == A.body


def test_float_round_trip():
    A = Arrangement(samples.unit_square("float"), samples.square_lattice(1.2, "float"), [(0.1, 0.7)])
    text = io.dumps(io.arrangement_to_dict(A))
    B = io.arrangement_from_dict(io.loads(text))
    assert io.dumps(io.arrangement_to_dict(B)) == text
    assert B.points == A.points


def test_points_written_in_lexicographic_order():
    A = square_arrangement(2, [(1, 1), (0, 1), (1, 0)])
    assert io.arrangement_to_dict(A)["points"] == [["0", "1"], ["1", "0"], ["1", "1"]]


def test_arithmetic_override():
    obj = io.arrangement_to_dict(square_arrangement(Q(6, 5)))
    B = io.arrangement_from_dict(obj, arithmetic="float")
    assert B.arithmetic == "float" and B.lattice.covolume == pytest.approx(1.44)


def test_plain_json_numbers_accepted():
    obj = {"body": {"d": 2, "vertices": [[-0.5, -0.5], [0.5, -0.5], [0.5, 0.5], [-0.5, 0.5]],
                    "symmetric": True, "arithmetic": "rational"},
           "lattice": [[1.2, 0], [0, 1.2]], "points": [[0, 0]]}
    A = io.arrangement_from_dict(obj)
    assert A.lattice.covolume == Q(36, 25)


@pytest.mark.parametrize("mutate, field", [
    (lambda o: o.pop("lattice"), "arrangement.lattice"),
    (lambda o: o["body"].pop("vertices"), "arrangement.body.vertices"),
    (lambda o: o["points"].append([1]), "arrangement.points[1]"),
    (lambda o: o["body"].update(arithmetic="decimal"), "arrangement.body.arithmetic"),
    (lambda o: o["body"].update(symmetric="yes"), "arrangement.body.symmetric"),
    (lambda o: o["lattice"][0].__setitem__(0, "x/y"), "arrangement.lattice[0]"),
    (lambda o: o["body"].update(vertices=[[0, 0], [1, 1], [2, 2]]), "arrangement.body"),
    (lambda o: o.update(points=[[0, 0], [1, 1]]), "arrangement"),
])
def test_malformed_inputs_name_the_field(mutate, field):
    obj = io.arrangement_to_dict(square_arrangement(1))
    obj = json.loads(json.dumps(obj))
    mutate(obj)
    with pytest.raises(io.FormatError) as exc:
        io.arrangement_from_dict(obj)
    assert str(exc.value).startswith(field)


def test_json_syntax_error_has_position():
    with pytest.raises(io.FormatError) as exc:
        io.loads('{\n  "body": [1,,2]\n}', "bad.json")
    assert str(exc.value).startswith("bad.json:2:")


def test_trace_round_trip(tmp_path):
    res = pack_to_cover(square_arrangement(Q(5, 4)), Q(1, 10))
    path = tmp_path / "t.json"
    io.save_trace(res.trace, path)
    obj = json.loads(path.read_text())
    assert {"alpha", "epsilon", "steps", "l", "certified"} <= set(obj)
    assert {"i", "y", "point", "S_before", "S_after"} <= set(obj["steps"][0])
    back = io.load_trace(path)
    assert back["l"] == res.trace.l
    assert back["alpha"] == Q(1, 10)
    assert [s["point"] for s in back["steps"]] == [s.point for s in res.trace.steps]


def test_dumps_rejects_non_finite():
    with pytest.raises(ValueError):
        io.dumps({"x": float("nan")})
