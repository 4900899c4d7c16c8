import math

import pytest

import sdpcolor


def test_graph_roundtrip(tmp_path):
    g = sdpcolor.Graph(4, [(0, 1), (1, 2), (2, 3)])
    assert g.num_vertices == 4
    assert g.num_edges == 3
    assert g.edges() == [(0, 1), (1, 2), (2, 3)]
    path = tmp_path / "p4.col"
    sdpcolor.write_dimacs(str(path), g)
    assert sdpcolor.read_dimacs(str(path)).edges() == g.edges()


def test_bad_input_raises(tmp_path):
    with pytest.raises(ValueError):
        sdpcolor.Graph(3, [(0, 0)])
    bad = tmp_path / "bad.col"
    bad.write_text("p edge 2 1\ne 1 x\n")
    with pytest.raises(ValueError):
        sdpcolor.read_dimacs(str(bad))


def test_color_planted():
    g, classes = sdpcolor.planted(60, 3, 0.5, seed=2)
    assert len(classes) == 3
    result = sdpcolor.color(g, 3, seed=1)
    assert result["schema"] == 1
    assert sdpcolor.verify_coloring(g, result["coloring"])
    assert sdpcolor.color(g, 3, seed=1) == result


def test_independent_set():
    g, _ = sdpcolor.planted(40, 3, 0.5, seed=4)
    s = sdpcolor.independent_set(g, 3.0, seed=1)
    assert len(s) > 0
    assert sdpcolor.verify_independent_set(g, s)
    assert not sdpcolor.verify_independent_set(g, [0, 0])


def test_exponents():
    assert sdpcolor.alpha_k(4) == "7/19"
    assert sdpcolor.f_exponent(3.0) == pytest.approx(0.75)
    p = sdpcolor.wedge_probability(math.pi / 6, 1.0)
    b = sdpcolor.wedge_bounds(math.pi / 6, 1.0)
    assert b["lower"] <= p <= b["best_upper"]
    assert sdpcolor.wedge_bounds(math.pi / 3, 1.0)["upper_general"] is None


def test_cli_entry():
    code, out, err = sdpcolor.run_cli(["color", "--gen", "planted:n=6,k=3,p=1", "--k", "3", "--seed", "1"])
    assert code == 0
    assert '"colors_used":3' in out
    code, _, err = sdpcolor.run_cli(["color", "--input", "/nonexistent.col", "--k", "3"])
    assert code == 1
