import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kwatchman import Instance, dumps_instance, parse_instance, render_svg
from kwatchman.cli import EXIT_INPUT, EXIT_OK, EXIT_VERIFY, main

from conftest import SQ, UP, UP_S

UP_DOC = {"vertices": [[0, 0], [6, 0], [6, 4], [4, 4], [4, 2], [2, 2], [2, 4], [0, 4]], "start": [3, 0]}
SQ_DOC = {"vertices": [[0, 0], [4, 0], [4, 4], [0, 4]], "start": [0, 0]}


@pytest.fixture
def up_file(tmp_path):
    p = tmp_path / "up.json"
    p.write_text(json.dumps(UP_DOC))
    return p


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr()


def test_exact_solve(capsys, up_file):
    code, out = run(capsys, "solve", up_file, "--mode", "exact", "--k", 2)
    assert code == EXIT_OK
    report = json.loads(out.out)
    assert report["max_length"] == 2 and len(report["tours"]) == 2


def test_quota_solve(capsys, up_file):
    code, out = run(capsys, "solve", up_file, "--mode", "quota", "--k", 2, "--quota-frac", "0.9", "--epsilon", "0.5")
    assert code == EXIT_OK
    report = json.loads(out.out)
    assert report["max_length"] == 0
    seen = report["certificates"]["area_seen"]
    assert (Fraction(*seen) if isinstance(seen, list) else seen) >= 18


def test_cuts_on_square(capsys, tmp_path):
    p = tmp_path / "sq.json"
    p.write_text(json.dumps(SQ_DOC))
    code, out = run(capsys, "cuts", p)
    assert code == EXIT_OK and "0 essential cuts" in out.out


def test_verify_round_trip_and_tamper(capsys, up_file, tmp_path):
    report = tmp_path / "r.json"
    assert run(capsys, "solve", up_file, "--mode", "fptas", "--k", 2, "--epsilon", "0.25", "--out", report)[0] == EXIT_OK
    assert run(capsys, "verify", report)[0] == EXIT_OK
    doc = json.loads(report.read_text())
    doc["tours"] = doc["tours"][:1]
    doc["k"] = 1
    doc["max_length"] = doc["tours"][0]["length"]
    report.write_text(json.dumps(doc))
    code, out = run(capsys, "verify", report)
    assert code == EXIT_VERIFY and "essential cut" in out.out


def test_bad_input_exit_code(capsys, tmp_path):
    p = tmp_path / "bow.json"
    p.write_text(json.dumps({"vertices": [[0, 0], [2, 2], [2, 0], [0, 2]], "start": [0, 0]}))
    assert run(capsys, "solve", p)[0] == EXIT_INPUT
    p.write_text(json.dumps(dict(UP_DOC, start=[3, 3])))
    assert run(capsys, "solve", p)[0] == EXIT_INPUT


def test_general_modes(capsys, up_file):
    for mode in ("fptas-l2", "approx"):
        code, out = run(capsys, "solve", up_file, "--mode", mode, "--k", 2, "--epsilon", "0.5")
        assert code == EXIT_OK and json.loads(out.out)["max_length"] <= 5


def test_oracle_and_gen(capsys, up_file, tmp_path):
    code, out = run(capsys, "oracle", up_file, "--k", 2)
    assert code == EXIT_OK and json.loads(out.out)["max_length"] == 2
    g = tmp_path / "g.json"
    assert run(capsys, "gen", "--n", 10, "--seed", 4, "--out", g)[0] == EXIT_OK
    assert parse_instance(g.read_text()).polygon.is_orthogonal


def test_render(capsys, up_file, tmp_path):
    report, svg = tmp_path / "r.json", tmp_path / "up.svg"
    run(capsys, "solve", up_file, "--mode", "exact", "--k", 2, "--out", report)
    assert run(capsys, "render", up_file, "--svg", svg, "--report", report)[0] == EXIT_OK
    text = svg.read_text()
    assert text.count('class="cut"') == 2 and text.count('class="tour"') == 2
    bare = render_svg(SQ, (0, 0))
    assert 'class="cut"' not in bare and 'class="tour"' not in bare
    assert render_svg(UP, UP_S) == render_svg(UP, UP_S)


coord = st.one_of(st.integers(-50, 50), st.fractions(-50, 50, max_denominator=16))


@settings(max_examples=40, deadline=None)
@given(coord, coord, st.integers(1, 9), st.integers(1, 9), st.sampled_from(["0.25", "3", [1, 3]]))
def test_instance_round_trip(x, y, w, h, t):
    doc = {"vertices": [[str(x), str(y)], [str(x + w), str(y)], [str(x + w), str(y + h)], [str(x), str(y + h)]],
           "start": [str(x), str(y)], "epsilon": t}
    inst = parse_instance(json.dumps(doc))
    again = parse_instance(dumps_instance(inst))
    assert again == inst and again.defaults == inst.defaults
    assert isinstance(inst, Instance)
