import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from kplanar.cli import run
from kplanar.constructions import FAMILIES
from kplanar.drawing import from_convex, from_json
from kplanar.render import to_svg


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def dodeca_file(tmp_path, capsys):
    path = tmp_path / "d.json"
    assert run(["gen", "--family", "dodeca", "--x", "1", "-o", str(path)]) == 0
    return path


def test_gen_round_trip(dodeca_file):
    text = dodeca_file.read_text()
    d = from_json(json.loads(text))
    assert d == FAMILIES["dodeca"](1)
    assert json.dumps(d.to_json(), sort_keys=True, separators=(",", ":")) + "\n" == text


def test_check_dodeca(capsys, dodeca_file):
    code, out, _ = call(capsys, "check", str(dodeca_file), "--k", "5")
    rep = json.loads(out)
    assert code == 0 and rep["verdicts"]["verdict"] == "pass"
    assert (rep["counters"]["n"], rep["counters"]["m"]) == (27, 149)
    assert rep["format_version"] == 1


def test_check_triangle(capsys, tmp_path):
    path = tmp_path / "t.json"
    path.write_text(json.dumps({"convex": 3, "chords": []}))
    code, out, _ = call(capsys, "check", str(path))
    assert code == 0 and json.loads(out)["counters"]["max_crossings"] == 0


def test_audit_violation_exit_code(capsys, dodeca_file):
    code, out, _ = call(capsys, "check", str(dodeca_file), "--k", "4", "--polyhedral")
    rep = json.loads(out)
    assert code == 2
    assert len(rep["failures"]) == 2


def test_malformed_input(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"n": 4}))
    code, out, err = call(capsys, "check", str(path))
    assert code == 1 and "edges" in err and out == ""
    path.write_text("{not json")
    assert call(capsys, "check", str(path))[0] == 1
    assert call(capsys, "check", str(tmp_path / "missing.json"))[0] == 1


def test_usage_errors(capsys):
    assert call(capsys, "frobnicate")[0] == 1
    assert call(capsys, "gen", "--family", "hex", "--x", "0")[0] == 1
    assert call(capsys, "certify", "chords", "--n", "6")[0] == 1
    assert call(capsys, "bounds", "audit", "--alpha", "x/y")[0] == 1


def test_discharge_file(capsys, tmp_path):
    path = tmp_path / "k6.json"
    path.write_text(json.dumps(from_convex(6, [(0, 2), (0, 3), (1, 4), (2, 5), (3, 5)]).to_json()))
    code, out, _ = call(capsys, "discharge", str(path), "--ruleset", "five_planar_main")
    rep = json.loads(out)
    assert code == 0 and rep["verdicts"] == {"residue": "0", "violations": 0}
    assert rep["ledger"]["ruleset"]["alpha"] == "49/170"


def test_discharge_not_applicable(capsys, tmp_path):
    path = tmp_path / "k7.json"
    path.write_text(json.dumps({"convex": 7, "chords": [[a, b] for a in range(7) for b in range(a + 2, 7)
                                                        if (a, b) != (0, 6)]}))
    code, out, _ = call(capsys, "discharge", str(path))
    assert code == 2 and json.loads(out)["verdicts"] == {"applicable": False}


def test_discharge_corpus(capsys):
    code, out, _ = call(capsys, "discharge", "--corpus", "30", "--ruleset", "min_k(4)", "--seed", "7")
    rep = json.loads(out)
    assert code == 0 and rep["verdicts"] == {"instances": 30, "failing": 0}


def test_bounds_commands(capsys):
    code, out, _ = call(capsys, "bounds", "audit", "--alpha", "49/170")
    assert code == 0 and json.loads(out)["audit"]["equalities"] == ["tight"]
    code, out, _ = call(capsys, "bounds", "audit", "--alpha", "50/170")
    assert code == 2
    code, out, _ = call(capsys, "bounds", "table", "--k", "8")
    assert code == 0 and len(json.loads(out)["table"]) == 9
    code, out, _ = call(capsys, "bounds", "constants")
    rep = json.loads(out)
    assert rep["constants"]["crossing_lemma_constant"] == {"num": 6223392, "den": 169182049}
    assert code == 2 and rep["verdicts"]["failing_rounded_claims"] == ["outer crossing constant"]


def test_certify_chords(capsys):
    code, out, _ = call(capsys, "certify", "chords", "--n", "6", "--k", "5")
    rep = json.loads(out)
    assert code == 0 and rep["verdicts"]["optimum"] == 9 and rep["with_boundary"] == 15


def test_certify_budget(capsys):
    code, out, _ = call(capsys, "certify", "chords", "--n", "10", "--k", "4", "--node-limit", "3")
    assert code == 3 and json.loads(out)["verdicts"]["budget_exceeded"]


def test_render_is_deterministic(capsys, tmp_path, dodeca_file):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    assert run(["render", str(dodeca_file), "-o", str(a)]) == 0
    assert run(["render", str(dodeca_file), "-o", str(b)]) == 0
    capsys.readouterr()
    assert a.read_text() == b.read_text()
    root = ET.fromstring(a.read_text())
    ns = "{http://www.w3.org/2000/svg}"
    assert len(root.findall(f"{ns}g/{ns}line")) == 149
    assert root.find(f"{ns}desc") is not None


def test_render_convex_uses_coordinates():
    svg = to_svg(from_convex(5, [(0, 2)]))
    root = ET.fromstring(svg)
    assert root.find("{http://www.w3.org/2000/svg}desc") is None
    assert svg.count("<circle") == 5


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "kplanar", "bounds", "table", "--k", "2"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["command"] == "bounds table"
