import io
import json
from fractions import Fraction
from pathlib import Path

import pytest

from localgw.cli import (CUTOFF_ENV, RunConfig, compare_tables, default_cutoff, main,
                         table_from_json)
from localgw.errors import InputError

GOLDEN = Path(__file__).parent / "golden"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_scatter_type_ii():
    code, out, _ = call("scatter", "--model", "II", "--cutoff", "6")
    assert code == 0
    data = json.loads(out)
    assert len(data["omega"]) == 6 and all(e["value"] == "1" for e in data["omega"])


def test_output_is_deterministic(tmp_path):
    a = call("scatter", "--model", "III", "--cutoff", "4", "--svg", str(tmp_path / "a.svg"))
    b = call("scatter", "--model", "III", "--cutoff", "4", "--svg", str(tmp_path / "b.svg"))
    assert a == b
    assert (tmp_path / "a.svg").read_bytes() == (tmp_path / "b.svg").read_bytes()


def test_pentagon_and_classify():
    assert call("pentagon-check", "--cutoff", "8")[0] == 0
    code, out, _ = call("classify", "--matrix", "0,1,-1,1")
    assert (code, out) == (0, "II\n")


def test_exit_codes():
    assert call("classify", "--matrix", "1,2,3")[0] == 2
    assert call("classify", "--matrix", "2,0,0,1")[0] == 2
    assert call("scatter", "--model", "I0*")[0] == 2
    assert call("scatter", "--in", "/nonexistent.json")[0] == 2
    assert call("rays", "--type", "II", "--theta", "0.3")[0] == 0
    assert call("nonsense")[0] == 2


def test_degenerate_diagram_exit_code(tmp_path):
    lat = {"pairing": [[0, 1], [-1, 0]], "charge_constants": [[1, 0], [2, 0]]}
    walls = [{"direction": [1, 0], "function": [{"charge": [0, 0], "coeff": "1"}, {"charge": [1, 0], "coeff": "1"}]},
             {"direction": [0, 1], "function": [{"charge": [0, 0], "coeff": "1"}, {"charge": [0, 1], "coeff": "1"}]}]
    p = tmp_path / "d.json"
    p.write_text(json.dumps({"lattice": lat, "cutoff": 3, "walls": walls}))
    code, _, err = call("scatter", "--in", str(p))
    assert code == 3 and "degenerate" in err


def test_scatter_round_trip(tmp_path):
    out_d, inv = tmp_path / "d.json", tmp_path / "t.json"
    assert call("scatter", "--model", "IV", "--route", "four-I1", "--cutoff", "3",
                "--out", str(out_d), "--invariants", str(inv))[0] == 0
    table = table_from_json(json.loads(inv.read_text()))
    assert table.omega[(1, 0)] == 3
    code, out, _ = call("scatter", "--in", str(out_d))
    assert code == 0 and json.loads(out)["cutoff"] == 6


def test_compare_against_golden(tmp_path):
    p = tmp_path / "iv.json"
    assert call("scatter", "--model", "IV", "--route", "four-I1", "--cutoff", "5", "--invariants", str(p))[0] == 0
    code, out, _ = call("compare", "--computed", str(p), "--golden", str(GOLDEN / "iv.json"))
    assert (code, out) == (0, "")
    assert call("compare", "--computed", str(p), "--golden", str(GOLDEN / "ii.json"))[0] == 4


def test_compare_tables_single_line_diff():
    golden = table_from_json(json.loads((GOLDEN / "ii.json").read_text()))
    same = table_from_json(json.loads((GOLDEN / "ii.json").read_text()))
    assert compare_tables(same, golden) == []
    same.omega[(1, 1)] = Fraction(2)
    assert len(compare_tables(same, golden)) == 1
    with pytest.raises(InputError):
        compare_tables(table_from_json(json.loads((GOLDEN / "iii.json").read_text())), golden)


def test_flow_tropical_weierstrass(tmp_path):
    code, out, _ = call("flow", "--type", "II", "--start", "0.5,0.1", "--class", "1,0")
    assert code == 0 and json.loads(out)["terminated"] == "reached zero"
    code, out, _ = call("tropical", "--model", "II", "--class", "1,1", "--cutoff", "4",
                        "--svg", str(tmp_path / "t.svg"))
    assert code == 0 and json.loads(out)["count"] == "1"
    assert (tmp_path / "t.svg").read_text().startswith("<?xml")
    code, out, _ = call("weierstrass", "--a", "s^2+2*e", "--b", "s^2+e", "--eps", "0.01", "--disc", "0,0,0.5")
    data = json.loads(out)
    assert code == 0 and data["types"] == ["I1"] * 4 and data["multiplicities"] == [1] * 4


def test_rays_svg(tmp_path):
    p = tmp_path / "r.svg"
    code, out, _ = call("rays", "--type", "II", "--theta", "0.3", "--svg", str(p))
    assert code == 0 and len(json.loads(out)["rays"]) == 5
    text = p.read_text()
    assert 'version="1.1"' in text and "stroke-dasharray" in text


def test_env_cutoff(monkeypatch):
    monkeypatch.setenv(CUTOFF_ENV, "3")
    assert default_cutoff() == 3
    assert json.loads(call("scatter", "--model", "II")[1])["cutoff"] == 3
    monkeypatch.setenv(CUTOFF_ENV, "x")
    with pytest.raises(InputError):
        default_cutoff()


def test_run_config_validation():
    with pytest.raises(InputError):
        RunConfig("scatter", cutoff=0)
    with pytest.raises(InputError):
        RunConfig("scatter", tolerances={"nope": 1.0})
    with pytest.raises(InputError):
        RunConfig("frobnicate")
