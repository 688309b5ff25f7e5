import io as _io
import json
from pathlib import Path

import pytest

from hororoots import cli, io

DATA = Path(__file__).parent / "data"
GOLDEN = io.catalog_dir() / "golden"


def run(*argv):
    buf = _io.StringIO()
    code = cli.run(list(argv), out=buf)
    text = buf.getvalue()
    return code, (json.loads(text) if text.strip().startswith("{") else text)


@pytest.mark.parametrize("name", ["p1", "p2", "p3", "f0", "f1", "f2", "a1", "a2"])
def test_roots_match_golden(name):
    golden = json.loads((GOLDEN / f"roots_{name}.json").read_text())
    code, rep = run("roots", "--fan", name, "--box", str(golden["box"]))
    assert code == 0
    box = golden["box"]
    got = {json.dumps(r["ray"]): sorted(m for m in r["roots"] if max(map(abs, m)) <= box) for r in rep["rays"]}
    assert got == golden["roots"]


def test_roots_p2_total():
    code, rep = run("roots", "--fan", "p2")
    assert code == 0 and rep["total"] == 6
    assert all(r["status"] == "bounded-complete" for r in rep["rays"])


@pytest.mark.parametrize("model", ["sl2", "torus_p2", "sl3_parabolic", "torus_a2", "sl2_affine"])
def test_movable_matches_golden(model):
    golden = json.loads((GOLDEN / f"movable_{model}.json").read_text())
    code, rep = run("movable", "--model", model, "--fan", golden["fan"], "--box", str(golden["box"]))
    assert code == 0
    got = {d["divisor"]: {"decision": d["decision"], "witness": d["witness"]} for d in rep["decisions"]}
    assert got == golden["decisions"]


def test_movable_plain_fan_file():
    code, rep = run("movable", "--model", "sl2", "--fan", "p1")
    assert code == 0
    assert [d["decision"] for d in rep["decisions"]] == ["not-movable", "movable"]
    assert rep["decisions"][1]["witness"] == [1]


def test_validate_exit_codes():
    code, rep = run("validate", "--fan", str(DATA / "overlapping.json"))
    assert code == 2
    assert [v["axiom"] for v in rep["violations"]] == ["F2"]
    assert len(rep["violations"][0]["witnesses"]) == 2
    code, rep = run("validate", "--fan", "p2")
    assert code == 0 and rep["complete"] and rep["valid"]
    code, rep = run("validate", "--fan", "a2", "--no-close")
    assert code == 2 and {v["axiom"] for v in rep["violations"]} == {"F1"}
    code, rep = run("validate", "--fan", "torus_p2_fan", "--model", "torus_p2")
    assert code == 0 and rep["g_stable_rays"] == [[-1, -1], [0, 1], [1, 0]]


def test_input_errors_exit_one(capsys):
    assert run("roots", "--fan", str(DATA / "malformed.json"))[0] == 1
    err = capsys.readouterr().err
    assert "malformed.json:2:" in err
    assert run("roots", "--fan", str(DATA / "rank_mismatch.json"))[0] == 1
    assert run("validate", "--fan", str(DATA / "unknown_color.json"), "--model", "sl2")[0] == 1
    assert run("roots", "--fan", "does-not-exist")[0] == 1
    assert run("movable", "--model", "sl2", "--fan", "a2")[0] == 1
    assert run("bogus")[0] == 1
    assert run("roots", "--fan", "p2", "--box", "0")[0] == 1


def test_movable_inconclusive_exit_three(tmp_path):
    model = {"root_datum": {"type": "A1", "torus_rank": 1, "levi": []}, "M_basis": [[5, 0], [1, 1]],
             "colors": [], "g_divisors": [{"name": "D", "kappa": [1, 0]}], "horospherical": True}
    fan = {"cones": [{"generators": [[1, 0]], "colors": []}]}
    (tmp_path / "m.json").write_text(json.dumps(model))
    (tmp_path / "f.json").write_text(json.dumps(fan))
    code, rep = run("movable", "--model", str(tmp_path / "m.json"), "--fan", str(tmp_path / "f.json"), "--box", "3")
    assert code == 3 and rep["decisions"][0]["decision"] == "inconclusive-truncated"
    code, rep = run("movable", "--model", str(tmp_path / "m.json"), "--fan", str(tmp_path / "f.json"))
    assert code == 0 and rep["decisions"][0]["witness"] == [-1, 5]


def test_roots_unbounded_without_box_is_truncated():
    code, rep = run("roots", "--fan", "a2", "--box", "2")
    assert code == 0 and {r["status"] for r in rep["rays"]} == {"unbounded-truncated"}


def test_classify_and_omega():
    code, rep = run("classify", "--model", "sl2", "--fan", "sl2_p1", "--mu", "1")
    assert code == 0 and rep["horizontal"] and rep["moved_ray"] == [-1] and rep["dominant"]
    code, rep = run("omega", "--type", "A2", "--levi", "a1")
    assert code == 0 and rep["omega_simple_coords"] == [[1, 1]]
    code, rep = run("omega", "--type", "A2")
    assert rep["omega_simple_coords"] == [[0, 1], [1, 0], [1, 1]]
    code, rep = run("omega", "--model", "sl3_parabolic", "--fan", "sl3_parabolic_fan", "--mu", "0,1")
    assert code == 0 and rep["omega"] == [[1, 1]] and rep["omega_mu"] == [] and rep["omega_mu_0"] == []


def test_lnd_verify_exit_codes():
    code, rep = run("lnd-verify", "--rho", "1,0", "--mu=-1,3", "--c", "2/3", "--seed", "7")
    assert code == 0 and rep["passed"] and rep["seed"] == 7
    code, rep = run("lnd-verify", "--rho", "1", "--mu=-1", "--samples", "0")
    assert code == 0 and not rep["coverage"]
    code, rep = run("lnd-verify", "--model", "torus_a2", "--mu=-1,0")
    assert code == 0 and rep["derivation"]["rho"] == [1, 0]
    assert run("lnd-verify", "--model", "sl2_affine", "--mu=-1")[0] == 1
    assert run("lnd-verify", "--rho", "1,0", "--mu", "1,0")[0] == 1


def test_lnd_verify_reports_failure(monkeypatch):
    from hororoots import lnd
    from hororoots import lattice as lt

    def squared(d, a):
        return lnd.AlgebraElement({lt.add(l, d.mu): d.c * lt.pair(d.rho, l) ** 2 * x for l, x in a.terms.items()})

    monkeypatch.setattr(lnd, "apply_derivation", squared)
    code, rep = run("lnd-verify", "--rho", "1", "--mu=-1")
    assert code == 2 and not rep["passed"]


def test_catalog_and_table_format(monkeypatch):
    code, rep = run("catalog")
    names = {e["name"]: e["kind"] for e in rep["entries"]}
    assert names["p2"] == "fan" and names["sl2"] == "model" and names["sl2_p1"] == "colored-fan"
    monkeypatch.setenv("HORO_FORMAT", "table")
    code, text = run("roots", "--fan", "p1")
    assert code == 0 and "bounded-complete" in text and not text.startswith("{")


def test_env_box_override(monkeypatch):
    monkeypatch.setenv("HORO_BOX", "3")
    assert run("roots", "--fan", "a1")[1]["box"] == 3


def test_fan_json_round_trip(tmp_path):
    code, rep = run("validate", "--fan", "f2")
    path = tmp_path / "f.json"
    path.write_text(json.dumps(rep["fan"]))
    code2, rep2 = run("validate", "--fan", str(path))
    assert code2 == 0 and rep2["fan"] == rep["fan"]
    code, rep = run("validate", "--fan", "sl2_affine_cone", "--model", "sl2_affine")
    path.write_text(json.dumps(rep["colored_fan"]))
    assert run("validate", "--fan", str(path), "--model", "sl2_affine")[1]["colored_fan"] == rep["colored_fan"]


def test_model_json_round_trip():
    for name in ["sl2", "sl3_parabolic", "torus_p2"]:
        data = io.load_json(name)
        m = io.model_from_json(data)
        assert io.model_from_json(io.model_to_json(m)) == m
