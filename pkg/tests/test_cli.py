import json
import time

import pytest

from mcgrep.cli import main
from mcgrep.cocycles import boundary_cocycle, build_phi_c, dual_generator_rep, principal_cocycle
from mcgrep.exact import Matrix
from mcgrep.normal_form import tilde
from mcgrep.samples import single_violation
from mcgrep.surface import SurfaceSig
from mcgrep.symplectic import block_c


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def test_gen(capsys):
    code, out, _ = run(capsys, "gen", "-g", "2")
    data = json.loads(out)
    assert code == 0
    assert set(data) == {"a1", "b1", "a2", "b2", "c1", "G", "J"}
    assert data["c1"]["entries"][0] == ["1", "1", "0", "-1"]
    code, out, _ = run(capsys, "gen", "-g", "2", "-p", "1", "-r", "1")
    assert {"e1", "f1"} <= set(json.loads(out))


def test_gen_rejects_genus_one(capsys):
    code, _, err = run(capsys, "gen", "-g", "1")
    assert code == 2 and "error" in err
    code, _, err = run(capsys, "gen")
    assert code == 2 and "--genus" in err


def test_relcheck(capsys, tmp_path):
    code, out, _ = run(capsys, "relcheck", "-g", "5")
    assert code == 0 and json.loads(out)["verdict"] == "pass"

    rep = build_phi_c(principal_cocycle(SurfaceSig(3), [1, 0, 2, 0, 0, 1])).to_json()
    entries = rep["images"]["b2"]["entries"]
    entries[0][6] = "1"
    code, out, _ = run(capsys, "relcheck", "-i", write(tmp_path, "rep.json", rep))
    report = json.loads(out)
    assert code == 1 and report["verdict"] == "fail"
    assert any("b2" in f["relation"] for f in report["failures"])


def test_relcheck_genus_eight_is_fast(capsys):
    start = time.perf_counter()
    code, _, _ = run(capsys, "relcheck", "-g", "8")
    assert code == 0
    assert time.perf_counter() - start < 60


def test_build_rep_then_analyze(capsys, tmp_path):
    c = boundary_cocycle(SurfaceSig(2, 1, 0), "1/2")
    code, out, _ = run(capsys, "build-rep", "-i", write(tmp_path, "c.json", c.to_json()))
    assert code == 0
    rep_path = write(tmp_path, "rep.json", json.loads(out))
    code, out, _ = run(capsys, "analyze", "-i", rep_path)
    assert code == 0 and json.loads(out)["verdict"] == "pass"
    code, out, _ = run(capsys, "analyze", "-g", "3")
    assert code == 0


def test_build_rep_refuses_bad_cocycle(capsys, tmp_path):
    c = principal_cocycle(SurfaceSig(2), [1, 0, 0, 0]).to_json()
    c["values"]["b2"] = ["1", "0", "0", "0"]
    code, out, _ = run(capsys, "build-rep", "-i", write(tmp_path, "c.json", c))
    assert code == 1 and json.loads(out)["stage"] == "relations"


def test_classify_dual(capsys, tmp_path):
    sig = SurfaceSig(2, 1, 0)
    c = boundary_cocycle(sig, 2)
    rep = dual_generator_rep(build_phi_c(c)).to_json()
    code, out, _ = run(capsys, "classify", "-i", write(tmp_path, "rep.json", rep))
    res = json.loads(out)
    assert code == 0 and res["verdict"] == "TypeB"
    assert res["extracted"] == c.to_json()


def test_equiv(capsys, tmp_path):
    sig = SurfaceSig(2, 1, 0)
    c = boundary_cocycle(sig, 1)
    c2 = c.scaled(3) + principal_cocycle(sig, [1, 2, 0, -1])
    code, out, _ = run(capsys, "equiv", "-i", write(tmp_path, "e.json", {"c1": c2.to_json(), "c2": c.to_json()}))
    res = json.loads(out)
    assert code == 0 and res["verdict"] == "feasible" and res["mu"] == "3"
    zero = principal_cocycle(sig, [0, 0, 0, 0])
    code, out, _ = run(capsys, "equiv", "-i", write(tmp_path, "f.json", [zero.to_json(), c.to_json()]))
    assert code == 1 and json.loads(out)["verdict"] == "infeasible"


@pytest.mark.parametrize("content", ["{not json", "[1, 2, 3]", '{"c1": {}, "c2": {}}'])
def test_malformed_input(capsys, tmp_path, content):
    path = tmp_path / "bad.json"
    path.write_text(content)
    code, _, err = run(capsys, "equiv", "-i", str(path))
    assert code == 2 and "error" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "classify", "-i", str(tmp_path / "nope.json"))
    assert code == 2 and "cannot read" in err


def test_normalize_modes(capsys, tmp_path):
    g = 3
    chain = {"mode": "chain", "g": g, "matrices": [tilde(block_c(g, k), 1).to_json() for k in (1, 2)]}
    code, out, _ = run(capsys, "normalize", "-i", write(tmp_path, "a.json", chain))
    assert code == 0 and json.loads(out)["chain"]["types"] == ["diagonal", "diagonal"]

    two = {"mode": "chain-2g", "g": g, "matrices": [block_c(g, k).to_json() for k in (1, 2)]}
    code, out, _ = run(capsys, "normalize", "-i", write(tmp_path, "b.json", two))
    assert code == 0 and json.loads(out)["p"] == ["1", "1"]

    key = {"mode": "key-lemma", "g": g, "m": 1, "matrices": [tilde(block_c(g, 1), 1).to_json()]}
    code, out, _ = run(capsys, "normalize", "-i", write(tmp_path, "c.json", key))
    assert code == 0 and json.loads(out)["form"]["p"] == "1"

    bad = {"mode": "check", "g": g, "m": 1, "role": "chain-1", "matrices": [single_violation(g, "ii").to_json()]}
    code, out, _ = run(capsys, "normalize", "-i", write(tmp_path, "d.json", bad))
    assert code == 1 and json.loads(out)["stage"] == "condition-ii"

    fail = dict(key, matrices=[Matrix.identity(7).to_json()])
    code, out, _ = run(capsys, "normalize", "-i", write(tmp_path, "e.json", fail))
    assert code == 1 and json.loads(out)["verdict"] == "fail"

    code, _, err = run(capsys, "normalize", "-i", write(tmp_path, "f.json", dict(key, mode="warp")))
    assert code == 2 and "unknown mode" in err


def test_output_is_deterministic(capsys, tmp_path):
    first = run(capsys, "gen", "-g", "3", "-p", "1")[1]
    second = run(capsys, "gen", "-g", "3", "-p", "1")[1]
    assert first == second
    out_path = tmp_path / "gen.json"
    assert run(capsys, "gen", "-g", "3", "-p", "1", "-o", str(out_path))[0] == 0
    assert out_path.read_text() == first


def test_selftest_subset(capsys, tmp_path):
    out_path = tmp_path / "self.json"
    code, out, _ = run(capsys, "selftest", "--criteria", "3", "9", "-o", str(out_path))
    assert code == 0
    assert out.count("[PASS]") == 2
    summary = json.loads(out_path.read_text())
    assert summary["verdict"] == "pass" and [c["criterion"] for c in summary["criteria"]] == [3, 9]
