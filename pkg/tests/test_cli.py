import json
import subprocess
import sys

import pytest

from defectlab.cli import main
from defectlab.nevanlinna import MeromorphicCurve
from defectlab.polyring import HomPoly
from defectlab.position import HypersurfaceFamily


def mono(*e):
    return HomPoly.monomial(e)


@pytest.fixture
def files(tmp_path):
    def put(name, obj):
        p = tmp_path / name
        p.write_text(json.dumps(obj))
        return str(p)
    return {
        "conics": put("conics.json", HypersurfaceFamily.of([mono(2, 0), mono(1, 1), mono(0, 2)]).to_json()),
        "lines": put("lines.json",
                     HypersurfaceFamily.of([mono(1, 0), mono(0, 1), mono(1, 0) + mono(0, 1)], 1).to_json()),
        "curve": put("curve.json", MeromorphicCurve(1, ((1, 1), (0, 0, 1))).to_json()),
        "hyp": put("hyp.json", mono(0, 1).to_json()),
        "bad": put("bad.json", {"n": 1}),
        "dir": tmp_path,
    }


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bounds_example(capsys):
    code, out, _ = run(["bounds", "--n", "2", "--k", "2", "--d", "1", "--eps", "1", "--rho", "0"], capsys)
    rep = json.loads(out)
    assert code == 0
    assert (rep["p"], rep["N"], rep["u"], rep["rhs"]) == (1, 57, 1711, "4")
    assert rep["lemma_new"]["a"] == rep["lemma_new"]["b"] == "pass"
    assert rep["seed"] == 0


def test_check_position(files, capsys):
    code, out, _ = run(["check-position", files["conics"], "--k", "2"], capsys)
    assert code == 0 and json.loads(out)["verdict"] == "holds"
    code, out, _ = run(["check-position", files["conics"], "--k", "1"], capsys)
    assert code == 2 and json.loads(out)["violating_subset"] == ["Q1", "Q2"]


def test_nevanlinna_csv(files, capsys):
    out_dir = files["dir"] / "nev"
    code, _, _ = run(["--out", str(out_dir), "nevanlinna", files["curve"], files["hyp"], "--r0", "1",
                      "--grid", "geom:2,64,24", "--trunc", "3"], capsys)
    assert code == 0
    lines = (out_dir / "profile_Q.csv").read_text().splitlines()
    assert lines[0] == "r,T,N,N_trunc,m,residual"
    T = [float(x.split(",")[1]) for x in lines[1:]]
    assert len(T) == 24 and T == sorted(T)
    rep = json.loads((out_dir / "report.json").read_text())
    assert rep["reports"][0]["residual_ok"]


def test_reports_are_byte_deterministic(files, capsys):
    argv = ["replace", files["lines"], "--k", "1", "--seed", "3"]
    _, a, _ = run(argv, capsys)
    _, b, _ = run(argv, capsys)
    assert a == b and json.loads(a)["seed"] == 3
    argv = ["smt", files["curve"], files["lines"], "--N", "3", "--samples", "500", "--grid", "geom:2,16,6",
            "--nodes", "1024"]
    _, a, _ = run(argv, capsys)
    _, b, _ = run(argv, capsys)
    assert a == b


def test_seed_position_in_argv(capsys):
    _, out, _ = run(["--seed", "5", "bounds", "--n", "1", "--k", "1", "--d", "1", "--eps", "1"], capsys)
    assert json.loads(out)["seed"] == 5


def test_exact_numbers_are_strings(capsys):
    _, out, _ = run(["bounds", "--n", "1", "--k", "2", "--d", "2", "--eps", "1/2"], capsys)
    rep = json.loads(out)
    assert rep["eps"] == "1/2" and rep["rhs"] == "9/2"


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 64
    with pytest.raises(SystemExit) as e:
        main(["bounds", "--n", "1", "--k", "1", "--d", "1", "--eps", "1", "--bogus"])
    assert e.value.code == 64
    with pytest.raises(SystemExit) as e:
        main(["bounds", "--n", "1", "--k", "1", "--d", "1", "--eps", "0.5e1"])
    assert e.value.code == 64


def test_input_errors(files, capsys):
    code, _, err = run(["check-position", files["bad"], "--k", "1"], capsys)
    assert code == 1 and json.loads(err)["error"] == "InvalidInput"
    code, _, _ = run(["check-position", str(files["dir"] / "missing.json"), "--k", "1"], capsys)
    assert code == 1
    code, _, _ = run(["bounds", "--n", "2", "--k", "1", "--d", "1", "--eps", "1"], capsys)
    assert code == 1


def test_wronskian_and_filtration(files, capsys, tmp_path):
    from defectlab.polyring import MPoly
    z = MPoly.var(1, 0)
    t = tmp_path / "t.json"
    t.write_text(json.dumps({"m": 1, "entries": [MPoly.const(1, 1).to_json(), z.to_json(), (z * z).to_json()]}))
    code, out, _ = run(["wronskian", str(t), "--point", "3"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["value"] == "2" and rep["admissible"]["alphas"] == [[0], [1], [2]]
    fam = tmp_path / "f.json"
    fam.write_text(json.dumps(HypersurfaceFamily.of([mono(2, 0) + mono(0, 2)]).to_json()))
    code, out, _ = run(["filtration", str(fam), "--N", "8"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["cz"]["passed"] and rep["u"] == 9


def test_gauss_subcommand(tmp_path, capsys):
    from defectlab.gaussmap import PolyImmersion
    from defectlab.polyring import MPoly
    u, v = MPoly.var(2, 0), MPoly.var(2, 1)
    p = tmp_path / "imm.json"
    p.write_text(json.dumps(PolyImmersion(2, 4, (u, v, u * u, u * v * v)).to_json()))
    code, out, _ = run(["gauss", str(p)], capsys)
    assert code == 0 and json.loads(out)["pluecker_relation_zero"]


def test_selftest_subset(capsys):
    code, out, err = run(["selftest", "--only", "4"], capsys)
    assert code == 0 and err.startswith("[PASS]") and " 4. " in err
    assert json.loads(out)["verdict"] == "pass"


def test_console_script_entry_point():
    out = subprocess.run([sys.executable, "-m", "defectlab.cli", "bounds", "--n", "1", "--k", "1", "--d", "1",
                          "--eps", "1"], capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["N"] == 18
