import json
import subprocess
import sys

import pytest

from singsurf.cli import main
from singsurf.fixtures import G1, G2
from singsurf.jets import Jet2, MapGerm
from singsurf.normal_form import NormalFormCoeffs
from singsurf.report import GermDocument


@pytest.fixture
def files(tmp_path):
    def put(name, doc):
        p = tmp_path / name
        p.write_text(doc.render())
        return str(p)

    K = 5
    u, v = Jet2.u(K), Jet2.v(K)
    out = {
        "g1": put("g1.json", GermDocument.from_coeffs(G1)),
        "g2": put("g2.json", GermDocument.from_coeffs(G2)),
        "b2": put("b2.json", GermDocument.from_germ(MapGerm((u, v * v, u * u * v + v ** 5)))),
        "imm": put("imm.json", GermDocument.from_germ(MapGerm((u, v, u * u + v * v)))),
        "infl": put("infl.json", GermDocument.from_coeffs(G2.replace(a={(2, 0): 0}, b={2: 1}))),
    }
    trunc = tmp_path / "trunc.json"
    trunc.write_text(GermDocument.from_coeffs(G1).render()[:25])
    out["trunc"] = str(trunc)
    out["dir"] = tmp_path
    return out


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_classify(files, capsys):
    code, out, _ = run(capsys, "classify", files["b2"])
    assert code == 0 and out.splitlines()[0] == "B2+"
    code, out, _ = run(capsys, "classify", files["imm"])
    assert code == 3 and "out_of_family(corank 0)" in out
    code, _, err = run(capsys, "classify", files["trunc"])
    assert code == 2 and "line " in err
    code, _, _ = run(capsys, "classify", files["dir"] / "missing.json")
    assert code == 2


def test_analyze_G2_auto(files, capsys):
    code, out, _ = run(capsys, "analyze", files["g2"], "--theta", "auto")
    assert code == 0
    rep = json.loads(out)
    (d,) = rep["directions"]
    assert d["theta"]["degrees"] == 0.0
    assert d["height"]["geometric"]["atype"] == "A3" and d["height"]["geometric"]["versal_H"]
    assert d["dual_label"] == "swallowtail"
    assert d["oracle_residuals"]["k20"] < 1e-4


def test_analyze_G1_45(files, capsys):
    code, out, _ = run(capsys, "analyze", files["g1"], "--theta", "45", "--no-oracle")
    d = json.loads(out)["directions"][0]
    assert d["point_type"] == "parabolic" and d["ridge"] == "first_order"
    assert d["subparabolic"] is True and d["dual_label"] == "unresolved(sub-parabolic)"


def test_analyze_direction_and_pi_half(files, capsys):
    code, out, _ = run(capsys, "analyze", files["g1"], "--theta", "90", "--direction", "0", "1", "--no-oracle")
    rep = json.loads(out)
    h = rep["heights"][0]
    assert (h["atype"], h["case"], h["versal_H"]) == ("A2", "2b", False)
    assert rep["directions"][0]["k20"] == "undefined_at_pi_half"


def test_analyze_out_of_family(files, capsys):
    code, _, _ = run(capsys, "analyze", files["imm"])
    assert code == 3


def test_verify(files, capsys):
    code, out, _ = run(capsys, "verify", "--suite", "dual-labels")
    assert code == 0 and json.loads(out)["passed"]
    code, out, _ = run(capsys, "verify", "--suite", "route-agreement", "--random", 12, "--seed", 7)
    assert code == 0
    code, out, _ = run(capsys, "verify", files["g2"], "--suite", "sigma-branch")
    assert code == 0


def test_verify_catches_corrupted_delta2(files, capsys):
    code, out, _ = run(capsys, "verify", "--suite", "route-agreement", "--random", 20, "--seed", 7, "--debug-corrupt-delta2")
    assert code == 5
    fails = json.loads(out)["suites"][0]["failures"]
    assert fails and "germ" in fails[0]
    # the hook is reset afterwards
    code, _, _ = run(capsys, "verify", "--suite", "route-agreement", "--random", 20, "--seed", 7)
    assert code == 0


def test_verify_unknown_suite(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "nope"])
    assert exc.value.code == 2


def test_dual(files, capsys):
    mesh = files["dir"] / "g2.obj"
    code, out, _ = run(capsys, "dual", files["g2"], "--mesh", mesh, "--csv", files["dir"] / "g2.csv", "--grid", "4x6")
    assert code == 0 and out.strip() == "0 swallowtail"
    side = json.loads((files["dir"] / "g2.obj.json").read_text())
    assert side["parabolic"][0]["dual_label"] == "swallowtail"
    lines = mesh.read_text().splitlines()
    assert sum(l.startswith("v ") for l in lines) == 24
    code, _, _ = run(capsys, "dual", files["g2"], "--mesh", files["dir"] / "one.obj", "--grid", "1x1")
    assert code == 0


def test_dual_hypotheses(files, capsys):
    code, _, err = run(capsys, "dual", files["g2"], "--mesh", files["dir"] / "z.obj", "--pshift", "0", "0", "0")
    assert code == 4 and "hypotheses violated" in err
    code, _, err = run(capsys, "dual", files["infl"], "--mesh", files["dir"] / "i.obj")
    assert code == 4 and "dual hypotheses violated" in err
    code, _, _ = run(capsys, "dual", files["g2"], "--mesh", files["dir"] / "b.obj", "--grid", "3by4")
    assert code == 2


def test_deterministic_output(files, capsys):
    outs = [run(capsys, "analyze", files["g1"])[1] for _ in range(2)]
    assert outs[0] == outs[1]
    outs = [run(capsys, "verify", "--suite", "ade-oracle", "--random", 5, "--seed", 3)[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_module_entry_point(files):
    res = subprocess.run([sys.executable, "-m", "singsurf", "classify", files["g2"]], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("S1+")
