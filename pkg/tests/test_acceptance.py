"""The ten acceptance criteria at their stated tolerances.

Each test records one PASS/FAIL line, printed in the terminal summary.
"""

import json
import random

import pytest

from conftest import record
from singsurf.cli import main
from singsurf.config import VerifyConfig
from singsurf.fixtures import G1, G2, corpus, table_forms
from singsurf.report import GermDocument, ReportDocument, parse_germ_document
from singsurf.pipeline import analyze
from singsurf.suites import (
    run_suite,
    suite_ade_oracle,
    suite_blowup_limits,
    suite_dual_labels,
    suite_mond_table,
    suite_monge,
    suite_route_agreement,
    suite_sigma_branch,
    suite_torsion,
    suite_versality,
)

CFG = VerifyConfig()
SEED = CFG.seed


@pytest.fixture(scope="module")
def germs500():
    return corpus(CFG.corpus_size, SEED)


def _finish(number, res):
    detail = f"{res.checks} checks, {len(res.failures)} failures"
    record(number, res.name, res.passed, detail)
    assert res.passed, json.dumps(res.failures[:3], default=str)


def test_01_mond_table(tmp_path, capsys):
    bad = []
    for f in table_forms():
        p = tmp_path / f"{f.label}.json"
        p.write_text(GermDocument.from_germ(f.germ).render())
        code = main(["classify", str(p)])
        got = capsys.readouterr().out.splitlines()[0]
        if code != 0 or got != f.label:
            bad.append((f.label, got, code))
    res = suite_mond_table(CFG.transforms, seed=SEED)
    ok = not bad and res.passed
    record(1, "mond-table", ok, f"{len(table_forms())} forms via classify, {res.checks} transformed checks, {len(res.failures) + len(bad)} failures")
    assert not bad, bad
    assert res.passed, json.dumps(res.failures[:3], default=str)


def test_02_blowup_limits():
    _finish(2, suite_blowup_limits([G1, G2] + corpus(CFG.blowup_random, SEED), CFG.limit_tol, CFG.slope_tol))


def test_03_route_agreement(germs500):
    _finish(3, suite_route_agreement(germs500))


def test_04_ade_oracle(germs500):
    _finish(4, suite_ade_oracle(germs500))


def test_05_versality_matrix(germs500):
    _finish(5, suite_versality(germs500))


def test_06_sigma_branch(germs500):
    _finish(6, suite_sigma_branch([G1, G2] + germs500, seed=SEED))


def test_07_torsion(germs500):
    regular = [c for c in germs500 if c.get_a(2, 0) != 0][: CFG.torsion_germs]
    assert len(regular) == CFG.torsion_germs
    _finish(7, suite_torsion(regular, numeric_count=CFG.torsion_numeric, tol=CFG.torsion_tol))


def test_08_monge():
    _finish(8, suite_monge(CFG.monge_germs, seed=SEED, tol=CFG.torsion_tol))


def test_09_dual_labels():
    _finish(9, suite_dual_labels())


def test_10_determinism_and_round_trip(tmp_path, capsys):
    problems = []
    rng = random.Random(SEED)
    for c in [G1, G2] + corpus(20, SEED + 1):
        doc = GermDocument.from_coeffs(c)
        if parse_germ_document(doc.render()) != doc:
            problems.append("germ round-trip")
        rep = ReportDocument(analyze(c, oracle=rng.random() < 0.2))
        if ReportDocument.parse(rep.render()) != rep:
            problems.append("report round-trip")
    p = tmp_path / "g1.json"
    p.write_text(GermDocument.from_coeffs(G1).render())
    runs = []
    for _ in range(2):
        main(["analyze", str(p)])
        main(["verify", "--suite", "route-agreement", "--random", "30", "--seed", str(SEED)])
        runs.append(capsys.readouterr().out)
    if runs[0] != runs[1]:
        problems.append("repeated runs differ")
    record(10, "determinism-round-trip", not problems, "; ".join(problems))
    assert not problems
