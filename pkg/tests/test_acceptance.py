"""
Acceptance gate: one test per criterion, each recording a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v`; the lines are printed in the
terminal summary.  `python3 tests/test_acceptance.py` prints them directly.
"""

import json
import time

import pytest

from qcanon import TensorModule
from qcanon.canon import canonical_basis, canonical_basis_tensor, certify_basis, oracle_basis
from qcanon.cli import main
from qcanon.qarith import RatQ
from qcanon.verify import vector_from_json, verify_bar, verify_forms, verify_kef_shadow, verify_relations
from qcanon.verma import Gen

from _fixtures import SL2, SL3, battery

CRITERION_1_SECONDS = 10.0
BATTERY_SECONDS = 300.0
ORACLE_DIM_CAP = 3

RESULTS: dict[int, str] = {}


def record(n: int, ok: bool, detail: str) -> None:
    RESULTS[n] = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(RESULTS[n])
    assert ok, RESULTS[n]


def F(i, n=1):
    return Gen("F", i, n)


SL3_MONOMIALS = [[], [F(0)], [F(1)], [F(0, 2), F(1)], [F(1, 2), F(0)], [F(0), F(1, 2), F(0)], [F(1), F(0)], [F(0), F(1)]]


def canon_set(tm):
    out = []
    for nu in tm.contents():
        if tm.dim(nu):
            out.extend(canonical_basis(tm, nu).elements)
    return out


@pytest.fixture(scope="module")
def swept():
    """Battery modules with canonical bases and full certificates, timed."""
    start = time.perf_counter()
    rows = []
    for label, cd, factors, depth in battery():
        tm = TensorModule(cd, factors, depth)
        certs = []
        for nu in tm.contents():
            if tm.dim(nu):
                certs.append(certify_basis(tm, canonical_basis(tm, nu)))
        rows.append((label, tm, certs))
    return rows, time.perf_counter() - start


def test_criterion_1_sl3_adjoint(tmp_path, capsys):
    cfg = {"vertices": ["i", "j"], "edges": [["i", "j"]], "highest_weights": [{"i": 1, "j": 1}], "depth": 4}
    path = tmp_path / "sl3.json"
    path.write_text(json.dumps(cfg))
    start = time.perf_counter()
    code = main(["--config", str(path), "canon"])
    elapsed = time.perf_counter() - start
    out = json.loads(capsys.readouterr().out)
    tm = TensorModule(SL3, [(1, 1)], 4)
    got = [vector_from_json(tm, e["word_expansion"]) for s in out["spaces"] for e in s["basis"]]
    expected = {tm.act_word(m, tm.vacuum()) for m in SL3_MONOMIALS}
    ok = code == 0 and len(got) == 8 and set(got) == expected and elapsed < CRITERION_1_SECONDS
    record(1, ok, f"{len(got)} elements, exact match {set(got) == expected}, {elapsed:.2f}s (< {CRITERION_1_SECONDS:.0f}s)")


@pytest.mark.parametrize("factors, ninth", [([(1, 0), (0, 1)], [1, 0]), ([(0, 1), (1, 0)], [0, 1])])
def test_criterion_2_sl3_tensor_tables(factors, ninth):
    tm = TensorModule(SL3, factors, 4)
    got = canon_set(tm)
    expected = {tm.act_word(m, tm.vacuum()) for m in SL3_MONOMIALS}
    last = tm.pure([tm.components[0].word_vector(ninth), tm.components[1].eta()])
    expected.add(last)
    ok = len(got) == 9 and set(got) == expected
    name = "F_jF_iη_i ⊗ η_j" if ninth == [1, 0] else "F_iF_jη_j ⊗ η_i"
    key = 2
    prev = RESULTS.get(key, "")
    both = ok and ("FAIL" not in prev)
    detail = f"{factors}: {len(got)} elements, ninth {name} present {last in got}"
    if prev:
        detail = prev.split("  ", 1)[1] + "; " + detail
    record(key, both, detail)


def test_criterion_3_top_norm():
    tm = TensorModule(SL3, [(1, 1)], 4)
    v = tm.act_word([F(0), F(1, 2), F(0)], tm.vacuum())
    val = tm.form(v, v)
    record(3, val == RatQ(1), f"(F_iF_j^(2)F_iη, F_iF_j^(2)F_iη) = {val.pretty()}")


def test_criterion_4_sl2():
    ok = True
    for d in range(7):
        tm = TensorModule(SL2, [(d,)], d)
        got = set(canon_set(tm))
        ok &= got == {tm.act(F(0, r), tm.vacuum()) for r in range(d + 1)}
    tm = TensorModule(SL2, [(1,), (1,)], 3)
    c0, c1 = tm.components
    v = tm.vacuum()
    expected = {
        v,
        tm.pure([c0.word_vector([0]), c1.eta()]),
        tm.act(F(0), v),
        tm.pure([c0.word_vector([0]), c1.word_vector([0])]),
    }
    pair_ok = set(canon_set(tm)) == expected
    oracle = set()
    for nu in tm.contents():
        if tm.dim(nu):
            oracle |= set(oracle_basis(tm, nu).elements)
    record(4, ok and pair_ok and oracle == expected, f"Λ(d), d <= 6: {ok}; Λ(1)⊗Λ(1): solver {pair_ok}, oracle {oracle == expected}")


def test_criterion_5_positivity(swept):
    rows, elapsed = swept
    failures = [(label, c.nu, c.witnesses.get("positivity")) for label, _, certs in rows for c in certs if not c.checks["positivity"]]
    spaces = sum(len(certs) for _, _, certs in rows)
    ok = not failures and elapsed < BATTERY_SECONDS
    record(5, ok, f"{len(rows)} modules, {spaces} weight spaces, {len(failures)} positivity failures, {elapsed:.1f}s (< {BATTERY_SECONDS:.0f}s)")


def test_criterion_6_relations(swept):
    rows, _ = swept
    bad = []
    seen: dict[str, int] = {}
    for label, tm, _ in rows:
        for rep in (verify_relations(tm, tm.depth), verify_kef_shadow(tm, tm.depth)):
            for c in rep.checks:
                seen[c.id] = seen.get(c.id, 0) + c.cases
                if not c.passed:
                    bad.append((label, c.id))
    families = ["kef.1", "kef.2", "kef.3", "rel.kinv", "rel.comm", "kef.8", "kef.9", "kef.4", "kef.5", "kef.6", "kef.7"]
    covered = all(seen.get(f, 0) > 0 for f in families)
    record(6, not bad and covered, f"{sum(seen.values())} identity instances, {len(bad)} failures, all families exercised {covered}")


def test_criterion_7_bar(swept):
    rows, _ = swept
    bad = []
    seen: dict[str, int] = {}
    for label, tm, _ in rows:
        for c in verify_bar(tm, tm.depth).checks:
            seen[c.id] = seen.get(c.id, 0) + c.cases
            if not c.passed:
                bad.append((label, c.id))
    covered = all(seen.get(f, 0) > 0 for f in ("bar.inv", "bar.f", "bar.embed", "bar.basis"))
    record(7, not bad and covered, f"{sum(seen.values())} checks, {len(bad)} failures")


def test_criterion_8_forms(swept):
    rows, _ = swept
    bad = []
    n = 0
    for label, tm, certs in rows:
        for c in verify_forms(tm, tm.depth).checks:
            n += c.cases
            if not c.passed:
                bad.append((label, c.id))
        for cert in certs:
            n += 1
            if not cert.checks["almost_orthonormal"]:
                bad.append((label, "almost_orthonormal", cert.nu))
    record(8, not bad, f"{n} checks, {len(bad)} failures")


def test_criterion_9_oracle(swept):
    rows, _ = swept
    compared = 0
    bad = []
    for label, tm, _ in rows:
        for nu in tm.contents():
            d = tm.dim(nu)
            if 0 < d <= ORACLE_DIM_CAP:
                main_b = canonical_basis_tensor(tm, nu) if tm.length >= 2 else canonical_basis(tm, nu)
                compared += 1
                if set(oracle_basis(tm, nu).elements) != set(main_b.elements):
                    bad.append((label, nu))
    record(9, not bad and compared > 0, f"{compared} weight spaces compared, {len(bad)} mismatches")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))
