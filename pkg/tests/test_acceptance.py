"""Acceptance criteria 1-11 at full size; each prints one PASS/FAIL line (run with -s to see them)."""

import pytest

from mtk import selftest
from mtk.hecke import KLTable, kl_table
from mtk.coxeter import CartanType
from mtk.ring import V

BUDGETS = {1: 60, 2: 120, 3: 120, 4: 300, 5: 600, 6: 180, 7: 60, 8: 120, 9: 120, 10: 120, 11: 180}


@pytest.mark.parametrize("number,name,make", selftest.CRITERIA, ids=[f"criterion-{c[0]}" for c in selftest.CRITERIA])
def test_criterion(number, name, make):
    res = selftest.run_check(number, name, make("full"))
    print()
    print(res.line())
    assert res.passed, res.detail
    assert res.seconds <= BUDGETS[number], f"{res.seconds:.1f}s over the {BUDGETS[number]}s budget"


def test_wrong_inverse_rule_is_caught():
    # replacing v^-1 by v in the sigma^-1 rule must fail criteria 1 and 5 with a witness
    results = selftest.run_selftest("quick", inverse_factor=V)
    failed = {r.number: r.detail for r in results if not r.passed}
    assert set(failed) == {1, 5}
    assert all(detail for detail in failed.values())


def test_tampered_kl_cache_is_caught(tmp_path):
    ct = CartanType("A", 3)
    path = tmp_path / "kl-A3.txt"
    table = kl_table(ct)
    table.fill()
    table.save(path)
    assert selftest.run_check(12, "cache", lambda: selftest.check_kl_cache(path)).passed
    # structurally valid but wrong: P[e ; 2 1 3 2] = 1 + 2q
    text = path.read_text()
    assert "e | 2 1 3 2 | 1 1\n" in text
    path.write_text(text.replace("e | 2 1 3 2 | 1 1\n", "e | 2 1 3 2 | 1 2\n"))
    KLTable.load(path, ct)
    res = selftest.run_check(12, "cache", lambda: selftest.check_kl_cache(path))
    print()
    print(res.line())
    assert not res.passed and "2 1 3 2" in res.detail
