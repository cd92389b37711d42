import random

import pytest

from mtk.coxeter import CartanType, weyl_group
from mtk.hecke import (
    CacheError, HeckeElement, KLTable, eval_braid, kl_basis, kl_polynomial, kl_table, mul_std,
)
from mtk.ring import DELTA, ONE, VINV, BiLaurent
from mtk.selftest import kl_by_bar_involution, random_element

GROUPS = [CartanType("A", 2), CartanType("A", 3), CartanType("B", 2), CartanType("B", 3),
          CartanType("D", 3), CartanType("D", 4)]


def bar(h: HeckeElement) -> HeckeElement:
    g = h.group
    out = HeckeElement.zero(h.ctype)
    for w, c in h.coeffs.items():
        word = g.reduced_word(w)
        out = out + eval_braid(h.ctype, [-s for s in word]).scale(c.bar())
    return out


@pytest.mark.parametrize("ct", GROUPS[:4], ids=str)
def test_associativity(ct, rng):
    for _ in range(15):
        a, b, c = (random_element(ct, rng) for _ in range(3))
        assert mul_std(mul_std(a, b), c) == mul_std(a, mul_std(b, c))


@pytest.mark.parametrize("ct", GROUPS, ids=str)
def test_quadratic_and_braid_relations(ct):
    m = ct.coxeter_matrix()
    for s in ct.generators:
        sig = HeckeElement.basis(ct, [s])
        assert sig * sig == HeckeElement.one(ct) + sig.scale(DELTA)
        assert eval_braid(ct, [s, -s]) == HeckeElement.one(ct)
        for t in ct.generators:
            k = m[s - 1][t - 1]
            if s < t:
                assert eval_braid(ct, ([s, t] * k)[:k]) == eval_braid(ct, ([t, s] * k)[:k])


def test_standard_basis_products():
    ct = CartanType("A", 2)
    assert HeckeElement.basis(ct, [1]) * HeckeElement.basis(ct, [2]) == HeckeElement.basis(ct, [1, 2])


def test_eval_braid_cube():
    ct = CartanType("A", 1)
    s = HeckeElement.basis(ct, [1])
    # sigma^3 = sigma^2 sigma = (1 + d sigma) sigma = sigma + d (1 + d sigma)
    want = s + (HeckeElement.one(ct) + s.scale(DELTA)).scale(DELTA)
    assert eval_braid(ct, [1, 1, 1]) == want
    with pytest.raises(ValueError):
        eval_braid(ct, [2])


def test_cprime_s():
    ct = CartanType("B", 2)
    for s in ct.generators:
        assert kl_basis(kl_table(ct), weyl_group(ct).from_word([s])) == \
            HeckeElement.basis(ct, [s]) + HeckeElement.one(ct).scale(VINV)


@pytest.mark.parametrize("ct", GROUPS, ids=str)
def test_kl_basis_is_bar_invariant(ct):
    g = weyl_group(ct)
    table = kl_table(ct)
    step = 1 if len(g) <= 48 else 11
    for w in range(0, len(g), step):
        c = kl_basis(table, w)
        assert bar(c) == c


@pytest.mark.parametrize("ct", [CartanType("A", 3), CartanType("B", 3), CartanType("D", 4)], ids=str)
def test_kl_matches_bar_involution_oracle(ct):
    table = kl_table(ct).fill()
    assert table.polys == kl_by_bar_involution(ct)


@pytest.mark.parametrize("ct", GROUPS, ids=str)
def test_kl_polynomial_properties(ct):
    table = kl_table(ct).fill()
    g = table.group
    for (x, w), p in table.polys.items():
        assert g.bruhat_leq(x, w)
        assert p[0] == 1
        assert all(c >= 0 for c in p)
        if x != w:
            assert 2 * (len(p) - 1) < g.length[w] - g.length[x]
    for w in range(len(g)):
        for x in g.bruhat_interval(w):
            assert (x, w) in table.polys


def test_kl_examples():
    ct = CartanType("A", 3)
    g = weyl_group(ct)
    w = g.element(g.from_word([2, 1, 3, 2]))
    assert kl_polynomial(kl_table(ct), g.element(0), w) == (1, 1)
    # the other singular Schubert variety in A3
    w2 = g.element(g.from_word([1, 3, 2, 3, 1]))
    assert kl_polynomial(kl_table(ct), g.element(g.from_word([3])), w2) == (1, 1)


def test_cache_round_trip(tmp_path):
    ct = CartanType("B", 3)
    table = kl_table(ct).fill()
    path = tmp_path / "kl.txt"
    table.save(path)
    again = KLTable.load(path)
    assert again.polys == table.polys
    assert again.dumps() == table.dumps()
    assert not again.mismatches()


def _corrupt(text, old, new):
    assert old in text
    return text.replace(old, new, 1)


@pytest.mark.parametrize("edit", [
    lambda s: s.replace("kl-cache v1", "kl-cache v9", 1),
    lambda s: s + "1 2 | 1 | 1\n",                       # not in the Bruhat interval / duplicate
    lambda s: _corrupt(s, "e | 1 | 1\n", "e | 1 | 2\n"),  # constant term must be 1
    lambda s: _corrupt(s, "e | 1 | 1\n", ""),             # incomplete
    lambda s: _corrupt(s, "e | 1 | 1\n", "e | 1 | 1 1\n"),  # degree bound
    lambda s: _corrupt(s, "e | 1 | 1\n", "e | 1 | 1 -1\n"),
    lambda s: "",
])
def test_cache_validation(edit):
    text = kl_table(CartanType("A", 2)).dumps()
    with pytest.raises(CacheError):
        KLTable.loads(edit(text))


def test_cache_tamper_detected_by_recomputation():
    text = kl_table(CartanType("A", 3)).dumps()
    bad = _corrupt(text, "e | 2 1 3 2 | 1 1", "e | 2 1 3 2 | 1 2")
    table = KLTable.loads(bad)
    assert table.mismatches()


def test_cache_type_mismatch():
    text = kl_table(CartanType("A", 2)).dumps()
    with pytest.raises(CacheError):
        KLTable.loads(text, CartanType("B", 2))


def test_element_arithmetic():
    ct = CartanType("A", 2)
    a = HeckeElement.basis(ct, [1])
    assert (a - a).is_zero()
    assert (2 * a) == a + a
    with pytest.raises(TypeError):
        a * HeckeElement.basis(CartanType("A", 1), [1])
