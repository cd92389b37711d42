from itertools import product

import pytest

from mtk.coxeter import (
    CartanType, GroupTooLarge, WeylGroup, bruhat_leq, element, embedding, length_formula,
    parse_cartan, tower_decompose, weyl_group,
)

SMALL = [CartanType("A", n) for n in range(0, 4)] + [CartanType("B", n) for n in range(1, 4)] + \
    [CartanType("D", n) for n in range(2, 5)]


@pytest.mark.parametrize("ct", SMALL, ids=str)
def test_order_and_lengths(ct):
    g = weyl_group(ct)
    assert len(g) == ct.order()
    for i, w in enumerate(g.perms):
        assert g.length[i] == length_formula(ct, w)
        assert len(g.reduced_word(i)) == g.length[i]
        assert g.from_word(g.reduced_word(i)) == i


@pytest.mark.parametrize("ct", SMALL, ids=str)
def test_coxeter_relations(ct):
    g = weyl_group(ct)
    m = ct.coxeter_matrix()
    for s, t in product(ct.generators, repeat=2):
        word = [s, t] * m[s - 1][t - 1]
        assert g.from_word(word) == 0


def test_orders():
    assert CartanType("A", 3).order() == 24
    assert CartanType("B", 3).order() == 48
    assert CartanType("D", 4).order() == 192


def test_bad_types():
    with pytest.raises(ValueError):
        CartanType("E", 6)
    with pytest.raises(ValueError):
        CartanType("D", 1)
    with pytest.raises(GroupTooLarge):
        WeylGroup(CartanType("A", 8), bound=1000)


def test_parse_cartan():
    assert parse_cartan("B_3") == CartanType("B", 3)


def test_longest_element_lengths():
    assert max(weyl_group(CartanType("A", 3)).length) == 6
    assert max(weyl_group(CartanType("B", 3)).length) == 9
    assert max(weyl_group(CartanType("D", 4)).length) == 12


@pytest.mark.parametrize("ct", [CartanType("A", 3), CartanType("B", 3), CartanType("D", 4)], ids=str)
def test_bruhat_properties(ct):
    g = weyl_group(ct)
    w0 = len(g) - 1
    assert len(g.bruhat_interval(w0)) == len(g)
    for w in range(0, len(g), 7):
        interval = g.bruhat_interval(w)
        assert 0 in interval and w in interval
        winv = g.inverse(w)
        for x in interval:
            assert g.bruhat_leq(g.inverse(x), winv)
            # lifting property: s a left descent of w but not of x gives x <= sw
            for s in ct.generators:
                if g.is_left_descent(w, s) and not g.is_left_descent(x, s):
                    assert g.bruhat_leq(x, g.lmul[w][s - 1])


def test_bruhat_examples():
    a2 = CartanType("A", 2)
    assert bruhat_leq(element(a2, "1"), element(a2, "2 1"))
    assert not bruhat_leq(element(a2, "1 2"), element(a2, "2 1"))


@pytest.mark.parametrize("ct", SMALL[1:], ids=str)
def test_tower_decompose(ct):
    g = weyl_group(ct)
    lower = ct.parabolic()
    image = set(embedding(lower, ct))
    for i in range(len(g)):
        u, r = g.tower_decompose(i)
        assert u in image
        assert g.mul(u, g.from_word(r)) == i
        assert g.length[u] + len(r) == g.length[i]
        assert not r or r[0] == ct.rank


def test_tower_decompose_element():
    w = element(CartanType("A", 2), "1 2")
    u, r = tower_decompose(w)
    assert str(u) == "1" and r == (2,)


def test_embedding_respects_products():
    lo, hi = CartanType("B", 2), CartanType("B", 3)
    emb = embedding(lo, hi)
    gl, gh = weyl_group(lo), weyl_group(hi)
    for i in range(len(gl)):
        for j in range(len(gl)):
            assert emb[gl.mul(i, j)] == gh.mul(emb[i], emb[j])


def test_word_parsing():
    g = weyl_group(CartanType("A", 2))
    assert g.parse("s1 s2") == g.from_word([1, 2])
    assert g.parse("e") == 0
    with pytest.raises(ValueError):
        g.parse("x")
    with pytest.raises(ValueError):
        g.parse("3")


def test_element_str():
    assert str(element(CartanType("A", 2), "e")) == "e"
    assert str(element(CartanType("A", 2), [2, 1, 2])) == "1 2 1"
