import json
from fractions import Fraction
from math import factorial

import pytest

from mtk import charexp
from mtk.charexp import (
    CharacterError, FourierBlock, bipartitions, char_value, character_table, dixon_characters,
    fourier_block, gomi_trace, label_str, load_fourier, molien, partitions, save_fourier,
    seminormal_rep, standard_tableaux,
)
from mtk.coxeter import CartanType, weyl_group
from mtk.hecke import HeckeElement, eval_braid, kl_basis, kl_table
from mtk.ring import DELTA, ONE, ONE_MINUS_Q, Q, T, V, VINV, RatFn, parse_poly
from mtk.selftest import check_molien, check_representations, molien_brute_force
from mtk.trace import geometric_trace, z_value

A1, A2, A3 = (CartanType("A", n) for n in (1, 2, 3))
B2 = CartanType("B", 2)


def test_partitions_and_tableaux():
    assert partitions(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert len(bipartitions(3)) == 10
    assert len(standard_tableaux((3, 2))) == 5
    assert len(standard_tableaux((2,), (1,))) == 3
    for n in range(1, 6):
        assert sum(len(standard_tableaux(l)) ** 2 for l in partitions(n)) == factorial(n)


def test_one_dimensional_reps():
    assert seminormal_rep((2,)).gens[0][0][0] == RatFn(V)
    assert seminormal_rep((1, 1)).gens[0][0][0] == RatFn(-VINV)


def test_two_dimensional_block():
    m = seminormal_rep((2, 1)).gens[0]
    tr = m[0][0] + m[1][1]
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    assert tr == RatFn(DELTA)
    assert det == RatFn(-ONE)


def test_char_values():
    assert char_value(A1, (2,), eval_braid(A1, [1, 1, 1])) == V ** 3
    assert char_value(A1, (1, 1), eval_braid(A1, [1, 1, 1])) == -(VINV ** 3)
    assert char_value(A2, (2, 1), HeckeElement.one(A2)) == 2 * ONE


def test_hecke_characters_specialize_to_weyl_characters():
    for ct in (A3, CartanType("B", 3)):
        table = character_table(ct)
        g = weyl_group(ct)
        for lab in table.labels:
            for w in range(len(g)):
                val = char_value(ct, lab, HeckeElement.basis(ct, w))
                assert val.evaluate(1, 0) == table.value(lab, w)


def test_bad_labels():
    with pytest.raises(CharacterError):
        seminormal_rep((1, 2))
    with pytest.raises(CharacterError):
        char_value(A2, (2, 1, 1), HeckeElement.one(A2))
    with pytest.raises(CharacterError):
        char_value(CartanType("D", 3), (((2,), (1,))), HeckeElement.one(CartanType("D", 3)))


def _same(a, b):
    return all((x - y).is_zero() for r, s in zip(a, b) for x, y in zip(r, s))


@pytest.mark.parametrize("label", bipartitions(3), ids=label_str)
def test_b_representations(label):
    from mtk.charexp import hoefsmit_rep, identity_matrix, matmul, matrix_of_word
    rep = hoefsmit_rep(label)
    eye = identity_matrix(rep.dim)
    for m in rep.gens:
        want = [[eye[i][j] + RatFn(DELTA) * m[i][j] for j in range(rep.dim)] for i in range(rep.dim)]
        assert _same(matmul(m, m), want)
    assert _same(matrix_of_word(rep, [1, 2, 1, 2]), matrix_of_word(rep, [2, 1, 2, 1]))
    assert _same(matrix_of_word(rep, [2, 3, 2]), matrix_of_word(rep, [3, 2, 3]))
    assert _same(matrix_of_word(rep, [1, 3]), matrix_of_word(rep, [3, 1]))


def test_representation_relations():
    check_representations(4)


@pytest.mark.parametrize("ct", [A1, A2, A3, B2, CartanType("B", 3), CartanType("D", 2),
                                CartanType("D", 3), CartanType("D", 4)], ids=str)
def test_character_tables_match_burnside(ct):
    table = character_table(ct)
    constructed = sorted(tuple(Fraction(x) for x in table.values[l]) for l in table.labels)
    assert constructed == sorted(dixon_characters(ct))
    assert sum(table.degree(l) ** 2 for l in table.labels) == ct.order()


def test_type_labels():
    table = character_table(B2)
    g = weyl_group(B2)
    # ((),(2)) is the sign character of the sign changes
    lab = ((), (2,))
    assert table.value(lab, g.from_word([1])) == -1
    assert table.value(lab, g.from_word([2])) == 1
    d4 = character_table(CartanType("D", 4))
    assert len(d4.labels) == 13
    assert label_str(d4.labels[8]) == "((2),(2))+"


def test_molien_examples():
    assert molien(A1, (2,)) == RatFn(ONE + parse_poly("v^3 t"), ONE - Q * Q)
    assert molien(A1, (1, 1)) == RatFn(Q + V * T, ONE - Q * Q)
    assert molien(A1, "(1,1)") == molien(A1, (1, 1))
    with pytest.raises(CharacterError):
        molien(A1, (3,))


def test_molien_sum_rule_d():
    ct = CartanType("D", 3)
    table = character_table(ct)
    total = RatFn(0)
    for lab in table.labels:
        total = total + molien(ct, lab) * table.degree(lab)
    assert total == z_value() ** 3


def test_molien_suite():
    check_molien(groups=(A1, B2), sum_groups=(A1, A2), degree=6)


def test_molien_invariants_at_t0():
    # trivial isotypic part of Sym(V) for S_3 has Hilbert series 1/((1-q^2)(1-q^3))
    brute = molien_brute_force(A2, (3,), 8)
    hilbert = {k: m for (k, j), m in brute.items() if j == 0}
    assert [hilbert[k] for k in range(9)] == [1, 0, 1, 1, 1, 1, 2, 1, 2]


def test_fourier_identity_type_a():
    block = fourier_block(A2)
    assert [label_str(l) for l in block.labels] == ["(3)", "(2,1)", "(1,1,1)"]
    assert block.matrix == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_fourier_round_trip(tmp_path):
    block = fourier_block(A3)
    path = tmp_path / "f.json"
    save_fourier(block, path)
    again = load_fourier(path)
    assert again.labels == block.labels and again.matrix == block.matrix


def test_fourier_validation(tmp_path):
    data = json.loads((charexp.DATA_DIR / "fourier_B2.json").read_text())
    short = dict(data, labels=data["labels"][:4], matrix=[r[:4] for r in data["matrix"][:4]])
    path = tmp_path / "short.json"
    path.write_text(json.dumps(short))
    with pytest.raises(CharacterError, match="5 irreducible"):
        load_fourier(path)
    asym = json.loads(json.dumps(data))
    asym["matrix"][1][2] = "1"
    path.write_text(json.dumps(asym))
    with pytest.raises(CharacterError, match="symmetric"):
        load_fourier(path)
    path.write_text("{not json")
    with pytest.raises(CharacterError):
        load_fourier(path)
    with pytest.raises(CharacterError):
        fourier_block(CartanType("D", 3))


def test_gomi_a1():
    assert gomi_trace(A1, HeckeElement.basis(A1, [1])) == RatFn(-T)
    assert gomi_trace(A1, HeckeElement.one(A1)) == z_value()


def test_gomi_a2_kl_basis():
    table = kl_table(A2)
    for w in range(6):
        h = kl_basis(table, w)
        assert gomi_trace(A2, h) == geometric_trace(h)


def test_gomi_b2_with_shipped_fourier_block():
    table = kl_table(B2)
    g = weyl_group(B2)
    for w in range(len(g)):
        for h in (HeckeElement.basis(B2, w), kl_basis(table, w)):
            assert gomi_trace(B2, h) == geometric_trace(h)


def test_gomi_b2_needs_the_fourier_block():
    labels = character_table(B2).labels
    ident = FourierBlock(B2, labels, [[Fraction(int(i == j)) for j in range(5)] for i in range(5)])
    diffs = [w for w in range(8)
             if gomi_trace(B2, HeckeElement.basis(B2, w), ident) != geometric_trace(HeckeElement.basis(B2, w))]
    assert diffs
