import random

import pytest

from mtk.homfly import (
    BraidError, BraidWord, LinkPolynomial, homfly_invariant, markov_invariance_suite, parse_braid,
    random_braid, skein_check, trace_of_braid,
)
from mtk.ring import BiLaurent, RatFn, T, V


def test_parse_braid():
    b = parse_braid("1 1 1", 2)
    assert b.writhe == 3 and b.components() == 1
    f8 = parse_braid("1 -2 1 -2", 3)
    assert f8.writhe == 0 and f8.components() == 1
    with pytest.raises(BraidError, match="'3'"):
        parse_braid("3", 2)
    with pytest.raises(BraidError):
        parse_braid("1 0", 3)
    with pytest.raises(BraidError):
        parse_braid("x", 3)


def test_components_parity(rng):
    for _ in range(50):
        b = random_braid(rng, 5, 9)
        assert (b.components() - (b.strands - b.writhe)) % 2 == 0


@pytest.mark.parametrize("word,strands", [("", 1), ("1", 2), ("-1", 2), ("1 2", 3), ("-1 -2", 3),
                                          ("2 1", 3), ("1 -2 3", 4), ("1 2 3 4", 5)])
def test_unknot(word, strands):
    assert homfly_invariant(parse_braid(word, strands)).to_az() == {(0, 0): 1}


def test_trefoil():
    b = parse_braid("1 1 1", 2)
    # trace before normalization: -t v^2 - t v^-2 - v^-1
    assert trace_of_braid(b) == RatFn(-(T * V ** 2) - T * V ** -2 - V ** -1)
    assert homfly_invariant(b).format_az() == "2a^-2 + a^-2 z^2 - a^-4"


def test_mirror_trefoil_and_figure_eight():
    assert homfly_invariant(parse_braid("-1 -1 -1", 2)).format_az() == "-a^4 + 2a^2 + a^2 z^2"
    f8 = homfly_invariant(parse_braid("1 -2 1 -2", 3))
    assert f8.format_az() == "a^2 - 1 - z^2 + a^-2"
    assert f8.is_laurent_az()


def test_two_component_unlink():
    val = homfly_invariant(parse_braid("", 2))
    assert val.to_az() == {(1, -1): 1, (-1, -1): -1}
    assert not val.is_laurent_az()


def test_skein_examples():
    assert skein_check(parse_braid("", 2), 0, 1)
    assert skein_check(parse_braid("1 1", 2), 2, 1)
    assert skein_check(parse_braid("1 -2 1", 3), 1, 2)
    with pytest.raises(BraidError):
        skein_check(parse_braid("1", 2), 5, 1)


def test_skein_random():
    rng = random.Random(99)
    for _ in range(100):
        b = random_braid(rng, 4, 8)
        assert skein_check(b, rng.randint(0, len(b.letters)), rng.randint(1, b.strands - 1))


def test_markov_suite():
    rng = random.Random(5)
    for _ in range(30):
        rep = markov_invariance_suite(random_braid(rng, 4, 6), 2, rng)
        assert rep.passed, rep.failures
        assert rep.checks >= 2


def test_markov_suite_reports_witness():
    b = parse_braid("1 1 1", 2)
    rep = markov_invariance_suite(b, 1)
    assert rep.passed
    rep.record(False, "witness [1 2]")
    assert not rep and rep.failures == ["witness [1 2]"]


def test_knots_are_laurent_in_a_and_z(rng):
    count = 0
    while count < 25:
        b = random_braid(rng, 4, 8)
        if b.components() == 1:
            assert homfly_invariant(b).is_laurent_az()
            count += 1


def test_budget():
    with pytest.raises(BraidError):
        homfly_invariant(BraidWord(6, (1,)))


def test_to_az_rejects_non_polynomials():
    with pytest.raises(ValueError):
        LinkPolynomial(BiLaurent.monomial(1, 1), 0).to_az()
