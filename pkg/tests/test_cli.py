import json

import pytest

from mtk.cli import main
from mtk.coxeter import CartanType
from mtk.expr import ExprError, parse_element
from mtk.hecke import HeckeElement, eval_braid, kl_basis, kl_table
from mtk.ring import RatFn, VINV


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err


def test_expression_language():
    a2 = CartanType("A", 2)
    assert parse_element("1 2 1", a2) == HeckeElement.basis(a2, [1, 2, 1])
    assert parse_element("s1 s2", a2) == HeckeElement.basis(a2, [1, 2])
    assert parse_element("C' 1 2", a2) == kl_basis(kl_table(a2), HeckeElement.basis(a2, [1, 2]).group.from_word([1, 2]))
    assert parse_element("[1 -2 1]", a2) == eval_braid(a2, [1, -2, 1])
    assert parse_element("s1^-1", a2) == eval_braid(a2, [-1])
    assert parse_element("2*1 - e", a2) == HeckeElement.basis(a2, [1]).scale(2) - HeckeElement.one(a2)
    assert parse_element("(1 + 2) * 1", a2) == parse_element("1 1 + 2 1", a2)
    assert parse_element("C' 1 - 1", a2) == HeckeElement.one(a2).scale(VINV)
    for bad in ["", "3", "1 +", "(1", "[1 0]", "s1^2", "C' 1 1", "x"]:
        with pytest.raises(ExprError):
            parse_element(bad, a2)


def test_spec_examples(capsys):
    assert run(capsys, "trace", "--family", "A", "--rank", "1", "--element", "s1")[:2] == (0, "-t")
    assert run(capsys, "hochschild", "--family", "A", "--rank", "1", "--w", "1")[:2] == \
        (0, "(v^-1 + v^2 t)/(1 - v^2)")
    assert run(capsys, "homfly", "--braid", "1 1 1", "--strands", "2", "--vars", "az")[:2] == \
        (0, "2a^-2 + a^-2 z^2 - a^-4")


def test_human_and_vt(capsys):
    assert run(capsys, "hochschild", "--family", "A", "--rank", "1", "--w", "1", "--human")[1] == \
        "(q^-1/2 + q t)/(1 - q)"
    assert run(capsys, "homfly", "--braid", "1 1 1", "--strands", "2", "--vars", "vt")[1] == \
        "a^-4 v * (-v^-2 t - v^-1 - v^2 t)"


def test_json_round_trip(capsys):
    code, out, _ = run(capsys, "trace", "--family", "B", "--rank", "2", "--element", "[2 1 -2]", "--json")
    data = json.loads(out)
    assert code == 0
    assert RatFn.from_json(data["value"]).format() == data["text"] == "(-t - v t^2)/(1 - v^2)"
    code, out, _ = run(capsys, "solve-trace", "--family", "B", "--rank", "1", "--y", "2 t", "--json")
    table = json.loads(out)
    assert RatFn.from_json(table[1]["value"]).format() == "2t"
    code, out, _ = run(capsys, "homfly", "--braid", "1 1 1", "--strands", "2", "--json")
    assert json.loads(out)["terms"] == [[2, -2, 0], [1, -2, 2], [-1, -4, 0]]


def test_deterministic_output(capsys):
    argv = ("kl", "--family", "B", "--rank", "2")
    first = run(capsys, *argv)
    assert first == run(capsys, *argv)
    assert "P[e ; 1 2 1 2] = 1" in first[1]


def test_hochschild_positivity_flag(capsys):
    code, out, _ = run(capsys, "hochschild", "--family", "B", "--rank", "2", "--w", "1 2 1", "--cutoff", "10")
    assert code == 0 and out.endswith("positivity to v^10: pass")


def test_gomi_command(capsys):
    code, out, _ = run(capsys, "gomi", "--family", "A", "--rank", "2", "--element", "C' 1 2")
    assert (code, out) == (0, run(capsys, "trace", "--family", "A", "--rank", "2", "--element", "C' 1 2")[1])
    assert run(capsys, "gomi", "--family", "B", "--rank", "2", "--element", "1")[0] == 0
    assert run(capsys, "gomi", "--family", "D", "--rank", "3", "--element", "1")[0] == 2


def test_exit_codes(capsys, monkeypatch):
    monkeypatch.delenv("MTK_ENABLE_D4", raising=False)
    assert run(capsys, "trace", "--family", "A", "--rank", "1", "--element", "s3")[0] == 1
    assert run(capsys, "trace", "--family", "A", "--rank", "9", "--element", "1")[0] == 1
    assert run(capsys, "homfly", "--braid", "3", "--strands", "2")[0] == 1
    assert run(capsys, "solve-trace", "--family", "D", "--rank", "4")[0] == 2
    assert run(capsys, "trace", "--family", "A", "--rank", "1", "--element", "1", "--y", "y")[0] == 1
    with pytest.raises(SystemExit) as info:
        main(["trace", "--family", "E"])
    assert info.value.code == 1


def test_kl_cache_via_environment(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("MTK_CACHE_DIR", str(tmp_path))
    code, out, _ = run(capsys, "kl", "--family", "A", "--rank", "3", "--w", "2 1 3 2")
    assert code == 0 and "P[e ; 2 1 3 2] = 1 + q" in out
    path = tmp_path / "kl-A3.txt"
    assert path.exists()
    assert run(capsys, "kl", "--family", "A", "--rank", "3", "--w", "2 1 3 2")[1] == out
    path.write_text("garbage\n")
    assert run(capsys, "kl", "--family", "A", "--rank", "3")[0] == 2
