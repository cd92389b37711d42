"""
Element expressions for the command line.

    expr   := term (('+' | '-') term)*
    term   := [INT '*'] factor (['*'] factor)*
    factor := GEN ['^-1'] | "C'" GEN* | '[' SIGNED* ']' | 'e' | '(' expr ')'
    GEN    := INT | 's' INT

A run of generators is a product of sigma_s, so "1 2 1" is the standard basis
element of s1 s2 s1.  "C' 1 2" is the KL basis element of s1 s2 and
"[1 -2 1]" a braid word (negative letters are inverses).
"""

from __future__ import annotations

import re

from .coxeter import CartanType, weyl_group
from .hecke import HeckeElement, eval_braid, kl_basis, kl_table
from .ring import BiLaurent

_TOKEN = re.compile(r"\s*(C'|s\d+|-?\d+|\^|\[|\]|\(|\)|\+|-|\*|e\b)")


class ExprError(ValueError):
    pass


def _tokenize(text: str) -> list[str]:
    out, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExprError(f"unexpected input at position {pos}: {text[pos:pos + 10]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


def _gen(tok: str):
    if tok.startswith("s") and tok[1:].isdigit():
        return int(tok[1:])
    if tok.isdigit():
        return int(tok)
    return None


def parse_element(text: str, ct: CartanType) -> HeckeElement:
    toks = _tokenize(text)
    g = weyl_group(ct)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take():
        nonlocal pos
        tok = peek()
        if tok is None:
            raise ExprError("unexpected end of expression")
        pos += 1
        return tok

    def generator(s: int) -> int:
        if not 1 <= s <= ct.rank:
            raise ExprError(f"generator {s} out of range for {ct}")
        return s

    def expr() -> HeckeElement:
        sign = 1
        if peek() in ("+", "-"):
            sign = -1 if take() == "-" else 1
        acc = term().scale(sign)
        while peek() in ("+", "-"):
            op = take()
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term() -> HeckeElement:
        coef = 1
        tok = peek()
        if tok is not None and tok.lstrip("-").isdigit() and pos + 1 < len(toks) and toks[pos + 1] == "*":
            coef = int(take())
            take()
        acc = factor()
        while True:
            tok = peek()
            if tok == "*":
                take()
                acc = acc * factor()
            elif tok is not None and tok not in ("+", "-", ")", "]"):
                acc = acc * factor()
            else:
                break
        return acc.scale(BiLaurent.const(coef)) if coef != 1 else acc

    def factor() -> HeckeElement:
        tok = take()
        if tok == "(":
            inner = expr()
            if take() != ")":
                raise ExprError("expected ')'")
            return inner
        if tok == "e":
            return HeckeElement.one(ct)
        if tok == "C'":
            word = []
            while peek() is not None and _gen(peek()) is not None:
                word.append(generator(_gen(take())))
            if peek() == "e" and not word:
                take()
            w = g.from_word(word)
            if g.length[w] != len(word):
                raise ExprError(f"C' needs a reduced word, got {' '.join(map(str, word))}")
            return kl_basis(kl_table(ct), w)
        if tok == "[":
            word = []
            while peek() != "]":
                t = take()
                if not t.lstrip("-").isdigit() or t in ("0", "-0"):
                    raise ExprError(f"bad braid letter {t!r}")
                generator(abs(int(t)))
                word.append(int(t))
            take()
            return eval_braid(ct, word)
        s = _gen(tok)
        if s is None:
            raise ExprError(f"unexpected token {tok!r}")
        s = generator(s)
        if peek() == "^":
            take()
            if take() != "-1":
                raise ExprError("only the exponent -1 is supported")
            return eval_braid(ct, [-s])
        return HeckeElement.basis(ct, [s])

    if not toks:
        raise ExprError("empty expression")
    result = expr()
    if pos != len(toks):
        raise ExprError(f"unexpected token {toks[pos]!r}")
    return result
