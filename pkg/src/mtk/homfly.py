"""
HOMFLYPT invariants of braid closures from the type A Markov trace.

For an n-strand braid b with writhe e,

    I(b) = a^-(e + n - 1) v^(n - 1) Tr(b) |_{t = -a^2 v^-1}

which is invariant under both Markov moves and is 1 on the unknot.  Values
are kept as fractions in (v, a) and converted to (a, z), z = v - v^-1.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .coxeter import CartanType
from .hecke import eval_braid
from .ring import DELTA, ONE, ONE_MINUS_Q, ZERO, BiLaurent, InexactDivision, RatFn, format_terms
from .trace import ocneanu_table

MAX_STRANDS = 5


class BraidError(ValueError):
    pass


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...]

    def __post_init__(self):
        if self.strands < 1:
            raise BraidError("a braid needs at least one strand")
        for x in self.letters:
            if x == 0:
                raise BraidError("braid generator 0 is not allowed")
            if abs(x) >= self.strands:
                raise BraidError(f"generator {x} out of range for {self.strands} strands")

    @property
    def writhe(self) -> int:
        return sum(1 if x > 0 else -1 for x in self.letters)

    def permutation(self) -> tuple[int, ...]:
        p = list(range(self.strands))
        for x in self.letters:
            i = abs(x) - 1
            p[i], p[i + 1] = p[i + 1], p[i]
        return tuple(p)

    def components(self) -> int:
        p, seen, count = self.permutation(), set(), 0
        for i in range(self.strands):
            if i not in seen:
                count += 1
                while i not in seen:
                    seen.add(i)
                    i = p[i]
        return count

    def __str__(self) -> str:
        return " ".join(map(str, self.letters))


def parse_braid(text: str, strands: int) -> BraidWord:
    letters = []
    for tok in text.replace(",", " ").split():
        try:
            x = int(tok)
        except ValueError:
            raise BraidError(f"bad braid token {tok!r}") from None
        if x == 0:
            raise BraidError(f"bad braid token {tok!r}: generator 0")
        if abs(x) >= strands:
            raise BraidError(f"bad braid token {tok!r}: generator out of range for {strands} strands")
        letters.append(x)
    return BraidWord(strands, tuple(letters))


def _t_to_a(p: BiLaurent) -> BiLaurent:
    """Substitute t = -a^2 v^-1; the result lives in (v, a)."""
    out: dict = {}
    for (ev, et), c in p.items():
        key = (ev - et, 2 * et)
        out[key] = out.get(key, 0) + (-c if et % 2 else c)
    return BiLaurent({k: c for k, c in out.items() if c})


@dataclass
class LinkPolynomial:
    """num / (1 - v^2)^k with num in Z[v^+-1, a^+-1]."""

    num: BiLaurent
    power: int

    def ratfn(self) -> RatFn:
        return RatFn(self.num, ONE_MINUS_Q ** self.power)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinkPolynomial):
            return NotImplemented
        return self.ratfn() == other.ratfn()

    __hash__ = None

    def to_az(self) -> dict[tuple[int, int], int]:
        """{(a-exponent, z-exponent): coefficient}; raises ValueError if not a polynomial in z^+-1."""
        # (1 - v^2) = -v z, so num / (1 - v^2)^k = (-1)^k v^-k num / z^k
        shifted = self.num.shift(ev=-self.power)
        sign = -1 if self.power % 2 else 1
        out: dict[tuple[int, int], int] = {}
        by_a: dict[int, dict[int, int]] = {}
        for (ev, ea), c in shifted.items():
            by_a.setdefault(ea, {})[ev] = sign * c
        for ea, poly in by_a.items():
            poly = {k: c for k, c in poly.items() if c}
            while poly:
                d = max(poly)
                c = poly[d]
                if d < 0:
                    raise ValueError("value is not a polynomial in z = v - v^-1")
                out[(ea, d - self.power)] = c
                # subtract c z^d = c sum_k binom(d, k) (-1)^k v^(d - 2k)
                b = 1
                for k in range(d + 1):
                    e = d - 2 * k
                    poly[e] = poly.get(e, 0) - c * b * (-1) ** k
                    if not poly[e]:
                        del poly[e]
                    b = b * (d - k) // (k + 1)
        return {k: c for k, c in out.items() if c}

    def is_laurent_az(self) -> bool:
        try:
            return all(ez >= 0 for _, ez in self.to_az())
        except ValueError:
            return False

    def format_az(self) -> str:
        terms = self.to_az()
        return format_terms(terms, names=("a", "z"), order=lambda k: (-k[0], k[1]))

    def format_va(self) -> str:
        r = self.ratfn().reduced()
        if r.den == ONE:
            return r.num.format(names=("v", "a"))
        return f"({r.num.format(names=('v', 'a'))})/({r.den.format(names=('v', 'a'))})"


def trace_of_braid(b: BraidWord) -> RatFn:
    """Tr(b) in (v, t) on H(A_{n-1})."""
    if b.strands > MAX_STRANDS:
        raise BraidError(f"{b.strands} strands exceeds the budget of {MAX_STRANDS}")
    n = b.strands - 1
    table = ocneanu_table(n)
    return table.trace(eval_braid(CartanType("A", n), b.letters))


def homfly_invariant(b: BraidWord) -> LinkPolynomial:
    if b.strands > MAX_STRANDS:
        raise BraidError(f"{b.strands} strands exceeds the budget of {MAX_STRANDS}")
    n = b.strands - 1
    table = ocneanu_table(n)
    num = table.numerator(eval_braid(CartanType("A", n), b.letters))
    pref = BiLaurent.monomial(1, n, -(b.writhe + n))
    return LinkPolynomial(_t_to_a(num) * pref, n)


def _a(e: int) -> BiLaurent:
    return BiLaurent.monomial(1, 0, e)


def skein_check(b: BraidWord, position: int, generator: int) -> bool:
    """a I(L+) - a^-1 I(L-) = z I(L0), L+- inserting sigma^(+-1) at the position."""
    if not 0 <= position <= len(b.letters):
        raise BraidError(f"position {position} outside 0..{len(b.letters)}")
    i = abs(generator)
    word = list(b.letters)
    plus = BraidWord(b.strands, tuple(word[:position] + [i] + word[position:]))
    minus = BraidWord(b.strands, tuple(word[:position] + [-i] + word[position:]))
    ip, im, i0 = homfly_invariant(plus), homfly_invariant(minus), homfly_invariant(b)
    left = RatFn(_a(1)) * ip.ratfn() - RatFn(_a(-1)) * im.ratfn()
    return left == RatFn(DELTA) * i0.ratfn()


def random_braid(rng: random.Random, max_strands: int = 4, max_length: int = 8) -> BraidWord:
    n = rng.randint(2, max_strands)
    length = rng.randint(0, max_length)
    letters = tuple(rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(length))
    return BraidWord(n, letters)


@dataclass
class MarkovReport:
    passed: bool = True
    checks: int = 0
    failures: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.passed

    def record(self, ok: bool, what: str) -> None:
        self.checks += 1
        if not ok:
            self.passed = False
            self.failures.append(what)


def _inverse_word(word: Sequence[int]) -> tuple[int, ...]:
    return tuple(-x for x in reversed(word))


def markov_invariance_suite(
    b: BraidWord, trials: int = 3, rng: Optional[random.Random] = None
) -> MarkovReport:
    """Conjugation and +-stabilization leave I unchanged; failures carry witness words."""
    rng = rng or random.Random(0)
    report = MarkovReport()
    base = homfly_invariant(b)
    n = b.strands
    for _ in range(trials):
        if n > 1:
            alpha = tuple(rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(rng.randint(1, 3)))
            conj = BraidWord(n, alpha + b.letters + _inverse_word(alpha))
            report.record(homfly_invariant(conj) == base, f"conjugate by [{' '.join(map(str, alpha))}]: {conj}")
            # I(alpha beta) = I(beta alpha)
            k = rng.randint(0, len(b.letters))
            rot = BraidWord(n, b.letters[k:] + b.letters[:k])
            report.record(homfly_invariant(rot) == base, f"rotation by {k}: {rot}")
    if n < MAX_STRANDS:
        for sign in (1, -1):
            st = BraidWord(n + 1, b.letters + (sign * n,))
            report.record(homfly_invariant(st) == base, f"stabilization: {st} on {n + 1} strands")
    return report
