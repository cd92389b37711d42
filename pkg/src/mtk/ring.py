"""
Exact arithmetic in Z[v, v^-1, t, t^-1] and its fraction field.

The Hecke parameter is written v, so q = v^2 and every exponent is an integer.
Polynomials are stored sparsely as {(e_v, e_t): coeff}; rational functions are
pairs (num, den) compared by cross-multiplication and only reduced on request.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, Mapping, Union


class InexactDivision(ArithmeticError):
    """Raised when a polynomial quotient does not exist in the Laurent ring."""


class BiLaurent:
    """Immutable Laurent polynomial in v and t with integer coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        if terms:
            self._terms = {k: c for k, c in terms.items() if c}
        else:
            self._terms = {}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "BiLaurent":
        # terms must already be free of zeros
        obj = object.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: int) -> "BiLaurent":
        return cls._raw({(0, 0): c} if c else {})

    @classmethod
    def monomial(cls, c: int = 1, ev: int = 0, et: int = 0) -> "BiLaurent":
        return cls._raw({(ev, et): c} if c else {})

    @classmethod
    def coerce(cls, x) -> "BiLaurent":
        if isinstance(x, BiLaurent):
            return x
        if isinstance(x, int):
            return cls.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to BiLaurent")

    # --- inspection -----------------------------------------------------

    @property
    def terms(self) -> dict[tuple[int, int], int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[tuple[int, int], int]]:
        return iter(sorted(self._terms.items()))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_unit(self) -> bool:
        """Units of the Laurent ring are the monomials with coefficient +-1."""
        if len(self._terms) != 1:
            return False
        (c,) = self._terms.values()
        return c == 1 or c == -1

    def is_t_free(self) -> bool:
        return all(et == 0 for _, et in self._terms)

    def v_range(self) -> tuple[int, int]:
        evs = [ev for ev, _ in self._terms]
        return min(evs), max(evs)

    def t_range(self) -> tuple[int, int]:
        ets = [et for _, et in self._terms]
        return min(ets), max(ets)

    def coeff(self, ev: int, et: int = 0) -> int:
        return self._terms.get((ev, et), 0)

    def content(self) -> int:
        g = 0
        for c in self._terms.values():
            g = gcd(g, c)
        return g

    def by_v(self) -> dict[int, dict[int, int]]:
        """Group terms as {e_v: {e_t: coeff}}."""
        out: dict[int, dict[int, int]] = {}
        for (ev, et), c in self._terms.items():
            out.setdefault(ev, {})[et] = c
        return out

    # --- ring operations --------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = BiLaurent.const(other)
        if isinstance(other, BiLaurent):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __neg__(self) -> "BiLaurent":
        return BiLaurent._raw({k: -c for k, c in self._terms.items()})

    def __add__(self, other) -> "BiLaurent":
        if isinstance(other, int):
            other = BiLaurent.const(other)
        elif not isinstance(other, BiLaurent):
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return BiLaurent._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> "BiLaurent":
        if isinstance(other, int):
            other = BiLaurent.const(other)
        elif not isinstance(other, BiLaurent):
            return NotImplemented
        if not other._terms:
            return self
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, 0) - c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return BiLaurent._raw(out)

    def __rsub__(self, other) -> "BiLaurent":
        return BiLaurent.coerce(other) - self

    def __mul__(self, other) -> "BiLaurent":
        if isinstance(other, int):
            if not other:
                return ZERO
            return BiLaurent._raw({k: c * other for k, c in self._terms.items()})
        if not isinstance(other, BiLaurent):
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            ((bv, bt), bc), = b.items()
            return BiLaurent._raw({(ev + bv, et + bt): c * bc for (ev, et), c in a.items()})
        out: dict[tuple[int, int], int] = {}
        get = out.get
        for (bv, bt), bc in b.items():
            for (ev, et), c in a.items():
                k = (ev + bv, et + bt)
                out[k] = get(k, 0) + c * bc
        return BiLaurent._raw({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BiLaurent":
        if n < 0:
            return self.monomial_inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, ev: int = 0, et: int = 0) -> "BiLaurent":
        """Multiply by v^ev t^et."""
        if not ev and not et:
            return self
        return BiLaurent._raw({(a + ev, b + et): c for (a, b), c in self._terms.items()})

    def monomial_inverse(self) -> "BiLaurent":
        if not self.is_unit():
            raise InexactDivision(f"{self} is not a unit of the Laurent ring")
        ((ev, et), c), = self._terms.items()
        return BiLaurent._raw({(-ev, -et): c})

    def bar(self) -> "BiLaurent":
        """The involution v -> v^-1 (t fixed)."""
        return BiLaurent._raw({(-ev, et): c for (ev, et), c in self._terms.items()})

    def exact_div(self, other: "BiLaurent | int") -> "BiLaurent":
        """Quotient self/other in the Laurent ring, or InexactDivision.

        Both operands are shifted to polynomials with no v or t factor, so the
        quotient (if any) is a polynomial and lex-order division is exact.
        """
        other = BiLaurent.coerce(other)
        if not other._terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self._terms:
            return ZERO
        if len(other._terms) == 1:
            ((bv, bt), bc), = other._terms.items()
            out = {}
            for (ev, et), c in self._terms.items():
                q, r = divmod(c, bc)
                if r:
                    raise InexactDivision(f"{self} is not divisible by {other}")
                out[(ev - bv, et - bt)] = q
            return BiLaurent._raw(out)
        av0 = min(ev for ev, _ in self._terms)
        at0 = min(et for _, et in self._terms)
        bv0 = min(ev for ev, _ in other._terms)
        bt0 = min(et for _, et in other._terms)
        rem = {(ev - av0, et - at0): c for (ev, et), c in self._terms.items()}
        div = {(ev - bv0, et - bt0): c for (ev, et), c in other._terms.items()}
        (lv, lt) = max(div)
        lc = div[(lv, lt)]
        quot: dict[tuple[int, int], int] = {}
        while rem:
            (rv, rt) = max(rem)
            rc = rem[(rv, rt)]
            qv, qt = rv - lv, rt - lt
            if qv < 0 or qt < 0 or rc % lc:
                raise InexactDivision(f"{self} is not divisible by {other}")
            qc = rc // lc
            quot[(qv, qt)] = qc
            for (dv, dt), dc in div.items():
                k = (dv + qv, dt + qt)
                s = rem.get(k, 0) - qc * dc
                if s:
                    rem[k] = s
                else:
                    rem.pop(k, None)
        return BiLaurent._raw(quot).shift(av0 - bv0, at0 - bt0)

    def divides(self, other: "BiLaurent") -> bool:
        try:
            other.exact_div(self)
        except InexactDivision:
            return False
        return True

    # --- evaluation -------------------------------------------------------

    def evaluate(self, v, t):
        """Evaluate at numbers (Fractions recommended for exactness)."""
        total = 0
        for (ev, et), c in self._terms.items():
            total += c * Fraction(v) ** ev * Fraction(t) ** et
        return total

    def eval_mod(self, v: int, t: int, p: int) -> int:
        vi = pow(v, -1, p)
        ti = pow(t, -1, p)
        total = 0
        for (ev, et), c in self._terms.items():
            x = pow(v, ev, p) if ev >= 0 else pow(vi, -ev, p)
            y = pow(t, et, p) if et >= 0 else pow(ti, -et, p)
            total += c * x * y
        return total % p

    def subs_t(self, t_value: "BiLaurent") -> "BiLaurent":
        """Substitute t -> t_value (a BiLaurent; its t slot is kept)."""
        out = ZERO
        for (ev, et), c in self._terms.items():
            out = out + (t_value ** et).shift(ev) * c
        return out

    # --- serialization ----------------------------------------------------

    def to_json(self) -> list[list[int]]:
        return [[c, ev, et] for (ev, et), c in sorted(self._terms.items())]

    @classmethod
    def from_json(cls, data: Iterable) -> "BiLaurent":
        terms: dict[tuple[int, int], int] = {}
        for entry in data:
            c, ev, et = (int(x) for x in entry)
            if (ev, et) in terms:
                raise ValueError(f"duplicate monomial v^{ev} t^{et}")
            if c == 0:
                raise ValueError("zero coefficient in serialized polynomial")
            terms[(ev, et)] = c
        return cls(terms)

    def format(self, names: tuple[str, str] = ("v", "t"), order=None) -> str:
        return format_terms(self._terms, names, order)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"BiLaurent({self})"


ZERO = BiLaurent._raw({})
ONE = BiLaurent._raw({(0, 0): 1})
V = BiLaurent._raw({(1, 0): 1})
VINV = BiLaurent._raw({(-1, 0): 1})
T = BiLaurent._raw({(0, 1): 1})
Q = BiLaurent._raw({(2, 0): 1})
ONE_MINUS_Q = BiLaurent._raw({(0, 0): 1, (2, 0): -1})
# v - v^-1, the coefficient in the quadratic relation
DELTA = BiLaurent._raw({(1, 0): 1, (-1, 0): -1})


# pass as the first variable name to print v^e as q^(e/2)
HUMAN_NAMES = ("q^1/2", "t")


def _fmt_var(name: str, e: int) -> str:
    if e == 0:
        return ""
    if name == HUMAN_NAMES[0]:
        if e % 2:
            return f"q^{e}/2"
        return "q" if e == 2 else f"q^{e // 2}"
    if e == 1:
        return name
    return f"{name}^{e}"


def format_terms(terms: Mapping[tuple[int, int], int], names=("v", "t"), order=None) -> str:
    """Render {(e1, e2): c} as e.g. '2v^-1 t - 3'.  Default order is ascending."""
    if not terms:
        return "0"
    keys = sorted(terms, key=order) if order else sorted(terms)
    parts = []
    for i, k in enumerate(keys):
        c = terms[k]
        mono = " ".join(s for s in (_fmt_var(names[0], k[0]), _fmt_var(names[1], k[1])) if s)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}{mono}"
        if i == 0:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(parts)


# --- univariate helpers (v only) -------------------------------------------

def _upoly_from(p: BiLaurent) -> tuple[int, list[int]]:
    """t-free Laurent poly -> (shift, dense coefficient list low to high)."""
    lo, hi = p.v_range()
    coeffs = [0] * (hi - lo + 1)
    for (ev, _), c in p._terms.items():
        coeffs[ev - lo] = c
    return lo, coeffs


def _upoly_to(coeffs: list, shift: int = 0, et: int = 0) -> BiLaurent:
    return BiLaurent({(i + shift, et): int(c) for i, c in enumerate(coeffs) if c})


def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _upoly_gcd(a: list[int], b: list[int]) -> list[int]:
    """Primitive gcd of two integer polynomials (dense, low to high)."""
    x = _trim([Fraction(c) for c in a])
    y = _trim([Fraction(c) for c in b])
    while y:
        r = list(x)
        while len(r) >= len(y) and r:
            f = r[-1] / y[-1]
            off = len(r) - len(y)
            for i, c in enumerate(y):
                r[off + i] -= f * c
            r.pop()
            _trim(r)
        x, y = y, r
    if not x:
        return [0]
    den = 1
    for c in x:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in x]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


Scalar = Union[int, BiLaurent, "RatFn"]


class RatFn:
    """A fraction num/den of BiLaurents.  Not kept in lowest terms."""

    __slots__ = ("num", "den")

    def __init__(self, num: "BiLaurent | int" = 0, den: "BiLaurent | int" = 1):
        num = BiLaurent.coerce(num)
        den = BiLaurent.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self.num = num
        self.den = den

    @classmethod
    def coerce(cls, x) -> "RatFn":
        if isinstance(x, RatFn):
            return x
        return cls(BiLaurent.coerce(x))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, BiLaurent)):
            other = RatFn(other)
        if not isinstance(other, RatFn):
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        return self.num * other.den == other.num * self.den

    __hash__ = None  # equal values need not share a representation

    def __neg__(self) -> "RatFn":
        return RatFn(-self.num, self.den)

    def __add__(self, other) -> "RatFn":
        try:
            o = RatFn.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == o.den:
            return RatFn(self.num + o.num, self.den)
        if o.den == ONE:
            return RatFn(self.num + o.num * self.den, self.den)
        if self.den == ONE:
            return RatFn(self.num * o.den + o.num, o.den)
        return RatFn(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other) -> "RatFn":
        try:
            o = RatFn.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "RatFn":
        return RatFn.coerce(other) - self

    def __mul__(self, other) -> "RatFn":
        try:
            o = RatFn.coerce(other)
        except TypeError:
            return NotImplemented
        return RatFn(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFn":
        try:
            o = RatFn.coerce(other)
        except TypeError:
            return NotImplemented
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFn(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other) -> "RatFn":
        return RatFn.coerce(other) / self

    def __pow__(self, n: int) -> "RatFn":
        if n < 0:
            return RatFn(self.den, self.num) ** (-n) if self.num else 1 / self
        return RatFn(self.num ** n, self.den ** n)

    def reduced(self) -> "RatFn":
        """Canonical form when the denominator is t-free.

        Cancels the v-polynomial gcd and the integer content, then normalizes the
        denominator to lowest v-exponent 0 with a positive constant term.  With t
        in the denominator only the monomial/content normalization is applied.
        """
        num, den = self.num, self.den
        if num.is_zero():
            return RatFn(ZERO, ONE)
        if den.is_t_free() and len(den) > 1:
            shift, dcoeffs = _upoly_from(den)
            g = dcoeffs
            for et, part in _split_t(num).items():
                _, pc = _upoly_from(part)
                g = _upoly_gcd(g, pc)
                if len(g) == 1:
                    break
            if len(g) > 1:
                gp = _upoly_to(g)
                num = num.exact_div(gp)
                den = den.exact_div(gp)
        c = gcd(num.content(), den.content())
        lo_v = min(ev for ev, _ in den._terms)
        lo_t = min(et for _, et in den._terms)
        if den._terms[min(den._terms)] < 0:
            c = -c
        num = BiLaurent._raw({(ev - lo_v, et - lo_t): x // c for (ev, et), x in num._terms.items()})
        den = BiLaurent._raw({(ev - lo_v, et - lo_t): x // c for (ev, et), x in den._terms.items()})
        return RatFn(num, den)

    def as_laurent(self) -> BiLaurent:
        """The value as a BiLaurent, or InexactDivision if it is not one."""
        return self.num.exact_div(self.den)

    def is_laurent(self) -> bool:
        return self.den.divides(self.num)

    def evaluate(self, v, t):
        d = self.den.evaluate(v, t)
        if d == 0:
            raise ZeroDivisionError("evaluation point is a pole")
        return self.num.evaluate(v, t) / d

    def to_json(self) -> dict:
        r = self.reduced()
        return {"num": r.num.to_json(), "den": r.den.to_json()}

    @classmethod
    def from_json(cls, data: Mapping) -> "RatFn":
        return cls(BiLaurent.from_json(data["num"]), BiLaurent.from_json(data["den"]))

    def format(self, names=("v", "t")) -> str:
        r = self.reduced()
        if r.den == ONE:
            return r.num.format(names)
        n = r.num.format(names)
        if len(r.num) > 1:
            n = f"({n})"
        d = r.den.format(names)
        if len(r.den) > 1:
            d = f"({d})"
        return f"{n}/{d}"

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"RatFn({self})"


def _split_t(p: BiLaurent) -> dict[int, BiLaurent]:
    out: dict[int, dict] = {}
    for (ev, et), c in p._terms.items():
        out.setdefault(et, {})[(ev, 0)] = c
    return {et: BiLaurent._raw(d) for et, d in out.items()}


def as_ratfn(x: Scalar) -> RatFn:
    return RatFn.coerce(x)


# --- Laurent series in v ---------------------------------------------------

TPoly = tuple  # integer coefficients of t^0, t^1, ...


def _tpoly(d: Mapping[int, int]) -> TPoly:
    if not d:
        return ()
    if min(d) < 0:
        raise ValueError("negative t-exponent in series coefficient")
    out = [0] * (max(d) + 1)
    for e, c in d.items():
        out[e] = c
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class SeriesWindow:
    """Coefficients of v^lead, ..., v^cutoff of a Laurent series in v."""

    lead: int
    coeffs: tuple[TPoly, ...]
    cutoff: int

    def coefficient(self, k: int) -> TPoly:
        if k < self.lead or k > self.cutoff:
            raise IndexError(f"v^{k} is outside the window [{self.lead}, {self.cutoff}]")
        return self.coeffs[k - self.lead]

    def partial_sum(self) -> BiLaurent:
        terms = {}
        for i, tp in enumerate(self.coeffs):
            for et, c in enumerate(tp):
                if c:
                    terms[(self.lead + i, et)] = c
        return BiLaurent(terms)


def series_expand(f: "RatFn | BiLaurent", cutoff: int) -> SeriesWindow:
    """Expand f as a Laurent series in v with polynomial-in-t coefficients."""
    f = RatFn.coerce(f)
    num, den = f.num, f.den
    if num.is_zero():
        return SeriesWindow(cutoff, ((),), cutoff)
    m = den.v_range()[0]
    low = den.by_v()[m]
    if set(low) != {0}:
        lowest = BiLaurent({(m, et): c for et, c in low.items()})
        raise ValueError(
            f"denominator is not invertible as a power series in v: lowest term {lowest}"
        )
    c0 = low[0]
    num = num.shift(-m)
    den_v = {ev - m: row for ev, row in den.by_v().items()}
    num_v = num.by_v()
    lead = min(num_v)
    coeffs: list[dict[int, int]] = []
    for k in range(lead, cutoff + 1):
        acc = dict(num_v.get(k, {}))
        for j, drow in den_v.items():
            if j == 0 or k - j < lead:
                continue
            prev = coeffs[k - j - lead]
            for et1, c1 in drow.items():
                for et2, c2 in prev.items():
                    e = et1 + et2
                    acc[e] = acc.get(e, 0) - c1 * c2
        row = {}
        for e, c in acc.items():
            if c:
                qt, r = divmod(c, c0)
                if r:
                    raise ValueError("series coefficients are not integral")
                row[e] = qt
        coeffs.append(row)
    if lead > cutoff:
        return SeriesWindow(lead, (), cutoff)
    return SeriesWindow(lead, tuple(_tpoly(r) for r in coeffs), cutoff)


def parse_poly(text: str) -> BiLaurent:
    """Parse a Laurent polynomial such as '-t', 'v^2 t - 3', '2q^-1 + v t^2'.

    q is accepted as v^2.  Juxtaposition and '*' both multiply.
    """
    import re

    src = text.replace("**", "^").replace("*", " ")
    tokens = re.findall(r"\d+|[vtq]|\^-?\d+|[+-]|\(|\)|\S", src)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def expr() -> BiLaurent:
        total = ZERO
        sign = 1
        first = True
        while True:
            tok = peek()
            if tok in ("+", "-"):
                take()
                sign = -1 if tok == "-" else 1
            elif not first:
                break
            total = total + term() * sign
            first = False
            sign = 1
            if peek() not in ("+", "-"):
                break
        return total

    def term() -> BiLaurent:
        acc = ONE
        seen = False
        while True:
            tok = peek()
            if tok is None or tok in ("+", "-", ")"):
                break
            take()
            if tok.isdigit():
                acc = acc * int(tok)
            elif tok in ("v", "t", "q"):
                e = 1
                if peek() and peek().startswith("^"):
                    e = int(take()[1:])
                if tok == "v":
                    acc = acc.shift(e, 0)
                elif tok == "q":
                    acc = acc.shift(2 * e, 0)
                else:
                    acc = acc.shift(0, e)
            elif tok == "(":
                inner = expr()
                if take() != ")":
                    raise ValueError(f"unbalanced parentheses in {text!r}")
                if peek() and peek().startswith("^"):
                    inner = inner ** int(take()[1:])
                acc = acc * inner
            else:
                raise ValueError(f"unexpected token {tok!r} in polynomial {text!r}")
            seen = True
        if not seen:
            raise ValueError(f"empty term in polynomial {text!r}")
        return acc

    if not text.strip():
        raise ValueError("empty polynomial")
    result = expr()
    if pos != len(tokens):
        raise ValueError(f"trailing input in polynomial {text!r}")
    return result
