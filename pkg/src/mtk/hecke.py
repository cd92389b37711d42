"""
Iwahori-Hecke algebras in the standard basis and the Kazhdan-Lusztig basis.

Normalization: sigma_s^2 = 1 + (v - v^-1) sigma_s, i.e. (sigma_s - v)(sigma_s + v^-1) = 0.
With T_w = v^l(w) sigma_w this is the usual T_s^2 = (q-1) T_s + q, and

    C'_w = sum_{x <= w} v^(l(x) - l(w)) P_{x,w}(q) sigma_x,   C'_s = sigma_s + v^-1.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .coxeter import CartanType, WeylElement, WeylGroup, weyl_group
from .ring import DELTA, ONE, VINV, ZERO, BiLaurent, format_terms

Coeffs = dict[int, BiLaurent]


def _add_into(out: Coeffs, i: int, c: BiLaurent) -> None:
    s = out.get(i)
    s = c if s is None else s + c
    if s:
        out[i] = s
    else:
        out.pop(i, None)


def rmul_gen(g: WeylGroup, coeffs: Mapping[int, BiLaurent], s: int) -> Coeffs:
    """coeffs * sigma_s."""
    out: Coeffs = {}
    rm, ln = g.rmul, g.length
    for i, c in coeffs.items():
        j = rm[i][s - 1]
        _add_into(out, j, c)
        if ln[j] < ln[i]:
            _add_into(out, i, DELTA * c)
    return out


def lmul_gen(g: WeylGroup, coeffs: Mapping[int, BiLaurent], s: int) -> Coeffs:
    """sigma_s * coeffs."""
    out: Coeffs = {}
    lm, ln = g.lmul, g.length
    for i, c in coeffs.items():
        j = lm[i][s - 1]
        _add_into(out, j, c)
        if ln[j] < ln[i]:
            _add_into(out, i, DELTA * c)
    return out


class HeckeElement:
    """A finite sum of c_w sigma_w with c_w in Z[v^+-1, t^+-1]."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group: WeylGroup, coeffs: Mapping[int, BiLaurent] | None = None):
        self.group = group
        self.coeffs: Coeffs = {i: c for i, c in (coeffs or {}).items() if c}

    @property
    def ctype(self) -> CartanType:
        return self.group.ctype

    @classmethod
    def basis(cls, ct: CartanType, w: "WeylElement | int | Sequence[int]") -> "HeckeElement":
        g = weyl_group(ct)
        if isinstance(w, WeylElement):
            i = w.index
        elif isinstance(w, int):
            i = w
        else:
            i = g.from_word(w)
        return cls(g, {i: ONE})

    @classmethod
    def one(cls, ct: CartanType) -> "HeckeElement":
        return cls(weyl_group(ct), {0: ONE})

    @classmethod
    def zero(cls, ct: CartanType) -> "HeckeElement":
        return cls(weyl_group(ct), {})

    @property
    def terms(self) -> dict[WeylElement, BiLaurent]:
        return {self.group.element(i): c for i, c in sorted(self.coeffs.items())}

    def coeff(self, w: "WeylElement | int") -> BiLaurent:
        i = w.index if isinstance(w, WeylElement) else w
        return self.coeffs.get(i, ZERO)

    def _check(self, other: "HeckeElement") -> None:
        if other.group.ctype != self.group.ctype:
            raise TypeError(f"Hecke algebras differ: {self.ctype} vs {other.ctype}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.group.ctype == other.group.ctype and self.coeffs == other.coeffs

    __hash__ = None

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        self._check(other)
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            _add_into(out, i, c)
        return HeckeElement(self.group, out)

    def __neg__(self) -> "HeckeElement":
        return HeckeElement(self.group, {i: -c for i, c in self.coeffs.items()})

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + (-other)

    def scale(self, c: "BiLaurent | int") -> "HeckeElement":
        c = BiLaurent.coerce(c)
        return HeckeElement(self.group, {i: x * c for i, x in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, (int, BiLaurent)):
            return self.scale(other)
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return mul_std(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, BiLaurent)):
            return self.scale(other)
        return NotImplemented

    def times_gen(self, s: int) -> "HeckeElement":
        return HeckeElement(self.group, rmul_gen(self.group, self.coeffs, s))

    def gen_times(self, s: int) -> "HeckeElement":
        return HeckeElement(self.group, lmul_gen(self.group, self.coeffs, s))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in sorted(self.coeffs.items()):
            word = self.group.reduced_word(i)
            basis = "s[" + " ".join(map(str, word)) + "]" if word else "1"
            parts.append(f"({c})*{basis}" if basis != "1" else f"({c})")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"HeckeElement[{self.ctype}]({self})"


def mul_std(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    """Product in the standard basis: sum over x of b_x * (a * sigma_x)."""
    a._check(b)
    g = a.group
    memo: dict[int, Coeffs] = {0: a.coeffs}

    def a_times(x: int) -> Coeffs:
        if x not in memo:
            word = g.reduced_word(x)
            prefix = g.from_word(word[:-1])
            memo[x] = rmul_gen(g, a_times(prefix), word[-1])
        return memo[x]

    out: Coeffs = {}
    for x in sorted(b.coeffs, key=lambda i: g.length[i]):
        c = b.coeffs[x]
        for i, d in a_times(x).items():
            _add_into(out, i, d * c)
    return HeckeElement(g, out)


def eval_braid(ct: CartanType, word: Iterable[int]) -> HeckeElement:
    """Image of a braid word (signed generator indices) in H(ct)."""
    g = weyl_group(ct)
    coeffs: Coeffs = {0: ONE}
    for letter in word:
        s = abs(letter)
        if letter == 0 or s > g.rank:
            raise ValueError(f"braid generator {letter} out of range for {ct}")
        prod = rmul_gen(g, coeffs, s)
        if letter < 0:
            # sigma^-1 = sigma - (v - v^-1)
            for i, c in coeffs.items():
                _add_into(prod, i, -(DELTA * c))
        coeffs = prod
    return HeckeElement(g, coeffs)


# --- Kazhdan-Lusztig polynomials ----------------------------------------------

Poly = tuple  # coefficients of q^0, q^1, ...

CACHE_VERSION = "kl-cache v1"


class CacheError(ValueError):
    """A KL cache file failed validation."""


class KLTable:
    """Memoized KL polynomials P_{x,w} and KL basis elements C'_w of one group.

    Built by the classical recursion C'_s C'_w' = C'_{sw'} + sum mu(z,w') C'_z over
    z < w' with sz < z, where s is the first letter of the canonical reduced word.
    Not thread-safe while populating; read-only use after fill() is safe.
    """

    def __init__(self, ct: CartanType):
        self.ctype = ct
        self.group = weyl_group(ct)
        self._cprime: dict[int, Coeffs] = {0: {0: ONE}}
        self.polys: dict[tuple[int, int], Poly] = {(0, 0): (1,)}
        self.dirty = False

    def cprime_coeffs(self, w: int) -> Coeffs:
        if w in self._cprime:
            return self._cprime[w]
        g = self.group
        s = g.reduced_word(w)[0]
        wp = g.lmul[w][s - 1]
        base = self.cprime_coeffs(wp)
        prod = lmul_gen(g, base, s)
        for i, c in base.items():
            _add_into(prod, i, VINV * c)
        lw = g.length[wp]
        for z in sorted(base, key=lambda i: -g.length[i]):
            if z == wp or not g.is_left_descent(z, s):
                continue
            d = lw - g.length[z]
            if d % 2 == 0:
                continue
            m = self.mu(z, wp)
            if m:
                for i, c in self.cprime_coeffs(z).items():
                    _add_into(prod, i, -(c * m))
        lw_new = g.length[w]
        for x, c in prod.items():
            self.polys[(x, w)] = _to_q_poly(c.shift(lw_new - g.length[x]), x, w)
        self._cprime[w] = prod
        self.dirty = True
        return prod

    def poly(self, x: int, w: int) -> Poly:
        self.cprime_coeffs(w)
        return self.polys.get((x, w), ())

    def mu(self, x: int, w: int) -> int:
        d = self.group.length[w] - self.group.length[x]
        if d <= 0 or d % 2 == 0:
            return 0
        p = self.poly(x, w)
        k = (d - 1) // 2
        return p[k] if k < len(p) else 0

    def fill(self) -> "KLTable":
        for w in range(len(self.group)):
            self.cprime_coeffs(w)
        return self

    # --- persistence ---------------------------------------------------

    def _word(self, i: int) -> str:
        w = self.group.reduced_word(i)
        return " ".join(map(str, w)) if w else "e"

    def dumps(self) -> str:
        self.fill()
        lines = [f"{CACHE_VERSION} {self.ctype.family} {self.ctype.rank}"]
        for (x, w) in sorted(self.polys, key=lambda p: (p[1], p[0])):
            coeffs = " ".join(map(str, self.polys[(x, w)]))
            lines.append(f"{self._word(x)} | {self._word(w)} | {coeffs}")
        return "\n".join(lines) + "\n"

    def save(self, path: "str | Path") -> None:
        Path(path).write_text(self.dumps(), encoding="utf-8")
        self.dirty = False

    @classmethod
    def loads(cls, text: str, ct: CartanType | None = None) -> "KLTable":
        lines = text.splitlines()
        if not lines:
            raise CacheError("empty KL cache")
        head = lines[0].split()
        if len(head) != 4 or " ".join(head[:2]) != CACHE_VERSION:
            raise CacheError(f"bad KL cache header {lines[0]!r}")
        try:
            file_ct = CartanType(head[2], int(head[3]))
        except ValueError as exc:
            raise CacheError(f"bad KL cache header {lines[0]!r}: {exc}") from None
        if ct is not None and ct != file_ct:
            raise CacheError(f"cache is for {file_ct}, expected {ct}")
        table = cls(file_ct)
        g = table.group
        polys: dict[tuple[int, int], Poly] = {}
        for lineno, line in enumerate(lines[1:], start=2):
            fields = [f.strip() for f in line.split("|")]
            if len(fields) != 3:
                raise CacheError(f"line {lineno}: expected 3 fields")
            try:
                x = g.parse(fields[0])
                w = g.parse(fields[1])
                coeffs = tuple(int(c) for c in fields[2].split())
            except ValueError as exc:
                raise CacheError(f"line {lineno}: {exc}") from None
            if table._word(x) != fields[0] or table._word(w) != fields[1]:
                raise CacheError(f"line {lineno}: words are not canonical reduced words")
            if (x, w) in polys:
                raise CacheError(f"line {lineno}: duplicate pair")
            if not coeffs or coeffs[-1] == 0:
                raise CacheError(f"line {lineno}: polynomial not in normal form")
            if not g.bruhat_leq(x, w):
                raise CacheError(f"line {lineno}: x is not below w in Bruhat order")
            d = g.length[w] - g.length[x]
            if x == w and coeffs != (1,):
                raise CacheError(f"line {lineno}: P_ww must be 1")
            if x != w and 2 * (len(coeffs) - 1) > d - 1:
                raise CacheError(f"line {lineno}: degree bound violated")
            if any(c < 0 for c in coeffs):
                raise CacheError(f"line {lineno}: negative coefficient")
            if coeffs[0] != 1:
                raise CacheError(f"line {lineno}: constant term must be 1")
            polys[(x, w)] = coeffs
        for w in range(len(g)):
            for x in g.bruhat_interval(w):
                if (x, w) not in polys:
                    raise CacheError(f"missing pair ({table._word(x)}, {table._word(w)})")
        table.polys = polys
        for w in range(len(g)):
            table._cprime[w] = {
                x: _from_q_poly(polys[(x, w)]).shift(g.length[x] - g.length[w])
                for x in g.bruhat_interval(w)
            }
        if table.dumps() != text:
            raise CacheError("cache does not round-trip (ordering or formatting differs)")
        table.dirty = False
        return table

    @classmethod
    def load(cls, path: "str | Path", ct: CartanType | None = None) -> "KLTable":
        return cls.loads(Path(path).read_text(encoding="utf-8"), ct)

    def mismatches(self, limit: int = 5) -> list[str]:
        """Pairs whose stored polynomial differs from a fresh computation."""
        fresh = KLTable(self.ctype).fill()
        bad = []
        for key, p in sorted(fresh.polys.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            if self.polys.get(key) != p:
                x, w = key
                bad.append(f"P[{self._word(x)} ; {self._word(w)}]: stored {self.polys.get(key)}, computed {p}")
                if len(bad) >= limit:
                    break
        return bad


def _to_q_poly(c: BiLaurent, x: int, w: int) -> Poly:
    out: dict[int, int] = {}
    for (ev, et), k in c.items():
        if et != 0 or ev < 0 or ev % 2:
            raise ArithmeticError(f"coefficient of C'_w at ({x},{w}) is not v^l * P(q): {c}")
        out[ev // 2] = k
    if not out:
        return ()
    return tuple(out.get(i, 0) for i in range(max(out) + 1))


def _from_q_poly(p: Poly) -> BiLaurent:
    return BiLaurent({(2 * i, 0): c for i, c in enumerate(p) if c})


def format_q_poly(p: Poly) -> str:
    return format_terms({(i, 0): c for i, c in enumerate(p) if c}, names=("q", "_"))


_TABLES: dict[CartanType, KLTable] = {}


def kl_table(ct: CartanType) -> KLTable:
    """Process-wide memoized table per type."""
    if ct not in _TABLES:
        _TABLES[ct] = KLTable(ct)
    return _TABLES[ct]


def install_kl_table(table: KLTable) -> None:
    _TABLES[table.ctype] = table


def kl_polynomial(table: KLTable, x: WeylElement, w: WeylElement) -> Poly:
    return table.poly(x.index, w.index)


def kl_basis(table: KLTable, w: "WeylElement | int") -> HeckeElement:
    i = w.index if isinstance(w, WeylElement) else w
    return HeckeElement(table.group, table.cprime_coeffs(i))
