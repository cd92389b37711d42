"""
Weyl groups of types A_n, B_n and D_n as (signed) permutation groups.

Generator labels follow the Dynkin labelings used throughout the package:

* A_n: vertices 1..n left to right; s_i swaps positions i and i+1 of a
  permutation of {1..n+1}.
* B_n: vertex 1 is the short end of the double bond; s_1 negates position 1 and
  s_i (i >= 2) swaps positions i-1 and i of a signed permutation of {1..n}.
* D_n: vertices 1 and 2 form the fork attached to 3; s_1 sends positions
  (1, 2) to (-2, -1), s_2 swaps positions 1 and 2, s_i (i >= 3) swaps
  positions i-1 and i.  Elements are signed permutations with an even number
  of sign changes.

In every family the highest label is the most recently attached vertex, so
removing it gives the previous member of the tower.  A_0 stands for the empty
diagram (trivial group).

Elements are stored as one-line notation, and products compose as functions:
(u*w)(j) = u(w(j)).  Right multiplication by a generator acts on positions,
left multiplication on values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

DEFAULT_ORDER_BOUND = 10_000


class GroupTooLarge(ValueError):
    pass


@dataclass(frozen=True, order=True)
class CartanType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in ("A", "B", "D"):
            raise ValueError(f"unsupported Cartan family {self.family!r}")
        minimum = {"A": 0, "B": 1, "D": 2}[self.family]
        if self.rank < minimum:
            raise ValueError(f"{self.family}_{self.rank}: rank must be at least {minimum}")

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def generators(self) -> range:
        return range(1, self.rank + 1)

    def order(self) -> int:
        n = self.rank
        if self.family == "A":
            return math.factorial(n + 1)
        if self.family == "B":
            return 2 ** n * math.factorial(n)
        return 2 ** (n - 1) * math.factorial(n)

    def degree(self) -> int:
        """Number of points the (signed) permutations act on."""
        return self.rank + 1 if self.family == "A" else self.rank

    def coxeter_matrix(self) -> list[list[int]]:
        n = self.rank
        m = [[2] * n for _ in range(n)]
        for i in range(n):
            m[i][i] = 1
        def bond(i, j, k):
            m[i - 1][j - 1] = m[j - 1][i - 1] = k
        if self.family == "A":
            for i in range(1, n):
                bond(i, i + 1, 3)
        elif self.family == "B":
            if n >= 2:
                bond(1, 2, 4)
            for i in range(2, n):
                bond(i, i + 1, 3)
        else:
            if n >= 3:
                bond(1, 3, 3)
                bond(2, 3, 3)
            for i in range(3, n):
                bond(i, i + 1, 3)
        return m

    def parabolic(self) -> "CartanType":
        """The type left after deleting the top vertex."""
        n = self.rank
        if self.family == "A":
            return CartanType("A", n - 1)
        if self.family == "B":
            return CartanType("B", n - 1) if n >= 2 else CartanType("A", 0)
        return CartanType("D", n - 1) if n >= 3 else CartanType("A", 1)


def parse_cartan(text: str) -> CartanType:
    text = text.strip().replace("_", "")
    return CartanType(text[0].upper(), int(text[1:]))


# --- action of generators on one-line notation -------------------------------

def _right_gen(ct: CartanType, w: tuple, s: int) -> tuple:
    w = list(w)
    if ct.family == "A":
        w[s - 1], w[s] = w[s], w[s - 1]
    elif ct.family == "B":
        if s == 1:
            w[0] = -w[0]
        else:
            w[s - 2], w[s - 1] = w[s - 1], w[s - 2]
    else:
        if s == 1:
            w[0], w[1] = -w[1], -w[0]
        elif s == 2:
            w[0], w[1] = w[1], w[0]
        else:
            w[s - 2], w[s - 1] = w[s - 1], w[s - 2]
    return tuple(w)


def _gen_perm(ct: CartanType, s: int) -> tuple:
    return _right_gen(ct, tuple(range(1, ct.degree() + 1)), s)


def compose(u: tuple, w: tuple) -> tuple:
    """(u*w)(j) = u(w(j)) for signed permutations in one-line notation."""
    out = []
    for x in w:
        y = u[abs(x) - 1]
        out.append(y if x > 0 else -y)
    return tuple(out)


def invert(w: tuple) -> tuple:
    out = [0] * len(w)
    for j, x in enumerate(w, start=1):
        out[abs(x) - 1] = j if x > 0 else -j
    return tuple(out)


def length_formula(ct: CartanType, w: tuple) -> int:
    """Combinatorial length (inversion counts); the tables use BFS distance."""
    n = len(w)
    inv = sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])
    if ct.family == "A":
        return inv
    nsp = sum(1 for i in range(n) for j in range(i + 1, n) if w[i] + w[j] < 0)
    if ct.family == "B":
        return inv + nsp + sum(1 for x in w if x < 0)
    return inv + nsp


@dataclass(frozen=True)
class WeylElement:
    ctype: CartanType
    perm: tuple

    @property
    def group(self) -> "WeylGroup":
        return weyl_group(self.ctype)

    @property
    def index(self) -> int:
        return self.group.index[self.perm]

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        if not isinstance(other, WeylElement):
            return NotImplemented
        if other.ctype != self.ctype:
            raise TypeError(f"cannot multiply elements of {self.ctype} and {other.ctype}")
        return WeylElement(self.ctype, compose(self.perm, other.perm))

    def inverse(self) -> "WeylElement":
        return WeylElement(self.ctype, invert(self.perm))

    def length(self) -> int:
        return self.group.length[self.index]

    def reduced_word(self) -> tuple[int, ...]:
        return self.group.reduced_word(self.index)

    def is_identity(self) -> bool:
        return self.perm == tuple(range(1, len(self.perm) + 1))

    def __str__(self) -> str:
        word = self.reduced_word()
        return " ".join(map(str, word)) if word else "e"


class WeylGroup:
    """Fully enumerated Weyl group with multiplication and descent tables."""

    def __init__(self, ct: CartanType, bound: int = DEFAULT_ORDER_BOUND):
        order = ct.order()
        if order > bound:
            raise GroupTooLarge(f"|W({ct})| = {order} exceeds the enumeration bound {bound}")
        self.ctype = ct
        self.rank = ct.rank
        ident = tuple(range(1, ct.degree() + 1))
        dist = {ident: 0}
        frontier = [ident]
        while frontier:
            nxt = []
            for w in frontier:
                for s in ct.generators:
                    u = _right_gen(ct, w, s)
                    if u not in dist:
                        dist[u] = dist[w] + 1
                        nxt.append(u)
            frontier = nxt
        if len(dist) != order:
            raise AssertionError(f"enumerated {len(dist)} elements of {ct}, expected {order}")
        self.perms: list[tuple] = sorted(dist, key=lambda w: (dist[w], w))
        self.index: dict[tuple, int] = {w: i for i, w in enumerate(self.perms)}
        self.length: list[int] = [dist[w] for w in self.perms]
        gens = list(ct.generators)
        self.gen_index = {s: self.index[_gen_perm(ct, s)] for s in gens}
        # rmul[i][s-1] = index of w_i * s ; lmul[i][s-1] = index of s * w_i
        self.rmul = [[self.index[_right_gen(ct, w, s)] for s in gens] for w in self.perms]
        gperm = {s: _gen_perm(ct, s) for s in gens}
        self.lmul = [[self.index[compose(gperm[s], w)] for s in gens] for w in self.perms]
        self._words: dict[int, tuple] = {0: ()}
        self._intervals: dict[int, frozenset] = {}

    def __len__(self) -> int:
        return len(self.perms)

    def __repr__(self) -> str:
        return f"WeylGroup({self.ctype})"

    @property
    def identity(self) -> int:
        return 0

    def element(self, i: int) -> WeylElement:
        return WeylElement(self.ctype, self.perms[i])

    def elements(self) -> list[WeylElement]:
        return [self.element(i) for i in range(len(self))]

    def mul(self, i: int, j: int) -> int:
        return self.index[compose(self.perms[i], self.perms[j])]

    def inverse(self, i: int) -> int:
        return self.index[invert(self.perms[i])]

    def is_right_descent(self, i: int, s: int) -> bool:
        return self.length[self.rmul[i][s - 1]] < self.length[i]

    def is_left_descent(self, i: int, s: int) -> bool:
        return self.length[self.lmul[i][s - 1]] < self.length[i]

    def from_word(self, word: Iterable[int]) -> int:
        i = 0
        for s in word:
            if not 1 <= s <= self.rank:
                raise ValueError(f"generator {s} out of range for {self.ctype}")
            i = self.rmul[i][s - 1]
        return i

    def reduced_word(self, i: int) -> tuple[int, ...]:
        """Lexicographically smallest reduced word (greedy on left descents)."""
        if i in self._words:
            return self._words[i]
        for s in range(1, self.rank + 1):
            j = self.lmul[i][s - 1]
            if self.length[j] < self.length[i]:
                word = (s,) + self.reduced_word(j)
                self._words[i] = word
                return word
        raise AssertionError("non-identity element without a left descent")

    def parse(self, text: str) -> int:
        """Element syntax: whitespace separated indices, 's' prefixes allowed; 'e' or '' is 1."""
        toks = text.replace(",", " ").split()
        if toks == ["e"]:
            return 0
        word = []
        for tok in toks:
            core = tok[1:] if tok.lower().startswith("s") else tok
            if not core.isdigit():
                raise ValueError(f"bad generator token {tok!r}")
            word.append(int(core))
        return self.from_word(word)

    # --- Bruhat order ------------------------------------------------------

    def bruhat_interval(self, w: int) -> frozenset:
        """All x <= w, as products of subwords of the canonical reduced word of w."""
        if w not in self._intervals:
            reached = {0}
            for s in self.reduced_word(w):
                reached |= {self.rmul[x][s - 1] for x in reached}
            self._intervals[w] = frozenset(reached)
        return self._intervals[w]

    def bruhat_leq(self, x: int, w: int) -> bool:
        if self.length[x] > self.length[w]:
            return False
        return x in self.bruhat_interval(w)

    # --- parabolic tower ---------------------------------------------------

    def tower_decompose(self, w: int) -> tuple[int, tuple[int, ...]]:
        """w = u * r with u in the parabolic without the top generator and r a
        minimal length coset representative; returns (u, reduced word of r)."""
        top = self.rank
        u_word: list[int] = []
        x = w
        changed = True
        while changed:
            changed = False
            for s in range(1, top):
                y = self.lmul[x][s - 1]
                if self.length[y] < self.length[x]:
                    u_word.append(s)
                    x = y
                    changed = True
                    break
        u = self.from_word(u_word)
        return u, self.reduced_word(x)

    def in_parabolic(self, w: int) -> bool:
        return self.rank not in self.reduced_word(w)


@lru_cache(maxsize=None)
def weyl_group(ct: CartanType, bound: int = DEFAULT_ORDER_BOUND) -> WeylGroup:
    return WeylGroup(ct, bound)


def group_enumerate(ct: CartanType, bound: int = DEFAULT_ORDER_BOUND) -> list[WeylElement]:
    return weyl_group(ct, bound).elements()


def element(ct: CartanType, word: Sequence[int] | str) -> WeylElement:
    g = weyl_group(ct)
    i = g.parse(word) if isinstance(word, str) else g.from_word(word)
    return g.element(i)


def tower_decompose(w: WeylElement) -> tuple[WeylElement, tuple[int, ...]]:
    g = w.group
    u, r = g.tower_decompose(w.index)
    return g.element(u), r


def bruhat_leq(x: WeylElement, w: WeylElement) -> bool:
    if x.ctype != w.ctype:
        raise TypeError("Bruhat order compares elements of the same group")
    g = x.group
    return g.bruhat_leq(x.index, w.index)


@lru_cache(maxsize=None)
def embedding(lower: CartanType, upper: CartanType) -> tuple[int, ...]:
    """Index map W(lower) -> W(upper) induced by the labeled diagram inclusion."""
    lo, hi = weyl_group(lower), weyl_group(upper)
    if lower.rank > upper.rank:
        raise ValueError(f"{lower} does not embed in {upper}")
    return tuple(hi.from_word(lo.reduced_word(i)) for i in range(len(lo)))


@lru_cache(maxsize=None)
def restriction(lower: CartanType, upper: CartanType) -> dict[int, int]:
    """Inverse of embedding(), defined on the parabolic subgroup."""
    return {j: i for i, j in enumerate(embedding(lower, upper))}
