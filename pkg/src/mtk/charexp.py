"""
Character expansion of the trace.

Hecke characters come from seminormal (Young / Hoefsmit) representations on
standard (bi)tableaux; Weyl group characters from Murnaghan-Nakayama (type A),
induction from B_k x B_{n-k} (type B) and a Burnside-Dixon split (type D).
The trace is recovered as

    Tr(h) = sum_{chi, nu} chi_q(h) {chi, nu} M_nu(q, t)

with M_nu the bigraded Molien series of nu in Sym(V) (x) Lambda(V).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Optional, Sequence, Union

from .coxeter import CartanType, compose, invert, weyl_group
from .hecke import HeckeElement
from .ring import DELTA, ONE, ONE_MINUS_Q, Q, T, V, ZERO, BiLaurent, InexactDivision, RatFn

Partition = tuple[int, ...]
BiPartition = tuple[Partition, Partition]
Label = Union[Partition, BiPartition, tuple]

DATA_DIR = Path(__file__).parent / "data"


class CharacterError(ValueError):
    pass


# --- partitions and tableaux ----------------------------------------------------

def partitions(n: int, largest: Optional[int] = None) -> list[Partition]:
    """Partitions of n in reverse lexicographic order: (n) first, (1^n) last."""
    if largest is None:
        largest = n
    if n == 0:
        return [()]
    out = []
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            out.append((k,) + rest)
    return out


def bipartitions(n: int) -> list[BiPartition]:
    out = []
    for k in range(n, -1, -1):
        for a in partitions(k):
            for b in partitions(n - k):
                out.append((a, b))
    return out


def conjugate(lam: Partition) -> Partition:
    return tuple(sum(1 for p in lam if p > i) for i in range(lam[0])) if lam else ()


# a tableau is the tuple of box positions of the entries 1..n; a box is
# (component, row, col) so that bitableaux share the representation
Box = tuple[int, int, int]


def _boxes(shapes: Sequence[Partition]) -> list[Box]:
    return [(c, r, j) for c, lam in enumerate(shapes) for r, p in enumerate(lam) for j in range(p)]


def standard_tableaux(*shapes: Partition) -> list[tuple[Box, ...]]:
    """Standard fillings of a tuple of Young diagrams, as positions of 1, 2, ..."""
    shapes = tuple(tuple(s) for s in shapes)
    n = sum(sum(s) for s in shapes)
    out: list[tuple[Box, ...]] = []

    def addable(filled: list[int], shapes=shapes):
        # filled[c][r] = number of boxes already filled in row r of component c
        for c, lam in enumerate(shapes):
            for r, p in enumerate(lam):
                k = filled[c][r]
                if k < p and (r == 0 or filled[c][r - 1] > k):
                    yield c, r, k

    def grow(filled, path):
        if len(path) == n:
            out.append(tuple(path))
            return
        for c, r, k in list(addable(filled)):
            filled[c][r] += 1
            path.append((c, r, k))
            grow(filled, path)
            path.pop()
            filled[c][r] -= 1

    grow([[0] * len(lam) for lam in shapes], [])
    return out


def _check_partition(lam) -> Partition:
    lam = tuple(int(p) for p in lam)
    if any(p <= 0 for p in lam) or any(a < b for a, b in zip(lam, lam[1:])):
        raise CharacterError(f"not a partition: {lam}")
    return lam


# --- label text --------------------------------------------------------------

def _ptext(lam: Partition) -> str:
    return "(" + ",".join(map(str, lam)) + ")"


def label_str(label) -> str:
    if isinstance(label, str):
        return label
    if label and isinstance(label[0], tuple):
        tail = label[2] if len(label) == 3 else ""
        return "(" + _ptext(label[0]) + "," + _ptext(label[1]) + ")" + tail
    return _ptext(label)


# --- seminormal representations ---------------------------------------------------

Matrix = list[list[RatFn]]


@dataclass
class SeminormalRep:
    ctype: CartanType
    label: Label
    tableaux: list[tuple[Box, ...]]
    gens: list[Matrix]  # gens[s-1] = matrix of sigma_s (columns are images)

    @property
    def dim(self) -> int:
        return len(self.tableaux)


def _eigen(box: Box, family: str) -> tuple[int, int]:
    """JM eigenvalue of a box as (sign, v-exponent)."""
    c, r, j = box
    content = j - r
    if family == "A":
        return 1, 2 * content
    return (1, 1 + 2 * content) if c == 0 else (-1, -1 + 2 * content)


def _mono(sign: int, ev: int) -> BiLaurent:
    return BiLaurent.monomial(sign, ev)


def _zero_matrix(d: int) -> Matrix:
    return [[RatFn(ZERO) for _ in range(d)] for _ in range(d)]


def _swap_block(tabs, k: int, family: str) -> Matrix:
    """Matrix of the generator exchanging entries k and k+1 (1-based)."""
    index = {tab: i for i, tab in enumerate(tabs)}
    m = _zero_matrix(len(tabs))
    for i, tab in enumerate(tabs):
        a, b = tab[k - 1], tab[k]
        sa, ea = _eigen(a, family)
        sb, eb = _eigen(b, family)
        r = _mono(sa * sb, ea - eb)  # eigenvalue ratio e(k)/e(k+1)
        if r == Q.monomial_inverse():
            m[i][i] = RatFn(V)
            continue
        if r == Q:
            m[i][i] = RatFn(-V.monomial_inverse())
            continue
        other = list(tab)
        other[k - 1], other[k] = b, a
        j = index[tuple(other)]
        alpha = RatFn(DELTA, ONE - r)
        alpha_p = RatFn(DELTA, ONE - r.monomial_inverse())
        m[i][i] = alpha
        # 1 on the step that moves k+1 "down" (later component/row), alpha alpha' + 1 back
        if (a[0], a[1]) < (b[0], b[1]):
            m[j][i] = RatFn(ONE)
        else:
            m[j][i] = (alpha * alpha_p + 1).reduced()
    return m


@lru_cache(maxsize=None)
def seminormal_rep(lam: Partition) -> SeminormalRep:
    """Young's seminormal form of H(A_{n-1}), n = |lam|, on standard tableaux of shape lam."""
    lam = _check_partition(lam)
    n = sum(lam)
    if n < 1:
        raise CharacterError("empty partition")
    tabs = standard_tableaux(lam)
    gens = [_swap_block(tabs, k, "A") for k in range(1, n)]
    return SeminormalRep(CartanType("A", n - 1), lam, tabs, gens)


@lru_cache(maxsize=None)
def hoefsmit_rep(label: BiPartition) -> SeminormalRep:
    """Seminormal form of H(B_n) (equal parameters) on standard bitableaux."""
    a, b = (_check_partition(x) if x else () for x in label)
    n = sum(a) + sum(b)
    if n < 1:
        raise CharacterError("empty bipartition")
    tabs = standard_tableaux(a, b)
    d = len(tabs)
    t0 = _zero_matrix(d)
    for i, tab in enumerate(tabs):
        s, e = _eigen(tab[0], "B")
        t0[i][i] = RatFn(_mono(s, e))
    gens = [t0] + [_swap_block(tabs, k, "B") for k in range(1, n)]
    return SeminormalRep(CartanType("B", n), (a, b), tabs, gens)


def hecke_rep(ct: CartanType, label) -> SeminormalRep:
    if ct.family == "A":
        rep = seminormal_rep(tuple(label))
    elif ct.family == "B":
        rep = hoefsmit_rep((tuple(label[0]), tuple(label[1])))
    else:
        raise CharacterError(f"Hecke characters are only implemented in types A and B, not {ct}")
    if rep.ctype != ct:
        raise CharacterError(f"label {label_str(label)} does not belong to {ct}")
    return rep


def matmul(a: Matrix, b: Matrix) -> Matrix:
    d = len(a)
    out = []
    for i in range(d):
        row = []
        for j in range(d):
            acc = RatFn(ZERO)
            for k in range(d):
                if a[i][k] and b[k][j]:
                    acc = acc + a[i][k] * b[k][j]
            row.append(acc.reduced())
        out.append(row)
    return out


def identity_matrix(d: int) -> Matrix:
    m = _zero_matrix(d)
    for i in range(d):
        m[i][i] = RatFn(ONE)
    return m


def matrix_of_word(rep: SeminormalRep, word: Sequence[int]) -> Matrix:
    """Image of sigma_{s_1} ... sigma_{s_k}; negative letters are inverses."""
    m = identity_matrix(rep.dim)
    for letter in word:
        g = rep.gens[abs(letter) - 1]
        if letter < 0:
            g = [[(x - (DELTA if i == j else ZERO)).reduced() for j, x in enumerate(row)]
                 for i, row in enumerate(g)]
        m = matmul(m, g)
    return m


def matrix_trace(m: Matrix) -> RatFn:
    acc = RatFn(ZERO)
    for i in range(len(m)):
        acc = acc + m[i][i]
    return acc.reduced()


@lru_cache(maxsize=None)
def _basis_characters(ct: CartanType, label) -> tuple[BiLaurent, ...]:
    """chi_q(sigma_w) for every w, in enumeration order."""
    rep = hecke_rep(ct, label)
    g = weyl_group(ct)
    mats: dict[int, Matrix] = {0: identity_matrix(rep.dim)}
    out = []
    for w in range(len(g)):  # enumeration is sorted by length, so prefixes come first
        if w not in mats:
            word = g.reduced_word(w)
            prefix = g.from_word(word[:-1])
            mats[w] = matmul(mats[prefix], rep.gens[word[-1] - 1])
        out.append(matrix_trace(mats[w]).as_laurent())
    return tuple(out)


def char_value(ct: CartanType, label, h: HeckeElement) -> BiLaurent:
    """chi_q(h), the trace of h in the seminormal representation labelled by label."""
    if h.ctype != ct:
        raise CharacterError(f"element of H({h.ctype}) passed to a character of {ct}")
    values = _basis_characters(ct, _freeze(label))
    total = ZERO
    for w, c in h.coeffs.items():
        total = total + c * values[w]
    return total


def _freeze(label):
    if label and isinstance(label[0], (tuple, list)):
        return tuple(tuple(x) for x in label[:2]) + tuple(label[2:])
    return tuple(label)


# --- Weyl group characters ---------------------------------------------------------

def cycle_type(perm: Sequence[int]) -> list[tuple[int, int]]:
    """Cycles of a signed permutation as (length, sign), sign = product of signs on the cycle."""
    n = len(perm)
    seen = [False] * n
    out = []
    for start in range(n):
        if seen[start]:
            continue
        j, length, sign = start, 0, 1
        while not seen[j]:
            seen[j] = True
            x = perm[j]
            sign *= 1 if x > 0 else -1
            j = abs(x) - 1
            length += 1
        out.append((length, sign))
    return sorted(out, reverse=True)


@lru_cache(maxsize=None)
def mn_character(lam: Partition, mu: Partition) -> int:
    """Murnaghan-Nakayama: chi_lam on the class of cycle type mu."""
    if not mu:
        return 1 if not lam else 0
    k, rest = mu[0], mu[1:]
    total = 0
    # rim hooks of size k via beta-numbers
    m = len(lam)
    beta = [lam[i] + (m - 1 - i) for i in range(m)]
    bset = set(beta)
    for b in beta:
        if b - k >= 0 and (b - k) not in bset:
            height = sum(1 for x in beta if b - k < x < b)
            nb = sorted((bset - {b}) | {b - k}, reverse=True)
            new = tuple(p for p in (nb[i] - (m - 1 - i) for i in range(m)) if p > 0)
            total += (-1) ** height * mn_character(new, rest)
    return total


@dataclass
class CharacterTable:
    ctype: CartanType
    labels: list
    classes: list[list[int]]  # element indices; classes[0] = [identity]
    class_of: list[int]
    values: dict  # label -> tuple of ints per class

    def value(self, label, w: int) -> int:
        return self.values[label][self.class_of[w]]

    def degree(self, label) -> int:
        return self.values[label][0]

    def inner(self, f: Sequence, g: Sequence) -> Fraction:
        n = sum(len(c) for c in self.classes)
        return Fraction(sum(len(c) * a * b for c, a, b in zip(self.classes, f, g)), n)


@lru_cache(maxsize=None)
def conjugacy_classes(ct: CartanType) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    g = weyl_group(ct)
    perms = g.perms
    class_of = [-1] * len(g)
    classes = []
    for w in range(len(g)):
        if class_of[w] >= 0:
            continue
        orbit = sorted({g.index[compose(compose(x, perms[w]), invert(x))] for x in perms})
        for u in orbit:
            class_of[u] = len(classes)
        classes.append(tuple(orbit))
    return tuple(classes), tuple(class_of)


def _type_a_values(ct: CartanType, classes) -> dict:
    g = weyl_group(ct)
    out = {}
    for lam in partitions(ct.rank + 1):
        out[lam] = tuple(
            mn_character(lam, tuple(l for l, _ in cycle_type(g.perms[c[0]]))) for c in classes
        )
    return out


def _restricted_part(perm, positions):
    """Permutation of the given (absolute) positions, or None if not stable."""
    rel = {p: i for i, p in enumerate(positions)}
    out = []
    sign = 1
    for p in positions:
        x = perm[p - 1]
        if abs(x) not in rel:
            return None
        out.append(rel[abs(x)] + 1)
        sign *= 1 if x > 0 else -1
    return tuple(out), sign


def _type_b_values(ct: CartanType, classes) -> dict:
    n = ct.rank
    g = weyl_group(ct)
    out = {}
    for a, b in bipartitions(n):
        k = sum(a)
        first, second = list(range(1, k + 1)), list(range(k + 1, n + 1))
        sub_order = 2 ** n * _fact(k) * _fact(n - k)

        def chi_h(perm):
            pa = _restricted_part(perm, first)
            pb = _restricted_part(perm, second)
            if pa is None or pb is None:
                return 0
            ta = tuple(l for l, _ in cycle_type(pa[0]))
            tb = tuple(l for l, _ in cycle_type(pb[0]))
            return mn_character(a, ta) * mn_character(b, tb) * pb[1]

        vals = []
        for c in classes:
            w = g.perms[c[0]]
            total = sum(chi_h(compose(compose(invert(x), w), x)) for x in g.perms)
            vals.append(Fraction(total, sub_order))
        if any(x.denominator != 1 for x in vals):
            raise CharacterError(f"induced character {label_str((a, b))} is not integral")
        out[(a, b)] = tuple(int(x) for x in vals)
    return out


def _fact(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def dixon_characters(ct: CartanType) -> list[tuple[Fraction, ...]]:
    """All irreducible characters from the class algebra (Burnside's method).

    Common eigenvectors of the class multiplication matrices are found as the
    eigenvectors of one random integer combination, refined until every
    eigenspace is one-dimensional.  Weyl group characters are rational, so the
    eigenvalues are too.
    """
    import sympy

    g = weyl_group(ct)
    classes, class_of = conjugacy_classes(ct)
    r = len(classes)
    inv = [class_of[g.inverse(c[0])] for c in classes]
    # A_j[i][k] = #{x in C_j : x^-1 z_k in C_i},  z_k the representative of class k
    mats = []
    for j in range(r):
        a = [[0] * r for _ in range(r)]
        for k in range(r):
            zk = classes[k][0]
            for x in classes[j]:
                a[class_of[g.mul(g.inverse(x), zk)]][k] += 1
        mats.append(a)
    # omega_j omega_i = sum_k A_j[i][k] omega_k
    rng = random.Random(1)
    spaces = [sympy.eye(r)]
    for _ in range(40):
        comb = sympy.zeros(r, r)
        for a in mats:
            comb += rng.randint(-9, 9) * sympy.Matrix(a)
        new_spaces = []
        for basis in spaces:
            if basis.shape[1] == 1:
                new_spaces.append(basis)
                continue
            # restrict comb to the invariant subspace spanned by basis columns
            coords = (basis.T * basis).inv() * basis.T * comb * basis
            for val, mult, vecs in coords.eigenvects():
                sub = sympy.Matrix.hstack(*[basis * vec for vec in vecs])
                new_spaces.append(sub)
        spaces = new_spaces
        if all(s.shape[1] == 1 for s in spaces):
            break
    else:
        raise CharacterError(f"class algebra of {ct} did not split")
    order = len(g)
    out = []
    for s in spaces:
        omega = [sympy.Rational(x) for x in s[:, 0]]
        omega = [x / omega[0] for x in omega]
        norm = sum(omega[j] * omega[inv[j]] / len(classes[j]) for j in range(r))
        deg = sympy.sqrt(sympy.Rational(order) / norm)
        chi = tuple(Fraction(str(omega[j] * deg / len(classes[j]))) for j in range(r))
        out.append(chi)
    return sorted(out, key=lambda c: (c[0], c), reverse=True)


def _type_d_values(ct: CartanType, classes) -> dict:
    """Restrictions of type B characters; the self-associate ones split into a +/- pair."""
    n = ct.rank
    big = CartanType("B", n)
    gb = weyl_group(big)
    bclasses, bclass_of = conjugacy_classes(big)
    bvals = _type_b_values(big, bclasses)
    gd = weyl_group(ct)
    reps = [gd.perms[c[0]] for c in classes]
    restricted = {
        lab: tuple(vals[bclass_of[gb.index[p]]] for p in reps) for lab, vals in bvals.items()
    }
    irreducibles = dixon_characters(ct)
    out = {}
    for a, b in bipartitions(n):
        if (a, b) < (b, a) and (b, a) != (a, b):
            continue  # the pair (a, b) ~ (b, a) is recorded once, larger label first
        res = restricted[(a, b)]
        if a != b:
            out[(a, b)] = res
            continue
        parts = [chi for chi in irreducibles if _inner(classes, chi, res) == 1]
        if len(parts) != 2:
            raise CharacterError(f"restriction of {label_str((a, b))} does not split in two")
        split = next(j for j in range(len(classes)) if parts[0][j] != parts[1][j])
        parts.sort(key=lambda chi: chi[split], reverse=True)
        out[(a, b, "+")] = tuple(int(x) for x in parts[0])
        out[(a, b, "-")] = tuple(int(x) for x in parts[1])
    return out


def _inner(classes, f, g) -> Fraction:
    n = sum(len(c) for c in classes)
    return Fraction(sum(len(c) * Fraction(a) * Fraction(b) for c, a, b in zip(classes, f, g)), n)


@lru_cache(maxsize=None)
def character_table(ct: CartanType) -> CharacterTable:
    classes, class_of = conjugacy_classes(ct)
    classes = [list(c) for c in classes]
    if ct.family == "A":
        values = _type_a_values(ct, classes)
    elif ct.family == "B":
        values = _type_b_values(ct, classes)
    else:
        values = _type_d_values(ct, classes)
    table = CharacterTable(ct, list(values), classes, list(class_of), values)
    _check_orthogonality(table)
    return table


def _check_orthogonality(table: CharacterTable) -> None:
    labels = table.labels
    if len(labels) != len(table.classes):
        raise CharacterError(f"{table.ctype}: {len(labels)} characters for {len(table.classes)} classes")
    for i, a in enumerate(labels):
        for b in labels[i:]:
            want = 1 if a == b else 0
            if table.inner(table.values[a], table.values[b]) != want:
                raise CharacterError(
                    f"{table.ctype}: orthogonality fails for {label_str(a)}, {label_str(b)}"
                )


# --- Molien series -------------------------------------------------------------

def invariant_degrees(ct: CartanType) -> list[int]:
    n = ct.rank
    if ct.family == "A":
        return list(range(2, n + 2))
    if ct.family == "B":
        return [2 * i for i in range(1, n + 1)]
    return sorted([2 * i for i in range(1, n)] + [n])


def reflection_det(ct: CartanType, perm: Sequence[int], x: BiLaurent) -> BiLaurent:
    """det(1 - x rho(w)) for the reflection representation rho."""
    out = ONE
    for length, sign in cycle_type(perm):
        out = out * (ONE - x ** length if sign > 0 else ONE + x ** length)
    if ct.family == "A":
        out = out.exact_div(ONE - x)  # remove the trivial summand of the permutation module
    return out


def molien_numerators(ct: CartanType) -> tuple[dict, BiLaurent]:
    """({label: numerator}, common denominator prod (1 - q^d_i))."""
    return _molien(ct)


@lru_cache(maxsize=None)
def _molien(ct: CartanType):
    table = character_table(ct)
    g = weyl_group(ct)
    den = ONE
    for d in invariant_degrees(ct):
        den = den * (ONE - Q ** d)
    class_terms = []
    for c in table.classes:
        perm = g.perms[c[0]]
        top = reflection_det(ct, perm, -(V * T))
        bottom = reflection_det(ct, perm, Q)
        class_terms.append(len(c) * top * den.exact_div(bottom))
    nums = {}
    for lab in table.labels:
        acc = ZERO
        for chi, term in zip(table.values[lab], class_terms):
            if chi:
                acc = acc + chi * term
        nums[lab] = acc.exact_div(len(g))
    return nums, den


def molien(ct: CartanType, label) -> RatFn:
    """Bigraded multiplicity of the irreducible `label` in Sym(V) (x) Lambda(V)."""
    nums, den = _molien(ct)
    label = _freeze(label) if not isinstance(label, str) else _parse_label(ct, label)
    if label not in nums:
        raise CharacterError(f"{label_str(label)} is not an irreducible character of {ct}")
    return RatFn(nums[label], den).reduced()


# --- Fourier blocks ----------------------------------------------------------------

@dataclass
class FourierBlock:
    ctype: CartanType
    labels: list
    matrix: list[list[Fraction]]

    def entry(self, a, b) -> Fraction:
        return self.matrix[self.labels.index(a)][self.labels.index(b)]

    def to_json(self) -> dict:
        return {
            "family": self.ctype.family,
            "rank": self.ctype.rank,
            "labels": [label_str(l) for l in self.labels],
            "matrix": [[str(x) for x in row] for row in self.matrix],
        }


def _parse_label(ct: CartanType, text: str):
    table = character_table(ct)
    by_text = {label_str(l): l for l in table.labels}
    key = text.replace(" ", "")
    if key not in by_text:
        raise CharacterError(f"unknown character label {text!r} for {ct}")
    return by_text[key]


def fourier_from_json(data: dict) -> FourierBlock:
    try:
        ct = CartanType(data["family"], int(data["rank"]))
        raw_labels = data["labels"]
        raw = data["matrix"]
    except (KeyError, TypeError, ValueError) as exc:
        raise CharacterError(f"malformed Fourier data: {exc}") from None
    labels = [_parse_label(ct, l) for l in raw_labels]
    expected = character_table(ct).labels
    if len(set(labels)) != len(labels) or set(labels) != set(expected):
        raise CharacterError(
            f"Fourier labels do not match the {len(expected)} irreducible characters of {ct}"
        )
    if len(raw) != len(labels) or any(len(row) != len(labels) for row in raw):
        raise CharacterError("Fourier matrix is not square of the label size")
    try:
        matrix = [[Fraction(str(x)) for x in row] for row in raw]
    except (ValueError, ZeroDivisionError) as exc:
        raise CharacterError(f"bad Fourier entry: {exc}") from None
    for i in range(len(labels)):
        for j in range(i):
            if matrix[i][j] != matrix[j][i]:
                raise CharacterError("Fourier matrix is not symmetric")
    return FourierBlock(ct, labels, matrix)


def load_fourier(path: "str | Path") -> FourierBlock:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CharacterError(f"cannot read Fourier data {path}: {exc}") from None
    return fourier_from_json(data)


def save_fourier(block: FourierBlock, path: "str | Path") -> None:
    Path(path).write_text(json.dumps(block.to_json(), indent=1) + "\n")


def fourier_block(ct: CartanType, path: "str | Path | None" = None) -> FourierBlock:
    if path is not None:
        block = load_fourier(path)
        if block.ctype != ct:
            raise CharacterError(f"Fourier data is for {block.ctype}, not {ct}")
        return block
    if ct.family == "A":
        labels = character_table(ct).labels
        m = [[Fraction(int(i == j)) for j in range(len(labels))] for i in range(len(labels))]
        return FourierBlock(ct, labels, m)
    shipped = DATA_DIR / f"fourier_{ct}.json"
    if shipped.exists():
        return load_fourier(shipped)
    raise CharacterError(f"no Fourier data for {ct}; pass a data file")


# --- the character formula for the trace --------------------------------------------

def gomi_trace(ct: CartanType, h: HeckeElement, fourier: "FourierBlock | None" = None) -> RatFn:
    """sum over (chi, nu) of chi_q(h) {chi, nu} M_nu."""
    block = fourier if fourier is not None else fourier_block(ct)
    nums, den = _molien(ct)
    acc = ZERO
    scale = 1
    for i, chi in enumerate(block.labels):
        cv = char_value(ct, chi, h)
        if not cv:
            continue
        for j, nu in enumerate(block.labels):
            f = block.matrix[i][j]
            if not f:
                continue
            # keep integer arithmetic: accumulate over the lcm of the denominators
            if scale % f.denominator:
                new = scale * f.denominator
                acc = acc * (new // scale)
                scale = new
            acc = acc + cv * nums[nu] * (f.numerator * (scale // f.denominator))
    try:
        return RatFn(acc.exact_div(scale), den).reduced()
    except InexactDivision:
        return RatFn(acc, den * scale).reduced()
