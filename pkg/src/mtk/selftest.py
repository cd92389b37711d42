"""
Acceptance checks, shared by `mtk selftest` and the test suite.

Each check returns a CheckResult; failures carry a witness.  The independent
oracles used here (bar-involution KL polynomials, brute-force Molien
multiplicities) deliberately share no code with the routes they check.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Optional

from . import charexp, homfly
from .coxeter import CartanType, embedding, weyl_group
from .hecke import CacheError, HeckeElement, KLTable, eval_braid, kl_basis, kl_table, mul_std
from .ring import DELTA, ONE, ONE_MINUS_Q, VINV, ZERO, BiLaurent, RatFn, series_expand
from .trace import (
    MINUS_T,
    geometric_table,
    geometric_trace,
    hochschild_series,
    ocneanu_table,
    positivity_report,
    solve_trace,
    special_braid,
    z_value,
)


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"[{status}] {self.number:2d}. {self.name} ({self.seconds:.1f}s)"
        return text + (f": {self.detail}" if self.detail else "")


class _Fail(Exception):
    pass


def _expect(ok: bool, witness: str) -> None:
    if not ok:
        raise _Fail(witness)


def _zero(x: RatFn) -> bool:
    return x.num.is_zero()


# --- 1. Markov rules in type A ---------------------------------------------------

def check_markov_rules(max_rank: int = 4, inverse_factor: BiLaurent = VINV) -> str:
    """Tr(iota a) = z Tr(a), Tr(sigma_n iota a) = -t Tr(a), Tr(sigma_n^-1 iota a) = f Tr(a)."""
    _expect(geometric_table(CartanType("A", 0)).numerators == [ONE], "Tr_empty(1) != 1")
    count = 0
    for n in range(1, max_rank + 1):
        ct, low = CartanType("A", n), CartanType("A", n - 1)
        g, gl = weyl_group(ct), weyl_group(low)
        upper, lower = geometric_table(ct), geometric_table(low)
        emb = embedding(low, ct)
        z = z_value()
        for i in range(len(gl)):
            a = HeckeElement(g, {emb[i]: ONE})
            ta = lower.value(i)
            rules = (
                ("Tr(iota a) = z Tr(a)", a, z * ta),
                ("Tr(sigma_n iota a) = -t Tr(a)", eval_braid(ct, [n]) * a, RatFn(MINUS_T) * ta),
                ("Tr(sigma_n^-1 iota a) = f Tr(a)", eval_braid(ct, [-n]) * a, RatFn(inverse_factor) * ta),
            )
            for name, elt, want in rules:
                got = upper.trace(elt)
                _expect(got == want, f"A{n}, a = sigma_[{gl.reduced_word(i)}]: {name} fails, "
                                     f"got {got.reduced()} want {want.reduced()}")
                count += 1
    return f"{count} rule instances"


# --- 2. trace property --------------------------------------------------------

TRACE_GROUPS = [CartanType("A", 1), CartanType("A", 2), CartanType("A", 3),
                CartanType("B", 1), CartanType("B", 2), CartanType("B", 3),
                CartanType("D", 2), CartanType("D", 3)]


def random_element(ct: CartanType, rng: random.Random, terms: int = 3) -> HeckeElement:
    g = weyl_group(ct)
    coeffs = {}
    for _ in range(terms):
        w = rng.randrange(len(g))
        c = BiLaurent.monomial(rng.choice([-2, -1, 1, 2]), rng.randint(-2, 2), rng.randint(0, 1))
        coeffs[w] = coeffs.get(w, ZERO) + c
    return HeckeElement(g, coeffs)


def check_trace_property(pairs: int = 200, seed: int = 7, groups=None) -> str:
    rng = random.Random(seed)
    for ct in groups or TRACE_GROUPS:
        table = geometric_table(ct)
        for _ in range(pairs):
            a, b = random_element(ct, rng), random_element(ct, rng)
            _expect(table.numerator(mul_std(a, b)) == table.numerator(mul_std(b, a)),
                    f"{ct}: Tr(ab) != Tr(ba) for a = {a}, b = {b}")
    return f"{pairs} pairs on {len(groups or TRACE_GROUPS)} groups"


# --- 3. recursion vs solver ----------------------------------------------------

def check_cross_oracle(ranks=(2, 3)) -> str:
    for n in ranks:
        ct = CartanType("A", n)
        rec, sol = ocneanu_table(n), solve_trace(ct, MINUS_T)
        for w in range(len(weyl_group(ct))):
            _expect(rec.numerators[w] == sol.numerators[w],
                    f"A{n}, w = {weyl_group(ct).reduced_word(w)}: recursion {rec.value(w)} "
                    f"!= solver {sol.value(w)}")
    return "A2, A3 element-by-element"


# --- 4. character formula --------------------------------------------------------

def check_gomi(ct: CartanType = CartanType("A", 3)) -> str:
    g = weyl_group(ct)
    table = kl_table(ct)
    n = 0
    for w in range(len(g)):
        for kind, h in (("sigma", HeckeElement.basis(ct, w)), ("C'", kl_basis(table, w))):
            lhs, rhs = charexp.gomi_trace(ct, h), geometric_trace(h)
            _expect(lhs == rhs, f"{ct} {kind}_{g.reduced_word(w)}: character formula {lhs} "
                                f"!= trace {rhs.reduced()}")
            n += 1
    return f"{n} elements of H({ct})"


# --- 5. type B conditions at y = -t -----------------------------------------------

def check_type_b(ranks=(2, 3), inverse_factor: BiLaurent = VINV) -> str:
    count = 0
    for n in ranks:
        ct, low = CartanType("B", n), CartanType("B", n - 1)
        g, gl = weyl_group(ct), weyl_group(low)
        upper, lower = solve_trace(ct, MINUS_T), solve_trace(low, MINUS_T)
        emb = embedding(low, ct)
        special = eval_braid(ct, special_braid(ct))
        for i in range(len(gl)):
            a = HeckeElement(g, {emb[i]: ONE})
            ta = lower.value(i)
            rules = (
                ("Tr(T iota a) = -t Tr(a)", mul_std(special, a), RatFn(MINUS_T) * ta),
                ("Tr(iota a) = z Tr(a)", a, z_value() * ta),
                ("Tr(sigma_n iota a) = -t Tr(a)", eval_braid(ct, [n]) * a, RatFn(MINUS_T) * ta),
                ("Tr(sigma_n^-1 iota a) = f Tr(a)", eval_braid(ct, [-n]) * a, RatFn(inverse_factor) * ta),
            )
            for name, elt, want in rules:
                got = upper.trace(elt)
                _expect(got == want, f"B{n}, a = sigma_[{gl.reduced_word(i)}]: {name} fails")
                count += 1
    return f"{count} rule instances"


# --- 6. positivity ---------------------------------------------------------

POSITIVITY_GROUPS = [CartanType("A", 2), CartanType("A", 3), CartanType("B", 2)]


def check_positivity(cutoff: int = 20, groups=None) -> str:
    count = 0
    for ct in groups or POSITIVITY_GROUPS:
        g = weyl_group(ct)
        for w in range(len(g)):
            rep = positivity_report(hochschild_series(g.element(w)), cutoff, ct.rank)
            _expect(rep.passed, f"{ct}, w = {g.reduced_word(w)}: {rep.reason} at v^{rep.order}, "
                                f"t-coefficients {rep.witness}")
            count += 1
    return f"{count} KL basis elements to v^{cutoff}"


# --- 7. specific values -------------------------------------------------------

def check_values() -> str:
    from .ring import parse_poly

    a1 = CartanType("A", 1)
    s = weyl_group(a1).element(1)
    got = hochschild_series(s)
    want = RatFn(parse_poly("v^-1 + q t"), ONE_MINUS_Q)
    _expect(got == want, f"Tr(C'_s) = {got}")
    got = geometric_trace(HeckeElement.basis(a1, [1]))
    _expect(got == RatFn(MINUS_T), f"Tr_1(sigma_1) = {got}")
    a2 = CartanType("A", 2)
    w = weyl_group(a2).element(weyl_group(a2).from_word([1, 2]))
    got = hochschild_series(w)
    want = RatFn(parse_poly("(1 + v^3 t)^2"), parse_poly("q (1 - q)^2"))
    _expect(got == want, f"Tr(C'_s1s2) = {got}")
    return "3 values"


# --- 8. Molien series -----------------------------------------------------------

def reflection_matrix(ct: CartanType, perm) -> list[list[int]]:
    """rho(w) as an integer matrix: simple-root basis in type A, signed permutations otherwise."""
    if ct.family != "A":
        n = len(perm)
        m = [[0] * n for _ in range(n)]
        for j, x in enumerate(perm):
            m[abs(x) - 1][j] = 1 if x > 0 else -1
        return m
    r = len(perm) - 1
    m = [[0] * r for _ in range(r)]
    for j in range(r):
        a, b = perm[j], perm[j + 1]  # alpha_j = e_j - e_{j+1} -> e_a - e_b
        lo, hi, sign = (a, b, 1) if a < b else (b, a, -1)
        for k in range(lo, hi):
            m[k - 1][j] += sign
    return m


def _sym_trace(m: list[list[int]], k: int) -> int:
    """Trace of Sym^k of a matrix, by expanding the images of monomials."""
    r = len(m)

    def monomials(deg, nvars):
        if nvars == 1:
            yield (deg,)
            return
        for a in range(deg, -1, -1):
            for rest in monomials(deg - a, nvars - 1):
                yield (a,) + rest

    total = 0
    for mono in monomials(k, r):
        poly = {tuple([0] * r): 1}
        for var, power in enumerate(mono):
            for _ in range(power):
                new = {}
                for e, c in poly.items():
                    for i in range(r):
                        x = m[i][var]
                        if x:
                            f = list(e)
                            f[i] += 1
                            f = tuple(f)
                            new[f] = new.get(f, 0) + c * x
                poly = new
        total += poly.get(mono, 0)
    return total


def _ext_trace(m: list[list[int]], j: int) -> int:
    """Trace of Lambda^j: sum of principal j x j minors."""
    from sympy import Matrix

    r = len(m)
    total = 0
    for rows in combinations(range(r), j):
        sub = Matrix([[m[a][b] for b in rows] for a in rows])
        total += int(sub.det()) if j else 1
    return total


def molien_brute_force(ct: CartanType, label, degree: int) -> dict[tuple[int, int], Fraction]:
    """{(k, j): multiplicity of label in Sym^k (x) Lambda^j} for k + j <= degree."""
    table = charexp.character_table(ct)
    g = weyl_group(ct)
    out = {}
    mats = [(len(c), table.values[label][i], reflection_matrix(ct, g.perms[c[0]]))
            for i, c in enumerate(table.classes)]
    r = len(mats[0][2])
    sym = {}
    for idx, (_, _, m) in enumerate(mats):
        for k in range(degree + 1):
            sym[idx, k] = _sym_trace(m, k)
    ext = {(idx, j): _ext_trace(m, j) for idx, (_, _, m) in enumerate(mats) for j in range(r + 1)}
    for k in range(degree + 1):
        for j in range(0, min(r, degree - k) + 1):
            s = sum(size * chi * sym[idx, k] * ext[idx, j] for idx, (size, chi, _) in enumerate(mats))
            out[(k, j)] = Fraction(s, len(g))
    return out


def check_molien(groups=(CartanType("A", 1), CartanType("A", 2), CartanType("B", 2)),
                 sum_groups=(CartanType("A", 1), CartanType("A", 2), CartanType("A", 3),
                             CartanType("B", 2)),
                 degree: int = 10) -> str:
    for ct in groups:
        for lab in charexp.character_table(ct).labels:
            series = series_expand(charexp.molien(ct, lab), 2 * degree)
            brute = molien_brute_force(ct, lab, degree)
            for (k, j), m in brute.items():
                tp = series.coefficient(2 * k + j) if 2 * k + j >= series.lead else ()
                got = tp[j] if j < len(tp) else 0
                _expect(got == m, f"{ct} {charexp.label_str(lab)}: Sym^{k} x Lambda^{j} "
                                  f"multiplicity {m}, closed form gives {got}")
    for ct in sum_groups:
        table = charexp.character_table(ct)
        total = RatFn(ZERO)
        for lab in table.labels:
            total = total + charexp.molien(ct, lab) * table.degree(lab)
        want = z_value() ** ct.rank
        _expect(total == want, f"{ct}: sum dim M != z^rank")
        _expect(geometric_trace(HeckeElement.one(ct)) == want, f"{ct}: Tr(1) != z^rank")
    return "closed form vs brute force to degree 10; sum identities"


# --- 9. representations ---------------------------------------------------------

def check_representations(max_size: int = 5) -> str:
    from math import factorial

    def same(a, b):
        return all(all(_zero(x - y) for x, y in zip(r, s)) for r, s in zip(a, b))

    count = 0
    for n in range(1, max_size + 1):
        dims = 0
        for lam in charexp.partitions(n):
            rep = charexp.seminormal_rep(lam)
            dims += rep.dim ** 2
            cm = rep.ctype.coxeter_matrix() if n > 1 else []
            eye = charexp.identity_matrix(rep.dim)
            for i, m in enumerate(rep.gens):
                sq = charexp.matmul(m, m)
                want = [[eye[a][b] + RatFn(DELTA) * m[a][b] for b in range(rep.dim)] for a in range(rep.dim)]
                _expect(same(sq, want), f"{lam}: quadratic relation fails for sigma_{i + 1}")
                for j in range(i + 1, len(rep.gens)):
                    k = cm[i][j]
                    w1 = ([i + 1, j + 1] * k)[:k]
                    w2 = ([j + 1, i + 1] * k)[:k]
                    _expect(same(charexp.matrix_of_word(rep, w1), charexp.matrix_of_word(rep, w2)),
                            f"{lam}: braid relation fails for ({i + 1}, {j + 1})")
                count += 1
        _expect(dims == factorial(n), f"sum of squared dimensions for n = {n} is {dims}")
    return f"{count} generator matrices"


# --- 10. KL polynomials by the bar involution ------------------------------------------

def kl_by_bar_involution(ct: CartanType) -> dict[tuple[int, int], tuple[int, ...]]:
    """P_{x,w} from the bar-invariance characterization, via R-polynomials."""
    from .hecke import rmul_gen

    g = weyl_group(ct)
    # bar(sigma_w) = bar(sigma_w') sigma_s^-1
    bars: dict[int, dict[int, BiLaurent]] = {0: {0: ONE}}
    for w in range(1, len(g)):
        word = g.reduced_word(w)
        prev = bars[g.from_word(word[:-1])]
        prod = rmul_gen(g, prev, word[-1])
        for i, c in prev.items():
            x = prod.get(i, ZERO) - DELTA * c
            if x:
                prod[i] = x
            else:
                prod.pop(i, None)
        bars[w] = prod
    out = {}
    for w in range(len(g)):
        p = {w: ONE}
        below = [x for x in range(len(g)) if x != w and g.length[x] < g.length[w]
                 and g.bruhat_leq(x, w)]
        below.sort(key=lambda x: -g.length[x])
        for x in below:
            rhs = ZERO
            for y, py in p.items():
                r = bars[y].get(x)
                if r:
                    rhs = rhs + py.bar() * r
            # p_x - bar(p_x) = rhs;  p_x in v^-1 Z[v^-1]
            px = BiLaurent({k: c for k, c in rhs.terms.items() if k[0] < 0})
            if px:
                p[x] = px
        for x, px in p.items():
            shifted = px.shift(g.length[w] - g.length[x])
            coeffs = [0] * (max(ev for ev, _ in shifted.terms) // 2 + 1)
            for (ev, _), c in shifted.terms.items():
                if ev % 2 or ev < 0:
                    raise AssertionError("KL polynomial is not a polynomial in q")
                coeffs[ev // 2] = c
            out[(x, w)] = tuple(coeffs)
    return out


def check_kl(ct: CartanType = CartanType("A", 3)) -> str:
    table = kl_table(ct).fill()
    oracle = kl_by_bar_involution(ct)
    g = weyl_group(ct)
    mine = {k: v for k, v in table.polys.items()}
    _expect(set(mine) == set(oracle), f"{ct}: pair sets differ ({len(mine)} vs {len(oracle)})")
    for key, val in oracle.items():
        _expect(mine[key] == val, f"{ct}: P_{{{g.reduced_word(key[0])},{g.reduced_word(key[1])}}} "
                                  f"= {mine[key]}, bar-involution oracle gives {val}")
    w = g.from_word([2, 1, 3, 2])
    _expect(table.poly(0, w) == (1, 1), f"P_(e, s2s1s3s2) = {table.poly(0, w)}")
    return f"{len(oracle)} pairs in {ct}"


# --- 11. knots ----------------------------------------------------------------------

def check_knots(samples: int = 100, seed: int = 11) -> str:
    unknots = ["", "1", "-1", "1 2", "-1 2", "1 -2", "-1 -2 -3", "1 2 3"]
    for word in unknots:
        b = homfly.parse_braid(word, len(word.split()) + 1)
        val = homfly.homfly_invariant(b)
        _expect(val.to_az() == {(0, 0): 1}, f"unknot [{word}] gives {val.format_az()}")
    trefoil = homfly.homfly_invariant(homfly.parse_braid("1 1 1", 2))
    _expect(trefoil.format_az() == "2a^-2 + a^-2 z^2 - a^-4", f"trefoil gives {trefoil.format_az()}")
    rng = random.Random(seed)
    for _ in range(samples):
        b = homfly.random_braid(rng, 4, 8)
        pos = rng.randint(0, len(b.letters))
        gen = rng.randint(1, b.strands - 1)
        _expect(homfly.skein_check(b, pos, gen), f"skein fails for [{b}] at {pos}, generator {gen}")
        rep = homfly.markov_invariance_suite(b, 1, rng)
        _expect(rep.passed, f"Markov move fails: {rep.failures[:1]}")
        if b.components() == 1:
            _expect(homfly.homfly_invariant(b).is_laurent_az(), f"knot [{b}] is not Laurent in (a, z)")
    return f"{samples} random braids"


# --- KL cache -------------------------------------------------------------------------

def check_kl_cache(path) -> str:
    try:
        table = KLTable.load(path)
    except (OSError, CacheError) as exc:
        raise _Fail(f"cache {path}: {exc}") from None
    bad = table.mismatches()
    if bad:
        raise _Fail(f"cache {path} disagrees with a fresh computation: {bad[0]}")
    return f"{len(table.polys)} entries"


# --- driver ----------------------------------------------------------------------------

CRITERIA: list[tuple[int, str, Callable[[str], Callable[[], str]]]] = [
    (1, "Markov rules (type A, rank <= 4)", lambda lvl: check_markov_rules),
    (2, "trace property", lambda lvl: (lambda: check_trace_property(200 if lvl == "full" else 40))),
    (3, "recursion = solver (A2, A3)", lambda lvl: check_cross_oracle),
    (4, "character formula = trace (A3)", lambda lvl: check_gomi),
    (5, "type B Markov conditions at y = -t",
     lambda lvl: (lambda: check_type_b((2, 3) if lvl == "full" else (2,)))),
    (6, "positivity of Tr(C'_w)", lambda lvl: check_positivity),
    (7, "specific values", lambda lvl: check_values),
    (8, "Molien series", lambda lvl: check_molien),
    (9, "seminormal relations",
     lambda lvl: (lambda: check_representations(5 if lvl == "full" else 4))),
    (10, "KL polynomials vs bar involution (A3)", lambda lvl: check_kl),
    (11, "knot suite", lambda lvl: (lambda: check_knots(100 if lvl == "full" else 30))),
]


def run_check(number: int, name: str, fn: Callable[[], str]) -> CheckResult:
    start = time.perf_counter()
    try:
        detail = fn()
        ok = True
    except _Fail as exc:
        ok, detail = False, str(exc)
    except Exception as exc:  # a crash is a failure of that criterion, not of the runner
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return CheckResult(number, name, ok, detail, time.perf_counter() - start)


def run_selftest(level: str = "quick", kl_cache=None, inverse_factor: Optional[BiLaurent] = None,
                 echo: Optional[Callable[[str], None]] = None) -> list[CheckResult]:
    results = []
    for number, name, make in CRITERIA:
        fn = make(level)
        if inverse_factor is not None and number in (1, 5):
            base = fn
            fn = (lambda b=base, f=inverse_factor: b(inverse_factor=f)) if number == 1 else \
                (lambda f=inverse_factor, lv=level: check_type_b((2, 3) if lv == "full" else (2,), f))
        res = run_check(number, name, fn)
        results.append(res)
        if echo:
            echo(res.line())
    if kl_cache is not None:
        res = run_check(12, f"KL cache {kl_cache}", lambda: check_kl_cache(kl_cache))
        results.append(res)
        if echo:
            echo(res.line())
    return results
