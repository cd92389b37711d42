"""
Markov traces on the Hecke algebras of the A, B and D towers.

All trace values on a rank-n algebra are stored as numerators over (1 - q)^n;
z = (1 + v t)/(1 - q) is the value of the identity at rank 1.

* ocneanu_trace: the type A recursion (cyclicity + Markov rule on the top
  generator).
* solve_trace: the Markov conditions (centrality, tower, stabilization and
  the extra T_{n-1} / U_{2n-1} condition with parameter y) solved as an exact
  linear system, one rank at a time.
* geometric_trace: type A recursion, or the solver at y = -t.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Optional

from .coxeter import CartanType, WeylElement, embedding, restriction, weyl_group
from .hecke import HeckeElement, eval_braid, kl_basis, kl_table, lmul_gen, rmul_gen
from .linsolve import SolveError, precheck, solve
from .ring import ONE, ONE_MINUS_Q, T, V, ZERO, BiLaurent, RatFn, series_expand

Z_NUM = ONE + V * T  # numerator of z = (1 + v t)/(1 - q)
MINUS_T = -T

SOLVER_BUDGET = {"A": 3, "B": 3, "D": 3}


class UnsupportedTrace(ValueError):
    pass


def _d4_enabled() -> bool:
    return os.environ.get("MTK_ENABLE_D4", "") not in ("", "0")


def z_value() -> RatFn:
    return RatFn(Z_NUM, ONE_MINUS_Q)


@dataclass
class TraceTable:
    """Values Tr(sigma_w) = numerators[w] / (1 - q)^den_power, w in enumeration order."""

    ctype: CartanType
    y: Optional[BiLaurent]
    numerators: list[BiLaurent]
    den_power: int
    method: str = "solver"
    _den: BiLaurent = field(default=None, repr=False)

    def __post_init__(self):
        self._den = ONE_MINUS_Q ** self.den_power

    def value(self, w: "WeylElement | int") -> RatFn:
        i = w.index if isinstance(w, WeylElement) else w
        return RatFn(self.numerators[i], self._den)

    def numerator(self, h: HeckeElement) -> BiLaurent:
        if h.ctype != self.ctype:
            raise TypeError(f"element of H({h.ctype}) passed to a trace on H({self.ctype})")
        total = ZERO
        for i, c in h.coeffs.items():
            total = total + c * self.numerators[i]
        return total

    def trace(self, h: HeckeElement) -> RatFn:
        return RatFn(self.numerator(h), self._den)

    def to_json(self) -> list[dict]:
        g = weyl_group(self.ctype)
        return [
            {"w": " ".join(map(str, g.reduced_word(i))), "value": self.value(i).to_json()}
            for i in range(len(g))
        ]

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)


def _trivial_table() -> TraceTable:
    return TraceTable(CartanType("A", 0), None, [ONE], 0, method="base")


# --- type A: Jones-Ocneanu recursion ------------------------------------------

_OCNEANU: dict[int, TraceTable] = {}


def ocneanu_table(n: int) -> TraceTable:
    if n in _OCNEANU:
        return _OCNEANU[n]
    if n == 0:
        table = _trivial_table()
        _OCNEANU[0] = table
        return table
    ct = CartanType("A", n)
    lower_ct = ct.parabolic()
    lower = ocneanu_table(n - 1)
    g, lg = weyl_group(ct), weyl_group(lower_ct)
    back = restriction(lower_ct, ct)
    nums = []
    for w in range(len(g)):
        u, r = g.tower_decompose(w)
        u_low = back[u]
        if not r:
            nums.append(Z_NUM * lower.numerators[u_low])
            continue
        # r = s_n s_{n-1} ... s_k ; Tr(sigma_u sigma_r) = Tr(sigma_n * sigma_{n-1..k} sigma_u)
        assert r[0] == n and list(r) == list(range(n, n - len(r), -1)), r
        coeffs = {u_low: ONE}
        for s in reversed(r[1:]):
            coeffs = lmul_gen(lg, coeffs, s)
        inner = ZERO
        for i, c in coeffs.items():
            inner = inner + c * lower.numerators[i]
        nums.append(MINUS_T * ONE_MINUS_Q * inner)
    table = TraceTable(ct, None, nums, n, method="ocneanu")
    _OCNEANU[n] = table
    return table


def ocneanu_trace(n: int, h: HeckeElement) -> RatFn:
    if h.ctype != CartanType("A", n):
        raise UnsupportedTrace(f"ocneanu_trace(A{n}) applied to an element of H({h.ctype})")
    return ocneanu_table(n).trace(h)


# --- types A, B, D: the linear system ------------------------------------------

def special_braid(ct: CartanType) -> Optional[list[int]]:
    """Braid word of T_{n-1} (type B) or U_{n-1} (type D, even n >= 4), else None."""
    n = ct.rank
    if ct.family == "B":
        return list(range(n, 0, -1)) + [-i for i in range(2, n + 1)]
    if ct.family == "D" and n % 2 == 0 and n >= 4:
        return list(range(n, 2, -1)) + [1, 2] + [-i for i in range(3, n + 1)]
    return None


def _applies_stabilization(ct: CartanType) -> bool:
    # in B_1 the top generator is T_0 and carries the y-condition instead
    return not (ct.family == "B" and ct.rank == 1)


def markov_system(ct: CartanType, y: BiLaurent, lower: TraceTable):
    """Rows (coefficients, rhs) for the unknowns (1-q)^n Tr(sigma_w)."""
    n = ct.rank
    if lower.den_power != n - 1:
        raise AssertionError("lower table has the wrong denominator")
    g = weyl_group(ct)
    emb = embedding(lower.ctype, ct)
    rows = []
    for i, num in enumerate(lower.numerators):
        rows.append(({emb[i]: ONE}, Z_NUM * num))
    if _applies_stabilization(ct):
        for i, num in enumerate(lower.numerators):
            rows.append(({g.lmul[emb[i]][n - 1]: ONE}, MINUS_T * ONE_MINUS_Q * num))
    word = special_braid(ct)
    if word is not None:
        special = eval_braid(ct, word)
        for i, num in enumerate(lower.numerators):
            prod = special * HeckeElement(g, {emb[i]: ONE})
            rows.append((prod.coeffs, y * ONE_MINUS_Q * num))
    for s in ct.generators:
        for w in range(len(g)):
            left = lmul_gen(g, {w: ONE}, s)
            right = rmul_gen(g, {w: ONE}, s)
            diff = dict(left)
            for j, c in right.items():
                x = diff.get(j, ZERO) - c
                if x:
                    diff[j] = x
                else:
                    diff.pop(j, None)
            if diff:
                rows.append((diff, ZERO))
    return rows


_SOLVED: dict[tuple[CartanType, BiLaurent], TraceTable] = {}


def solve_trace(ct: CartanType, y: "BiLaurent | int", *, check_budget: bool = True) -> TraceTable:
    """The unique Markov trace table on H(ct) with special parameter y."""
    y = BiLaurent.coerce(y)
    if ct.rank == 0:
        return _trivial_table()
    if check_budget:
        limit = SOLVER_BUDGET[ct.family]
        if ct.family == "D" and ct.rank == 4 and _d4_enabled():
            limit = 4
        if ct.rank > limit:
            raise UnsupportedTrace(
                f"{ct} is beyond the solver budget (max rank {limit}"
                + ("; set MTK_ENABLE_D4=1 for D4)" if ct.family == "D" else ")")
            )
    key = (ct, y)
    if key in _SOLVED:
        return _SOLVED[key]
    lower = solve_trace(ct.parabolic(), y, check_budget=False)
    rows = markov_system(ct, y, lower)
    ncols = len(weyl_group(ct))
    try:
        precheck(rows, ncols, seed=hash((ct.family, ct.rank)) & 0xFFFF)
        nums = solve(rows, ncols)
    except SolveError as exc:
        raise SolveError(f"Markov system for {ct}: {exc}", exc.rank, exc.ncols) from None
    table = TraceTable(ct, y, nums, ct.rank, method="solver")
    _SOLVED[key] = table
    return table


def geometric_table(ct: CartanType) -> TraceTable:
    if ct.family == "A":
        return ocneanu_table(ct.rank)
    return solve_trace(ct, MINUS_T)


def geometric_trace(h: HeckeElement) -> RatFn:
    """The trace at y = -t: Jones-Ocneanu in type A, the solver otherwise."""
    return geometric_table(h.ctype).trace(h)


def hochschild_series(w: WeylElement) -> RatFn:
    """Tr(C'_w): the bigraded Poincare series of the Hochschild homology of S_w."""
    return geometric_trace(kl_basis(kl_table(w.ctype), w))


# --- positivity -------------------------------------------------------------

@dataclass(frozen=True)
class PositivityReport:
    passed: bool
    order: Optional[int] = None
    witness: Optional[tuple] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.passed


def positivity_report(f: "RatFn | BiLaurent", cutoff: int, rank: int) -> PositivityReport:
    """Pass iff every series coefficient up to v^cutoff lies in N[t] with t-degree <= rank."""
    window = series_expand(f, cutoff)
    for k in range(window.lead, cutoff + 1):
        tp = window.coefficient(k)
        if any(c < 0 for c in tp):
            return PositivityReport(False, k, tp, "negative coefficient")
        if len(tp) - 1 > rank:
            return PositivityReport(False, k, tp, f"t-degree {len(tp) - 1} exceeds {rank}")
    return PositivityReport(True)
