"""
Exact solution of sparse linear systems over Z[v^+-1, t^+-1].

Elimination is fraction-free: unit pivots (+-monomials) are preferred and make a
step exact in the Laurent ring; otherwise rows are cross-multiplied by the
pivot and stripped of integer content.  Gauss-Jordan form is kept so that the
final solve is one exact division per unknown.

A randomized modular rank computation at random points (v, t) is used as a
cheap consistency and rank pre-check before the symbolic pass.
"""

from __future__ import annotations

import random
from math import gcd
from typing import Sequence

from .ring import ZERO, BiLaurent, InexactDivision

Row = tuple[dict[int, BiLaurent], BiLaurent]

PRIME = (1 << 61) - 1


class SolveError(ArithmeticError):
    def __init__(self, message: str, rank: int | None = None, ncols: int | None = None):
        super().__init__(message)
        self.rank = rank
        self.ncols = ncols

    @property
    def defect(self) -> int | None:
        if self.rank is None or self.ncols is None:
            return None
        return self.ncols - self.rank


def modular_rank(rows: Sequence[Row], ncols: int, rng: random.Random) -> tuple[int, bool]:
    """(rank, consistent) of the system specialized at a random point mod a prime."""
    p = PRIME
    v0 = rng.randrange(2, p - 1)
    t0 = rng.randrange(2, p - 1)
    work: list[tuple[dict[int, int], int]] = []
    for coefs, rhs in rows:
        r = {}
        for j, c in coefs.items():
            x = c.eval_mod(v0, t0, p)
            if x:
                r[j] = x
        work.append((r, rhs.eval_mod(v0, t0, p)))
    rank = 0
    consistent = True
    pivot_rows: dict[int, tuple[dict[int, int], int]] = {}
    for r, b in work:
        r = dict(r)
        # reduce against existing pivots (in insertion order)
        for col, (pr, pb) in pivot_rows.items():
            a = r.get(col)
            if a:
                for j, c in pr.items():
                    x = (r.get(j, 0) - a * c) % p
                    if x:
                        r[j] = x
                    else:
                        r.pop(j, None)
                b = (b - a * pb) % p
        if not r:
            if b:
                consistent = False
            continue
        col = min(r)
        inv = pow(r[col], -1, p)
        r = {j: c * inv % p for j, c in r.items()}
        b = b * inv % p
        # keep pivot rows fully reduced with respect to each other
        for other, (pr, pb) in list(pivot_rows.items()):
            a = pr.get(col)
            if a:
                for j, c in r.items():
                    x = (pr.get(j, 0) - a * c) % p
                    if x:
                        pr[j] = x
                    else:
                        pr.pop(j, None)
                pivot_rows[other] = (pr, (pb - a * b) % p)
        pivot_rows[col] = (r, b)
        rank += 1
    return rank, consistent


def precheck(rows: Sequence[Row], ncols: int, seed: int = 0, attempts: int = 2) -> None:
    """Raise SolveError if random specializations show a rank defect or inconsistency."""
    rng = random.Random(seed)
    results = [modular_rank(rows, ncols, rng) for _ in range(attempts)]
    if all(not ok for _, ok in results):
        raise SolveError("inconsistent system (detected at random specializations)")
    best = max(r for r, _ in results)
    if best < ncols:
        raise SolveError(
            f"underdetermined system: rank {best} < {ncols} unknowns at random specializations",
            rank=best,
            ncols=ncols,
        )


def _pivot_cost(c: BiLaurent) -> tuple:
    return (0 if c.is_unit() else 1, len(c), max(abs(x) for x in c.terms.values()))


def _strip_content(coefs: dict[int, BiLaurent], rhs: BiLaurent) -> tuple[dict, BiLaurent]:
    g = rhs.content()
    for c in coefs.values():
        g = gcd(g, c.content())
        if g == 1:
            return coefs, rhs
    if g > 1:
        coefs = {j: c.exact_div(g) for j, c in coefs.items()}
        rhs = rhs.exact_div(g)
    return coefs, rhs


def solve(rows: Sequence[Row], ncols: int) -> list[BiLaurent]:
    """Unique solution of the system, each component in the Laurent ring.

    Raises SolveError when the system is inconsistent, has a rank defect, or the
    solution is not Laurent-polynomial.
    """
    store: dict[int, list] = {}
    where: dict[int, set[int]] = {j: set() for j in range(ncols)}
    for rid, (coefs, rhs) in enumerate(rows):
        coefs = {j: c for j, c in coefs.items() if c}
        if not coefs:
            if rhs:
                raise SolveError("inconsistent system: 0 = nonzero in the input")
            continue
        store[rid] = [coefs, rhs]
        for j in coefs:
            where[j].add(rid)

    pending = set(store)
    pivot_of: dict[int, int] = {}
    while pending:
        best = None
        for rid in pending:
            coefs = store[rid][0]
            for j, c in coefs.items():
                key = _pivot_cost(c) + (len(coefs), len(where[j]), rid, j)
                if best is None or key < best[0]:
                    best = (key, rid, j)
        _, prow, pcol = best
        pending.discard(prow)
        coefs, rhs = store[prow]
        piv = coefs[pcol]
        if piv.is_unit():
            inv = piv.monomial_inverse()
            coefs = {j: c * inv for j, c in coefs.items()}
            rhs = rhs * inv
            piv = coefs[pcol]
            store[prow] = [coefs, rhs]
        unit = piv.is_unit()
        pivot_of[pcol] = prow
        for rid in list(where[pcol]):
            if rid == prow:
                continue
            rc, rr = store[rid]
            a = rc[pcol]
            if unit:
                new = dict(rc)
                for j, c in coefs.items():
                    x = new.get(j, ZERO) - a * c
                    if x:
                        new[j] = x
                    else:
                        new.pop(j, None)
                nr = rr - a * rhs
            else:
                new = {j: c * piv for j, c in rc.items()}
                for j, c in coefs.items():
                    x = new.get(j, ZERO) - a * c
                    if x:
                        new[j] = x
                    else:
                        new.pop(j, None)
                nr = rr * piv - a * rhs
                new, nr = _strip_content(new, nr)
            for j in set(rc) - set(new):
                where[j].discard(rid)
            for j in set(new) - set(rc):
                where[j].add(rid)
            if not new:
                del store[rid]
                pending.discard(rid)
                if nr:
                    raise SolveError(f"inconsistent system: a row reduced to 0 = {nr}")
            else:
                store[rid] = [new, nr]

    rank = len(pivot_of)
    if rank < ncols:
        raise SolveError(f"underdetermined system: rank {rank} < {ncols} unknowns", rank, ncols)
    solution = []
    for j in range(ncols):
        coefs, rhs = store[pivot_of[j]]
        if set(coefs) != {j}:
            raise AssertionError("elimination left a non-diagonal pivot row")
        try:
            solution.append(rhs.exact_div(coefs[j]))
        except InexactDivision:
            raise SolveError(f"unknown {j} is not a Laurent polynomial: ({rhs})/({coefs[j]})") from None
    return solution
