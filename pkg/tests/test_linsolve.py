import random

import pytest

from mtk.linsolve import SolveError, modular_rank, precheck, solve
from mtk.ring import ONE, ONE_MINUS_Q, T, V, ZERO, BiLaurent


def test_unit_pivots():
    # x + v y = 1 + v^2 t ; y = t
    rows = [({0: ONE, 1: V}, ONE + V * V * T), ({1: ONE}, T)]
    assert solve(rows, 2) == [ONE + V * V * T - V * T, T]


def test_non_unit_pivots():
    # (1 - q) x = (1 - q) t ; (1 + v) x + (1 - q) y = (1 + v) t
    a = ONE_MINUS_Q
    rows = [({0: a}, a * T), ({0: ONE + V, 1: a}, (ONE + V) * T)]
    assert solve(rows, 2) == [T, ZERO]


def test_inconsistent():
    rows = [({0: ONE}, ONE), ({0: ONE}, T)]
    with pytest.raises(SolveError, match="inconsistent"):
        solve(rows, 1)


def test_underdetermined_reports_defect():
    rows = [({0: ONE, 1: ONE}, ONE)]
    with pytest.raises(SolveError) as info:
        solve(rows, 2)
    assert info.value.defect == 1


def test_non_laurent_solution():
    rows = [({0: ONE + V}, ONE)]
    with pytest.raises(SolveError, match="not a Laurent"):
        solve(rows, 1)


def test_precheck():
    rows = [({0: ONE, 1: ONE}, ONE)]
    with pytest.raises(SolveError):
        precheck(rows, 2)
    precheck([({0: ONE}, T), ({1: V}, ONE)], 2)


def test_random_triangular_systems():
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randint(2, 6)
        xs = [BiLaurent.monomial(rng.randint(-2, 2), rng.randint(-2, 2), rng.randint(0, 2)) for _ in range(n)]
        rows = []
        for i in range(n):
            coefs = {i: BiLaurent.monomial(rng.choice([1, -1]), rng.randint(-2, 2))}
            for j in range(i + 1, n):
                if rng.random() < 0.5:
                    coefs[j] = ONE + BiLaurent.monomial(rng.randint(-3, 3), rng.randint(0, 3), 1)
            rhs = sum((c * xs[j] for j, c in coefs.items()), ZERO)
            rows.append((coefs, rhs))
        rng.shuffle(rows)
        assert solve(rows, n) == xs
        rank, ok = modular_rank(rows, n, rng)
        assert rank == n and ok
