"""Pell equation solutions and divisibility index streams."""

import itertools
import math

import pytest
from sympy.solvers.diophantine.diophantine import diop_DN

from factoridiv.pell import (
    PellBudgetError,
    fundamental_solution,
    indices_with_s_divisible,
    pair_at,
    stream,
)


def test_fundamental_anchors():
    assert fundamental_solution(2) == (3, 2)
    assert fundamental_solution(3) == (2, 1)
    assert fundamental_solution(5) == (9, 4)
    assert fundamental_solution(13) == (649, 180)
    assert fundamental_solution(61) == (1766319049, 226153980)
    assert fundamental_solution(661) == (
        16421658242965910275055840472270471049,
        638728478116949861246791167518480580,
    )


def test_fundamental_rejects_squares_and_small():
    for d in (-3, 0, 1, 4, 9, 100):
        with pytest.raises(ValueError):
            fundamental_solution(d)


def test_fundamental_brute_force_small():
    for d in range(2, 50):
        if math.isqrt(d) ** 2 == d:
            continue
        s = 1
        while not math.isqrt(1 + d * s * s) ** 2 == 1 + d * s * s:
            s += 1
        r = math.isqrt(1 + d * s * s)
        assert fundamental_solution(d) == (r, s)


def test_fundamental_against_sympy():
    for d in range(2, 301):
        if math.isqrt(d) ** 2 == d:
            continue
        sols = diop_DN(d, 1)
        assert sols, f"oracle found nothing for {d}"
        r, s = min((abs(x), abs(y)) for x, y in sols)
        assert fundamental_solution(d) == (r, s)


def test_digit_budget():
    with pytest.raises(PellBudgetError) as ei:
        fundamental_solution(661, digit_budget=5)
    assert ei.value.d == 661
    assert ei.value.budget == 5


def test_stream_and_pair_at():
    for d in (2, 3, 13, 61):
        fund = fundamental_solution(d)
        pairs = list(itertools.islice(stream(d, fund), 12))
        assert pairs[0] == (1, 0)
        assert pairs[1] == fund
        for k, (r, s) in enumerate(pairs):
            assert r * r - d * s * s == 1
            assert pair_at(d, fund, k) == (r, s)
        # s_k strictly increasing
        assert all(a[1] < b[1] for a, b in zip(pairs, pairs[1:]))


def test_stream_rejects_non_solution():
    with pytest.raises(ValueError):
        stream(2, (3, 1))
    with pytest.raises(ValueError):
        stream(2, (0, 0))


def test_indices_modulus_one():
    fund = fundamental_solution(2)
    assert list(itertools.islice(indices_with_s_divisible(2, fund, 1), 5)) == [
        0, 1, 2, 3, 4,
    ]
    with pytest.raises(ValueError):
        next(indices_with_s_divisible(2, fund, 0))


def test_indices_match_direct_scan():
    for d in (2, 3, 5, 13, 61, 97):
        fund = fundamental_solution(d)
        for m in (2, 3, 7, 12, 25, 30):
            got = list(itertools.islice(indices_with_s_divisible(d, fund, m), 30))
            direct = []
            for k, (_, s) in enumerate(stream(d, fund)):
                if s % m == 0:
                    direct.append(k)
                    if len(direct) == 30:
                        break
            assert got == direct, (d, m)
            assert got[0] == 0
            assert all(a < b for a, b in zip(got, got[1:]))
