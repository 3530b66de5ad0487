"""Pell equation r**2 - D s**2 = 1: fundamental solutions, the solution
stream, and divisibility filtering of the s-sequence.

The fundamental solution comes from the continued fraction expansion of
sqrt(D); convergents are tested directly, so no period bookkeeping is
needed.  Solutions (r_k, s_k) then follow the linear recurrence
x_{k+1} = 2 r1 x_k - x_{k-1} starting from (1, 0) and (r1, s1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "PellBudgetError",
    "PellStream",
    "fundamental_solution",
    "stream",
    "indices_with_s_divisible",
    "pair_at",
]

DEFAULT_DIGIT_BUDGET = 5000


def _decimal_digits_upper(n: int) -> int:
    # upper estimate of decimal digits without str(), safe for huge n
    return n.bit_length() * 30103 // 100000 + 1


class PellBudgetError(Exception):
    """Convergents outgrew the decimal digit budget before a solution."""

    def __init__(self, d: int, digits: int, budget: int):
        super().__init__(
            f"no fundamental solution for D={d} within {budget} digits "
            f"(reached about {digits})"
        )
        self.d = d
        self.digits = digits
        self.budget = budget


def fundamental_solution(
    d: int, digit_budget: int = DEFAULT_DIGIT_BUDGET
) -> tuple[int, int]:
    """Least positive (r, s) with r**2 - d s**2 = 1, for nonsquare d >= 2.

    Walks the continued fraction convergents h/k of sqrt(d); the first
    convergent with h**2 - d k**2 = 1 is the fundamental solution.
    """
    if d < 2:
        raise ValueError("need d >= 2")
    a0 = math.isqrt(d)
    if a0 * a0 == d:
        raise ValueError(f"{d} is a perfect square")
    p, q, a = 0, 1, a0
    h_prev, h = 1, a0
    k_prev, k = 0, 1
    while True:
        if h * h - d * k * k == 1:
            return h, k
        digits = _decimal_digits_upper(h)
        if digits > digit_budget:
            raise PellBudgetError(d, digits, digit_budget)
        p = a * q - p
        q = (d - p * p) // q
        a = (a0 + p) // q
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev


@dataclass
class PellStream:
    """Iterator over all solutions (r_k, s_k), k = 0, 1, 2, ...

    Starts at the trivial (1, 0); s_k is strictly increasing.
    """

    d: int
    fundamental: tuple[int, int]
    _prev: tuple[int, int] | None = None
    _cur: tuple[int, int] | None = None

    def __post_init__(self):
        r1, s1 = self.fundamental
        if r1 <= 0 or s1 <= 0 or r1 * r1 - self.d * s1 * s1 != 1:
            raise ValueError("not a Pell solution")

    def __iter__(self):
        return self

    def __next__(self) -> tuple[int, int]:
        if self._cur is None:
            self._cur = (1, 0)
            return self._cur
        if self._prev is None:
            self._prev, self._cur = self._cur, self.fundamental
            return self._cur
        r1 = self.fundamental[0]
        nxt = (
            2 * r1 * self._cur[0] - self._prev[0],
            2 * r1 * self._cur[1] - self._prev[1],
        )
        self._prev, self._cur = self._cur, nxt
        return self._cur


def stream(d: int, fundamental: tuple[int, int] | None = None) -> PellStream:
    if fundamental is None:
        fundamental = fundamental_solution(d)
    return PellStream(d, fundamental)


def pair_at(d: int, fundamental: tuple[int, int], k: int) -> tuple[int, int]:
    """k-th solution by fast powering of (r1 + s1 sqrt(d))."""
    if k < 0:
        raise ValueError("index must be nonnegative")
    r1, s1 = fundamental
    r, s = 1, 0
    br, bs = r1, s1
    e = k
    while e:
        if e & 1:
            r, s = r * br + d * s * bs, r * bs + s * br
        br, bs = br * br + d * bs * bs, 2 * br * bs
        e >>= 1
    return r, s


def indices_with_s_divisible(d: int, fundamental: tuple[int, int], m: int):
    """Generator of all k >= 0 with m | s_k, in increasing order.

    The pair sequence (r_k, s_k) mod m is purely periodic: the step
    matrix [[r1, d s1], [s1, r1]] has determinant 1, so it is invertible
    mod m and the orbit of (1, 0) is a cycle of length at most m**2.
    All residue-zero offsets within one period generate the full index
    set as a union of arithmetic progressions.
    """
    if m < 1:
        raise ValueError("modulus must be positive")
    if m == 1:
        k = 0
        while True:
            yield k
            k += 1
    r1m, s1m = fundamental[0] % m, fundamental[1] % m
    start = ((1 % m, 0), (r1m, s1m))
    zeros = [0]  # s_0 = 0 always
    prev, cur = start
    k = 1
    while True:
        if k > 1 and (prev, cur) == start:
            period = k - 1
            break
        if cur[1] == 0:
            zeros.append(k)
        prev, cur = cur, (
            (2 * r1m * cur[0] - prev[0]) % m,
            (2 * r1m * cur[1] - prev[1]) % m,
        )
        k += 1
        assert k <= m * m + 2, "pair period exceeded the m**2 bound"
    zeros = [z for z in zeros if z < period]
    base = 0
    while True:
        for z in zeros:
            yield base + z
        base += period
