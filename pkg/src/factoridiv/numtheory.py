"""Integer utilities: primality, factorization with budgets, Legendre
valuations of factorials, and Mertens-style prime run selection.

Factorization is trial division over a small sieve followed by Brent's
variant of Pollard rho.  Rho work is metered by an iteration budget so
callers never hang on a hard semiprime; exceeding the budget raises
FactorizationBudgetError carrying whatever was already split off.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction

__all__ = [
    "BudgetExceededError",
    "FactorizationBudgetError",
    "PrimeFactorization",
    "MertensSelection",
    "sieve_primes",
    "is_probable_prime",
    "next_prime",
    "is_perfect_square",
    "valuation",
    "nu_p_factorial",
    "factorize",
    "largest_prime_factor",
    "euler_phi",
    "mertens_select",
    "find_prime_divisor_of_values",
    "decimal_log_ratio",
    "DEFAULT_FACTOR_BUDGET",
]

DEFAULT_FACTOR_BUDGET = 2_000_000

_TRIAL_BOUND = 10_000


def sieve_primes(bound: int) -> list[int]:
    """All primes <= bound, by sieve of Eratosthenes."""
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(bound) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i in range(2, bound + 1) if sieve[i]]


_SMALL_PRIMES = sieve_primes(_TRIAL_BOUND)
_SMALL_PRIME_SET = set(_SMALL_PRIMES)

# Strong-pseudoprime test with this base set is deterministic below
# 3317044064679887385961981 (Sorenson-Webster).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_DETERMINISTIC_BOUND = 3317044064679887385961981


class BudgetExceededError(Exception):
    """Base for all budget exhaustion conditions."""


@dataclass(frozen=True)
class PrimeFactorization:
    """Sorted (prime, exponent) pairs plus a unit of +-1.

    value reassembles the original integer exactly.
    """

    factors: tuple[tuple[int, int], ...]
    unit: int = 1

    @property
    def value(self) -> int:
        out = self.unit
        for p, e in self.factors:
            out *= p**e
        return out

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)


class FactorizationBudgetError(BudgetExceededError):
    """Rho ran out of iterations.

    partial holds the prime factors found so far, cofactor the remaining
    composite piece, budget the limit that was hit.
    """

    def __init__(self, m: int, partial: PrimeFactorization, cofactor: int, budget: int):
        super().__init__(
            f"factorization budget {budget} exhausted on {m}: "
            f"composite cofactor of {cofactor.bit_length()} bits remains"
        )
        self.m = m
        self.partial = partial
        self.cofactor = cofactor
        self.budget = budget


def is_probable_prime(n: int, seed: int = 0) -> bool:
    """Miller-Rabin; deterministic for n below ~3.3e24, else the fixed
    bases plus 12 deterministically seeded extra rounds."""
    if n < 2:
        return False
    if n < _TRIAL_BOUND:
        return n in _SMALL_PRIME_SET
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1

    def witness(a: int) -> bool:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            return False
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                return False
        return True

    for a in _MR_BASES:
        if witness(a):
            return False
    if n < _MR_DETERMINISTIC_BOUND:
        return True
    rng = random.Random(n ^ (seed * 0x9E3779B97F4A7C15))
    for _ in range(12):
        a = rng.randrange(2, n - 1)
        if witness(a):
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime >= n."""
    if n <= 2:
        return 2
    cand = n | 1
    while not is_probable_prime(cand):
        cand += 2
    return cand


def is_perfect_square(m: int) -> bool:
    if m < 0:
        return False
    r = math.isqrt(m)
    return r * r == m


def valuation(m: int, p: int) -> int:
    """Exponent of p in m; m nonzero, p >= 2."""
    if m == 0:
        raise ValueError("valuation of zero is undefined")
    if p < 2:
        raise ValueError("p must be at least 2")
    m = abs(m)
    v = 0
    while m % p == 0:
        m //= p
        v += 1
    return v


def nu_p_factorial(p: int, n: int) -> int:
    """Exponent of the prime p in n!, by the floor-sum formula."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if not is_probable_prime(p):
        raise ValueError(f"{p} is not prime")
    total = 0
    q = p
    while q <= n:
        total += n // q
        q *= p
    return total


def _brent_rho(n: int, budget: int, rng: random.Random) -> tuple[int, int]:
    """Return (nontrivial factor or 0, iterations used).  n odd composite."""
    used = 0
    while used < budget:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1 and used < budget:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1 and used < budget:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                used += min(m, r - k)
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
                used += 1
                if used >= budget:
                    break
        if 1 < g < n:
            return g, used
    return 0, used


def factorize(
    m: int, budget: int = DEFAULT_FACTOR_BUDGET, seed: int = 0
) -> PrimeFactorization:
    """Full prime factorization of a nonzero integer.

    Deterministic for a fixed (m, seed).  Raises FactorizationBudgetError
    when the rho iteration budget runs out, with the partial split
    attached.
    """
    if m == 0:
        raise ValueError("cannot factor zero")
    unit = -1 if m < 0 else 1
    m = abs(m)
    found: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        if p * p > m:
            break
        while m % p == 0:
            found[p] = found.get(p, 0) + 1
            m //= p
    remaining = budget
    rng = random.Random((m << 16) ^ seed ^ 0xF1D0)
    stack = [m] if m > 1 else []
    while stack:
        v = stack.pop()
        if v == 1:
            continue
        if is_probable_prime(v):
            found[v] = found.get(v, 0) + 1
            continue
        if is_perfect_square(v):
            r = math.isqrt(v)
            stack.extend((r, r))
            continue
        d, used = _brent_rho(v, remaining, rng)
        remaining -= used
        if d == 0:
            cofactor = v
            for w in stack:
                cofactor *= w
            partial = PrimeFactorization(tuple(sorted(found.items())), unit)
            raise FactorizationBudgetError(partial.value * cofactor,
                                           partial, cofactor, budget)
        stack.extend((d, v // d))
    return PrimeFactorization(tuple(sorted(found.items())), unit)


def largest_prime_factor(
    m: int, budget: int = DEFAULT_FACTOR_BUDGET, seed: int = 0
) -> int:
    """P+(m) for |m| >= 2."""
    if abs(m) < 2:
        raise ValueError("need |m| >= 2")
    return factorize(m, budget, seed).factors[-1][0]


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    out = n
    for p, _ in factorize(n).factors:
        out = out // p * (p - 1)
    return out


@dataclass(frozen=True)
class MertensSelection:
    """A run of consecutive primes whose product of p/(p-1) clears a
    threshold, with the shorter run falling below it (minimality)."""

    primes: tuple[int, ...]
    product_value: Fraction
    target: Fraction


def mertens_select(
    min_prime: int, target, ratio=Fraction(1)
) -> MertensSelection:
    """Shortest run p1 < p2 < ... of consecutive primes >= min_prime with
    prod p/(p-1) >= ratio * target.  Always selects at least one prime.
    Exact rational arithmetic throughout."""
    threshold = Fraction(ratio) * Fraction(target)
    primes: list[int] = []
    prod = Fraction(1)
    p = next_prime(max(min_prime, 2))
    while True:
        primes.append(p)
        prod *= Fraction(p, p - 1)
        if prod >= threshold:
            return MertensSelection(tuple(primes), prod, threshold)
        p = next_prime(p + 1)


def find_prime_divisor_of_values(
    q,
    lower_bound: int,
    scan_limit: int = 10_000,
    budget: int = DEFAULT_FACTOR_BUDGET,
    seed: int = 0,
) -> tuple[int, int]:
    """First (l, p) with p prime, p > lower_bound, p | q(l), scanning
    l = 0, 1, 2, ... and taking the smallest qualifying prime of each
    value.  Raises BudgetExceededError after scan_limit values."""
    for l in range(scan_limit + 1):
        v = abs(q.evaluate(l))
        if v < 2:
            continue
        fac = factorize(v, budget, seed)
        for p, _ in fac.factors:
            if p > lower_bound:
                return l, p
    raise BudgetExceededError(
        f"no prime divisor above {lower_bound} among q(0..{scan_limit})"
    )


def decimal_log_ratio(a: int, b: int, places: int = 4) -> Decimal:
    """log(a)/log(b) for integers a >= 1, b >= 2, quantized to the given
    number of decimal places (banker's rounding)."""
    if a < 1 or b < 2:
        raise ValueError("need a >= 1 and b >= 2")
    with localcontext() as ctx:
        ctx.prec = 50
        val = Decimal(a).ln() / Decimal(b).ln()
        return val.quantize(Decimal(1).scaleb(-places))
