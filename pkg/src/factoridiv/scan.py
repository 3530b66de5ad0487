"""Range scanning for smooth polynomial values.

A value f(n) is a hit at exponent theta = j/k when its largest prime
factor P+ satisfies (P+)**k < n**j (exact integer comparison, never
floating point).  The scanner trial-divides by all primes up to the
integer k-th root of n**j; if a cofactor above 1 survives, every one of
its prime factors exceeds that root, so the value is certainly not a
hit.  This early abort never misclassifies.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction

from .construct import WitnessCertificate
from .intpoly import IntPoly
from .numtheory import decimal_log_ratio, sieve_primes

__all__ = [
    "ScanRecord",
    "ScanSummary",
    "scan_range",
    "scan_parallel",
    "record_json",
    "certificate_smoothness",
]


@dataclass(frozen=True)
class ScanRecord:
    n: int
    value: int
    p_plus: int
    exponent: str  # log(P+)/log(n), four decimal places


@dataclass(frozen=True)
class ScanSummary:
    examined: int
    hits: int
    unresolved: int
    min_exponent: str | None


def _integer_kth_root(x: int, k: int) -> int:
    """Largest r with r**k <= x."""
    if x < 0 or k < 1:
        raise ValueError("need x >= 0 and k >= 1")
    if k == 1 or x < 2:
        return x
    r = 1 << (-(-x.bit_length() // k))
    while True:
        nr = ((k - 1) * r + x // r ** (k - 1)) // k
        if nr >= r:
            break
        r = nr
    while r**k > x:
        r -= 1
    while (r + 1) ** k <= x:
        r += 1
    return r


def scan_range(
    poly: IntPoly,
    start: int,
    stop: int,
    theta: Fraction,
    *,
    division_budget: int = 5_000_000,
) -> tuple[list[ScanRecord], ScanSummary]:
    """Scan n in [start, stop] and record every hit.

    division_budget caps trial divisions per value; a value that cannot
    be resolved within it is counted unresolved and never recorded."""
    theta = Fraction(theta)
    if not 0 < theta < 1:
        raise ValueError("theta must be strictly between 0 and 1")
    if start < 2:
        raise ValueError("scan starts at n >= 2")
    if stop < start:
        raise ValueError("empty range")
    j, k = theta.numerator, theta.denominator
    t_cap = _integer_kth_root(stop**j, k)
    primes = sieve_primes(t_cap)
    records: list[ScanRecord] = []
    examined = 0
    unresolved = 0
    for n in range(start, stop + 1):
        examined += 1
        value = poly.evaluate(n)
        rem = abs(value)
        n_pow = n**j
        if rem <= 1:
            # no prime factors at all: vacuous hit
            records.append(ScanRecord(n, value, 1, "0.0000"))
            continue
        t_n = _integer_kth_root(n_pow, k)
        p_plus = 1
        budget = division_budget
        aborted = False
        for p in primes:
            if p > t_n or rem == 1:
                break
            budget -= 1
            if budget < 0:
                aborted = True
                break
            if rem % p == 0:
                p_plus = p
                while rem % p == 0:
                    rem //= p
            elif p * p > rem:
                # remaining cofactor is prime; classify it directly
                break
        if aborted:
            unresolved += 1
            continue
        if rem > 1:
            if rem <= t_n:
                # the prime cofactor is still below the threshold root
                p_plus = max(p_plus, rem)
                rem = 1
            else:
                continue  # some prime factor exceeds t_n: certain non-hit
        if p_plus**k < n_pow:
            records.append(
                ScanRecord(n, value, p_plus, str(decimal_log_ratio(p_plus, n)))
            )
    exps = [Decimal(rec.exponent) for rec in records]
    summary = ScanSummary(
        examined=examined,
        hits=len(records),
        unresolved=unresolved,
        min_exponent=str(min(exps)) if exps else None,
    )
    return records, summary


def _scan_chunk(args):
    coeffs, start, stop, num, den, division_budget = args
    records, summary = scan_range(
        IntPoly(coeffs),
        start,
        stop,
        Fraction(num, den),
        division_budget=division_budget,
    )
    return (
        [(r.n, r.value, r.p_plus, r.exponent) for r in records],
        (summary.examined, summary.hits, summary.unresolved, summary.min_exponent),
    )


def scan_parallel(
    poly: IntPoly,
    start: int,
    stop: int,
    theta: Fraction,
    jobs: int,
    *,
    division_budget: int = 5_000_000,
) -> tuple[list[ScanRecord], ScanSummary]:
    """Same result as scan_range, computed in contiguous chunks.

    Chunks partition [start, stop] in order, so the merged record list is
    identical to the sequential one."""
    if jobs < 1:
        raise ValueError("jobs must be positive")
    theta = Fraction(theta)
    if jobs == 1 or stop - start + 1 < jobs:
        return scan_range(poly, start, stop, theta,
                          division_budget=division_budget)
    from concurrent.futures import ProcessPoolExecutor

    total = stop - start + 1
    bounds = [start + total * i // jobs for i in range(jobs)] + [stop + 1]
    tasks = [
        (tuple(poly.coeffs), bounds[i], bounds[i + 1] - 1,
         theta.numerator, theta.denominator, division_budget)
        for i in range(jobs)
        if bounds[i] <= bounds[i + 1] - 1
    ]
    records: list[ScanRecord] = []
    examined = hits = unresolved = 0
    minima: list[Decimal] = []
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for recs, summ in pool.map(_scan_chunk, tasks):
            records.extend(ScanRecord(*r) for r in recs)
            examined += summ[0]
            hits += summ[1]
            unresolved += summ[2]
            if summ[3] is not None:
                minima.append(Decimal(summ[3]))
    summary = ScanSummary(
        examined=examined,
        hits=hits,
        unresolved=unresolved,
        min_exponent=str(min(minima)) if minima else None,
    )
    return records, summary


def record_json(rec: ScanRecord) -> str:
    """One scan record as a JSON line; integers as decimal strings."""
    return json.dumps(
        {
            "n": str(rec.n),
            "value": str(rec.value),
            "p_plus": str(rec.p_plus),
            "exponent": rec.exponent,
        },
        separators=(",", ":"),
    )


def certificate_smoothness(cert: WitnessCertificate) -> Decimal:
    """log(max factor)/log(n) to four decimal places."""
    return decimal_log_ratio(max(cert.factors), cert.n)
