"""Constructors for witness certificates of the divisibility P(n) | n!.

A certificate names n and a factor list for P(n).  Under the "distinct"
rule the factors are pairwise distinct positive integers not exceeding n,
so their product automatically divides n!.  Under the "legendre" rule the
prime valuations of the product are compared against the valuations of n!
instead.

Families covered:

  quadratic            P(P(m) + m) = P(m) * Q(m) with Q = P(P(x)+x)/P(x)
  cubic                two-level splitting of P(g(x)) into cubic factors,
                       linked through a Pell equation so the two level-2
                       arguments meet at a common value
  quartic, cubic*linear  the cubic pipeline on a Pell subsequence forcing
                       a known divisor of the linear part
  quartic, quadratic*quadratic  a two-quadratic chain with a shared
                       constant term, again linked through a Pell equation
  binomial x**m - 1    n = s**N with N a product of primes chosen by a
                       Mertens-type criterion; cyclotomic values factor n
  cyclotomic Phi_m     the same idea applied to Phi_m(s**N)
  chebyshev            n = T_N(s); the psi values along divisors of m*N
                       factor the product of T_m(n)

Every constructor is deterministic for fixed arguments and either returns
fully checked certificates or raises ConstructionBudgetError carrying the
partial results and a structured report of what blocked the search.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .intpoly import IntPoly, fraction_content_split
from .numtheory import (
    BudgetExceededError,
    MertensSelection,
    euler_phi,
    find_prime_divisor_of_values,
    is_perfect_square,
    next_prime,
)
from .pell import (
    PellBudgetError,
    fundamental_solution,
    indices_with_s_divisible,
    pair_at,
    stream,
)
from .specialpoly import (
    chebyshev_factor_values,
    chebyshev_t,
    chebyshev_t_value,
    cyclotomic,
)

__all__ = [
    "WitnessCertificate",
    "ConstructionBudgetError",
    "SchinzelPieces",
    "SchinzelInconsistency",
    "schinzel_pieces",
    "construct_quadratic",
    "construct_cubic",
    "construct_quartic_cubic_linear",
    "construct_quartic_biquadratic",
    "construct_binomial_power",
    "construct_cyclotomic",
    "construct_chebyshev",
]


@dataclass(frozen=True)
class WitnessCertificate:
    """A claim that the factor list multiplies to |poly(n)|.

    The claim itself is checked by the verify module; construction only
    enforces structural sanity so that tampered certificates remain
    representable (and rejectable).
    """

    poly: IntPoly
    class_tag: str
    n: int
    factors: tuple[int, ...]
    params: dict[str, str]
    mode_hint: str

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise ValueError("n must be an integer >= 2")
        if not self.factors:
            raise ValueError("empty factor list")
        for f in self.factors:
            if not isinstance(f, int) or f < 1:
                raise ValueError("factors must be positive integers")
        if self.mode_hint not in ("distinct", "legendre"):
            raise ValueError(f"unknown mode hint {self.mode_hint!r}")
        object.__setattr__(self, "factors", tuple(self.factors))


class ConstructionBudgetError(BudgetExceededError):
    """Search space or a sub-budget ran out.

    partial holds certificates already completed; report is a flat
    string-to-string dict describing the blocking point.
    """

    def __init__(self, partial, report):
        reason = report.get("reason", "search space exhausted")
        super().__init__(f"construction stopped: {reason}")
        self.partial = list(partial)
        self.report = dict(report)


# --------------------------------------------------------------------------
# shared emission helpers


def _product(values) -> int:
    out = 1
    for v in values:
        out *= v
    return out


def _absorb_content(values: list[int], content: int, n: int) -> list[int]:
    # Fold |content| into one factor: smallest factor whose scaled value
    # still fits the distinct rule; if none fits, the smallest regardless
    # (the mode decision below will demote the certificate).
    c = abs(content)
    if c == 1:
        return list(values)
    order = sorted(range(len(values)), key=lambda i: values[i])
    for i in order:
        cand = values[i] * c
        rest = values[:i] + values[i + 1 :]
        if cand <= n and cand not in rest:
            return values[:i] + [cand] + values[i + 1 :]
    i = order[0]
    return values[:i] + [values[i] * c] + values[i + 1 :]


def _merge_duplicates(values: list[int], n: int):
    """Repeatedly replace a duplicated value v, v by v*v.

    Returns the merged sorted list, or None when a merge would exceed n
    and so cannot satisfy the distinct rule."""
    vals = sorted(values)
    while True:
        dup = None
        for a, b in zip(vals, vals[1:]):
            if a == b:
                dup = a
                break
        if dup is None:
            return vals
        merged = dup * dup
        if merged > n:
            return None
        vals.remove(dup)
        vals.remove(dup)
        lo = 0
        hi = len(vals)
        while lo < hi:
            mid = (lo + hi) // 2
            if vals[mid] < merged:
                lo = mid + 1
            else:
                hi = mid
        vals.insert(lo, merged)


def _distinct_ok(values, n: int) -> bool:
    return len(set(values)) == len(values) and all(1 <= v < n for v in values)


def _mertens_strict(min_prime: int, target, ratio) -> MertensSelection:
    # like numtheory.mertens_select but with a strict inequality, so the
    # downstream product comparisons have slack even on exact thresholds
    threshold = Fraction(ratio) * Fraction(target)
    primes: list[int] = []
    prod = Fraction(1)
    p = next_prime(max(min_prime, 2))
    while not primes or prod <= threshold:
        primes.append(p)
        prod *= Fraction(p, p - 1)
        p = next_prime(p + 1)
    return MertensSelection(tuple(primes), prod, threshold)


def _extend_selection(sel: MertensSelection) -> MertensSelection:
    p = next_prime(sel.primes[-1] + 1)
    return MertensSelection(
        sel.primes + (p,), sel.product_value * Fraction(p, p - 1), sel.target
    )


def _digits_upper(bits: int) -> int:
    return bits * 30103 // 100000 + 1


# --------------------------------------------------------------------------
# quadratic family


def construct_quadratic(
    poly: IntPoly,
    count: int = 1,
    *,
    scan_limit: int = 10_000,
    seed: int = 0,
) -> list[WitnessCertificate]:
    """Certificates for a quadratic P via the self-composition identity
    P(P(m) + m) = P(m) * Q(m), where Q = P(P(x)+x)/P(x) is an integer
    quadratic.

    A prime q > lead(Q)/lead(P) dividing some Q(l) splits Q(m) for every
    m = l + j*q, giving the chain 1 < q < Q(m)/q < P(m) < n at n=P(m)+m.
    """
    if poly.degree != 2:
        raise ValueError("need a quadratic polynomial")
    if poly.leading < 1 or poly.coefficient(0) < 1 or any(c < 0 for c in poly.coeffs):
        raise ValueError("need nonnegative coefficients with positive ends")
    if count < 1:
        raise ValueError("count must be positive")
    comp = poly.compose(poly.add(IntPoly((0, 1))))
    q_poly = comp.exact_divide(poly)
    assert isinstance(q_poly, IntPoly), "P(x) must divide P(P(x)+x)"
    lower = q_poly.leading // poly.leading
    l, q = find_prime_divisor_of_values(q_poly, lower, scan_limit, seed=seed)
    certs: list[WitnessCertificate] = []
    m = l if l >= 1 else l + q
    steps = 0
    while len(certs) < count and steps <= scan_limit:
        steps += 1
        qm = q_poly.evaluate(m)
        pm = poly.evaluate(m)
        assert qm % q == 0, "q must divide Q(m) along the progression"
        n = pm + m
        f1, f2, f3 = q, qm // q, pm
        if 1 < f1 < f2 < f3 < n:
            certs.append(
                WitnessCertificate(
                    poly,
                    "quadratic",
                    n,
                    (f1, f2, f3),
                    {"q": str(q), "l": str(l), "m": str(m)},
                    "distinct",
                )
            )
        m += q
    if len(certs) < count:
        raise ConstructionBudgetError(
            certs,
            {
                "class": "quadratic",
                "reason": f"chain condition failed along {steps} progression points",
                "q": str(q),
                "l": str(l),
            },
        )
    return certs


# --------------------------------------------------------------------------
# the cubic splitting engine
#
# For a cubic f with positive leading coefficient and a parameter kappa,
# look for an integer quadratic g = g2 x**2 + g1 x + 2 kappa such that
# f(g(x)) splits as content * F1(x) * F2(x) with integer cubics F1, F2.
# Writing theta for a root of f, the six roots of f(g(x)) pair up
# Galois-stably exactly when the root discriminant
# g1**2 - 4 g2 (2 kappa - theta) is a square in Q[theta]/(f).  The square
# is sought in the two-parameter form E = theta**2 + tau theta + e0: the
# theta**2 coordinate of E**2 mod f vanishes for a unique e0 given tau
# (a conic solve), after which E**2 = d1 theta + d0 must satisfy that
# d0 + 2 kappa d1 is a rational square r**2.  Scaling by the least T
# making T**2 d1 / 4 and T r integral yields g2 = T**2 d1 / 4 and
# g1 = +-T r, and F1 is the characteristic resolvent
# det((g1 + 2 g2 x) I - T M_E) of the multiplication-by-E matrix, taken
# primitive.  Exact division of f(g(x)) by F1 then certifies the split;
# every candidate that reaches the caller has been verified that way.


def _fraction_sqrt(x: Fraction):
    if x < 0:
        return None
    rn = math.isqrt(x.numerator)
    rd = math.isqrt(x.denominator)
    if rn * rn != x.numerator or rd * rd != x.denominator:
        return None
    return Fraction(rn, rd)


def _tau_grid(denominators, max_numerator) -> tuple[Fraction, ...]:
    vals = {
        Fraction(nu, de)
        for de in denominators
        for nu in range(-max_numerator, max_numerator + 1)
        if nu != 0
    }
    return tuple(
        sorted(vals, key=lambda t: (abs(t.numerator * t.denominator), t < 0, abs(t)))
    )


_TAUS_TOP = _tau_grid((1, 2, 4, 8), 16)
_TAUS_WIDE = _tau_grid((1, 2, 3, 4, 8, 16), 48)


def _divisors_ascending(n: int) -> list[int]:
    small = []
    large = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i != n // i:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def _lin_mul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, pi in enumerate(p):
        if pi:
            for j, qj in enumerate(q):
                out[i + j] += pi * qj
    return out


_PERMS3 = (
    ((0, 1, 2), 1),
    ((1, 2, 0), 1),
    ((2, 0, 1), 1),
    ((0, 2, 1), -1),
    ((2, 1, 0), -1),
    ((1, 0, 2), -1),
)


def _det3_linear(ent):
    # determinant of a 3x3 matrix of degree-<=1 polynomials over Q
    total = [Fraction(0)] * 4
    for perm, sign in _PERMS3:
        term = _lin_mul(
            _lin_mul(ent[0][perm[0]], ent[1][perm[1]]), ent[2][perm[2]]
        )
        for k, v in enumerate(term):
            total[k] += v if sign > 0 else -v
    return total


@dataclass(frozen=True)
class _EngineHit:
    tau: Fraction
    g: IntPoly
    f1: IntPoly
    f2: IntPoly
    content: int


def _schinzel_candidates(f: IntPoly, kappa: int, taus):
    """Yield verified splits of f(g(x)) in deterministic grid order."""
    a = Fraction(f.coefficient(3))
    b = Fraction(f.coefficient(2))
    c = Fraction(f.coefficient(1))
    d = Fraction(f.coefficient(0))
    if a <= 0:
        raise ValueError("need a positive leading coefficient")
    p2, p1, p0 = -b / a, -c / a, -d / a
    q2, q1, q0 = p2 * p2 + p1, p2 * p1 + p0, p2 * p0
    for tau in taus:
        e0 = -(q2 + 2 * tau * p2 + tau * tau) / 2
        d1 = q1 + 2 * tau * p1 + 2 * tau * e0
        if d1 == 0:
            continue
        d0 = q0 + 2 * tau * p0 + e0 * e0
        r = _fraction_sqrt(d0 + 2 * kappa * d1)
        if r is None:
            continue
        den = d1.denominator * r.denominator // math.gcd(
            d1.denominator, r.denominator
        )
        T = None
        for t in _divisors_ascending(2 * den):
            if (Fraction(t * t) * d1 / 4).denominator == 1 and (
                t * r
            ).denominator == 1:
                T = Fraction(t)
                break
        assert T is not None, "2*lcm of denominators always qualifies"
        g2 = int(T * T * d1 / 4)
        if g2 == 0:
            continue
        g1_mag = int(T * r)
        mat = (
            (e0, p0, tau * p0 + q0),
            (tau, e0 + p1, tau * p1 + q1),
            (Fraction(1), tau + p2, e0 + tau * p2 + q2),
        )
        for g1 in ((g1_mag, -g1_mag) if g1_mag else (0,)):
            g = IntPoly((2 * kappa, g1, g2))
            ent = [
                [
                    (
                        (Fraction(g1) if i == j else Fraction(0)) - T * mat[i][j],
                        Fraction(2 * g2) if i == j else Fraction(0),
                    )
                    for j in range(3)
                ]
                for i in range(3)
            ]
            det = _det3_linear(ent)
            if all(v == 0 for v in det):
                continue
            _, f1 = fraction_content_split(det)
            if f1.degree != 3:
                continue
            fg = f.compose(g)
            quot = fg.exact_divide(f1)
            if isinstance(quot, IntPoly):
                if quot.is_zero:
                    continue
                split = quot.content_split()
                content, f2 = split.content, split.primitive
            elif quot.exact_over_rationals:
                cf, f2 = fraction_content_split(quot.quotient)
                if cf.denominator != 1:
                    continue
                content = int(cf)
            else:
                continue
            if f2.degree != 3:
                continue
            if f1.multiply(f2).scale(content) != fg:
                continue
            yield _EngineHit(tau, g, f1, f2, content)


@dataclass(frozen=True)
class SchinzelPieces:
    """A verified split f(g(x)) = content * f1(x) * f2(x).

    A and B are the leading and negated linear coefficients of g, the
    quantities the Pell linkage runs on.  formula_g, formula_f1 and
    disc_marker are the closed-form display values for the same input;
    they are reported for comparison and are not required to satisfy the
    division identity (g, f1, f2 always do).
    """

    g: IntPoly
    f1: IntPoly
    f2: IntPoly
    content: int
    A: int
    B: int
    kappa: int
    tau: Fraction
    formula_g: IntPoly
    formula_f1: IntPoly
    disc_marker: int


class SchinzelInconsistency(Exception):
    """No split was found in the scan grid.

    Carries the closed-form candidates and the scan size so callers can
    report exactly what was tried."""

    def __init__(self, poly, kappa, formula_g, formula_f1, scanned):
        super().__init__(
            f"no quadratic/cubic split found for {poly} at kappa={kappa} "
            f"({scanned} parameter values scanned)"
        )
        self.poly = poly
        self.kappa = kappa
        self.formula_g = formula_g
        self.formula_f1 = formula_f1
        self.scanned = scanned


def _display_formula(f: IntPoly, kappa: int):
    # closed-form candidate pair; kept for reporting
    a, b, c, d = (f.coefficient(i) for i in (3, 2, 1, 0))
    big_a = 2 * a * (
        (2 * a * kappa + b) * (4 * a * a * kappa * kappa + 4 * a * c - b * b)
        - 8 * a * a * d
    )
    big_b = 12 * a * a * kappa * kappa + 4 * a * b * kappa + 4 * a * c - b * b
    g = IntPoly((2 * kappa, big_b, big_a))
    f1 = IntPoly((-1, 3 * kappa + 2 * a * b, -big_b, big_a))
    marker = big_b * big_b - 3 * big_a * (3 * kappa + 2 * a * b)
    return g, f1, marker


_TAUS_PUBLIC = _TAUS_TOP + tuple(t for t in _TAUS_WIDE if t not in set(_TAUS_TOP))


def schinzel_pieces(poly: IntPoly, kappa: int = 1) -> SchinzelPieces:
    """First verified split of poly(g(x)) for a positive cubic.

    The closed-form display pair is tried first; if it fails the exact
    division test the parameter grid is scanned.  Raises
    SchinzelInconsistency when nothing in the grid verifies.
    """
    if poly.degree != 3 or any(c <= 0 for c in poly.coeffs):
        raise ValueError("need a cubic with positive coefficients")
    if kappa < 1:
        raise ValueError("kappa must be positive")
    formula_g, formula_f1, marker = _display_formula(poly, kappa)

    def _pack(g, f1, f2, content, tau):
        return SchinzelPieces(
            g=g,
            f1=f1,
            f2=f2,
            content=content,
            A=g.coefficient(2),
            B=-g.coefficient(1),
            kappa=kappa,
            tau=tau,
            formula_g=formula_g,
            formula_f1=formula_f1,
            disc_marker=marker,
        )

    if formula_f1.degree == 3 and formula_g.degree == 2:
        fg = poly.compose(formula_g)
        quot = fg.exact_divide(formula_f1)
        if isinstance(quot, IntPoly) and not quot.is_zero:
            split = quot.content_split()
            if formula_f1.multiply(split.primitive).scale(split.content) == fg:
                return _pack(
                    formula_g, formula_f1, split.primitive, split.content, Fraction(0)
                )
    for hit in _schinzel_candidates(poly, kappa, _TAUS_PUBLIC):
        return _pack(hit.g, hit.f1, hit.f2, hit.content, hit.tau)
    raise SchinzelInconsistency(poly, kappa, formula_g, formula_f1, len(_TAUS_PUBLIC))


# --------------------------------------------------------------------------
# cubic pipeline: level-1 split of P, level-2 splits of both cubic factors
# at a shared constant 2l, Pell linkage between the two quadratic arguments


@dataclass(frozen=True)
class _LinkedInstance:
    kappa: int
    top: _EngineHit
    l: int
    r_hit: _EngineHit
    s_hit: _EngineHit

    @property
    def sides(self):
        # A, B from the R side, C, D from the S side; all positive
        return (
            self.r_hit.g.coefficient(2),
            -self.r_hit.g.coefficient(1),
            self.s_hit.g.coefficient(2),
            -self.s_hit.g.coefficient(1),
        )

    @property
    def pell_d(self) -> int:
        a, _, c, _ = self.sides
        return a * c


def _side_pieces(cubic: IntPoly, l: int):
    # first level-2 split with positive leading and negative linear
    # coefficient of g, the sign pattern the Pell identity needs
    for hit in _schinzel_candidates(cubic, l, _TAUS_WIDE):
        if hit.g.coefficient(2) > 0 and hit.g.coefficient(1) < 0:
            return hit
    return None


def _level1_variants(p: IntPoly, kappa_max: int, per_kappa: int):
    out = []
    for kappa in range(1, kappa_max + 1):
        for hit in itertools.islice(
            _schinzel_candidates(p, kappa, _TAUS_TOP), per_kappa
        ):
            out.append((kappa, hit))
    return out


def _linked_instances(p: IntPoly, kappa_max: int, l_max: int, per_kappa: int):
    variants = _level1_variants(p, kappa_max, per_kappa)
    for l in range(1, l_max + 1):
        for kappa, top in variants:
            r_hit = _side_pieces(top.f1, l)
            if r_hit is None:
                continue
            s_hit = _side_pieces(top.f2, l)
            if s_hit is None:
                continue
            inst = _LinkedInstance(kappa, top, l, r_hit, s_hit)
            if is_perfect_square(inst.pell_d):
                continue
            yield inst


def _conic_point(a, b, c, d, r, s):
    # For r**2 - (a c) s**2 = 1 the pair below satisfies
    # a x**2 - b x = c y**2 - d y identically in (r, s); see the check.
    x = -b * c * s * s - d * r * s
    y = -b * r * s - a * d * s * s
    assert a * x * x - b * x == c * y * y - d * y
    return x, y


def _cubic_attempt(poly, shift_y, inst, r, s, max_n_digits):
    a, b, c, d = inst.sides
    u, v = _conic_point(a, b, c, d, r, s)
    t = inst.r_hit.g.evaluate(u)
    assert t == inst.s_hit.g.evaluate(v), "linked arguments must meet"
    n_shift = inst.top.g.evaluate(t)
    n = n_shift + shift_y
    if n < 2 or _digits_upper(n.bit_length()) > max_n_digits:
        return None
    vals = [
        inst.r_hit.f1.evaluate(u),
        inst.r_hit.f2.evaluate(u),
        inst.s_hit.f1.evaluate(v),
        inst.s_hit.f2.evaluate(v),
    ]
    content = inst.top.content * inst.r_hit.content * inst.s_hit.content
    shifted = poly.shift(shift_y)
    assert _product(vals) * content == shifted.evaluate(n_shift)
    if any(v == 0 for v in vals):
        return None
    factors = _absorb_content([abs(x) for x in vals], content, n)
    if not _distinct_ok(factors, n):
        return None
    if n > 10**6:
        mx = max(factors)
        if mx**5 >= n**4:  # max factor must stay under n**0.8
            return None
    return n, factors


def construct_cubic(
    poly: IntPoly,
    count: int = 1,
    *,
    kappa_max: int = 4,
    l_max: int = 30,
    per_kappa: int = 6,
    index_cap: int = 8,
    pell_digit_budget: int = 5000,
    max_n_digits: int = 200_000,
) -> list[WitnessCertificate]:
    """Certificates for a cubic P with positive leading coefficient.

    P is shifted to positive coefficients, split at level 1 into
    content * R * S along a quadratic reparametrization, then R and S are
    split again at a shared constant term 2l.  A Pell equation on the
    product of the two level-2 leading coefficients supplies infinitely
    many integer points where both level-2 arguments coincide; each one
    yields four cubic factor values plus the content.
    """
    if poly.degree != 3 or poly.leading < 1:
        raise ValueError("need a cubic with positive leading coefficient")
    if count < 1:
        raise ValueError("count must be positive")
    shift_y, shifted = poly.shift_to_positive()
    certs: list[WitnessCertificate] = []
    report: dict[str, str] = {"class": "cubic"}
    instances = 0
    for inst in _linked_instances(shifted, kappa_max, l_max, per_kappa):
        instances += 1
        try:
            fund = fundamental_solution(inst.pell_d, pell_digit_budget)
        except PellBudgetError as exc:
            report.setdefault("blocking_pell_d", str(exc.d))
            report.setdefault("blocking_l", str(inst.l))
            report.setdefault("blocking_digits", str(exc.digits))
            continue
        pairs = stream(inst.pell_d, fund)
        next(pairs)  # index 0 has s = 0, degenerate
        for j in range(1, index_cap + 1):
            r, s = next(pairs)
            got = _cubic_attempt(poly, shift_y, inst, r, s, max_n_digits)
            if got is None:
                continue
            n, factors = got
            certs.append(
                WitnessCertificate(
                    poly,
                    "cubic",
                    n,
                    tuple(factors),
                    {
                        "shift": str(shift_y),
                        "kappa": str(inst.kappa),
                        "tau_top": str(inst.top.tau),
                        "l": str(inst.l),
                        "tau_r": str(inst.r_hit.tau),
                        "tau_s": str(inst.s_hit.tau),
                        "pell_d": str(inst.pell_d),
                        "pell_index": str(j),
                    },
                    "distinct",
                )
            )
            if len(certs) == count:
                return certs
    report["reason"] = (
        f"exhausted {instances} linked instances "
        f"(kappa<={kappa_max}, l<={l_max})"
    )
    raise ConstructionBudgetError(certs, report)


def construct_quartic_cubic_linear(
    cubic: IntPoly,
    linear: IntPoly,
    count: int = 1,
    *,
    kappa_max: int = 4,
    l_max: int = 30,
    per_kappa: int = 6,
    index_tries: int = 3,
    pell_digit_budget: int = 5000,
    max_n_digits: int = 400_000,
) -> list[WitnessCertificate]:
    """Certificates for P = cubic * linear.

    Runs the cubic pipeline restricted to the Pell subsequence where
    p = e * Q(2l) + f divides s: there u and v vanish mod p, so the
    argument t is 2l mod p and p divides linear(n).  The factor list is
    the four cubic pieces plus p and linear(n)/p.
    """
    if cubic.degree != 3 or cubic.leading < 1:
        raise ValueError("need a cubic with positive leading coefficient")
    if linear.degree != 1 or linear.leading < 1:
        raise ValueError("need a linear factor with positive slope")
    if count < 1:
        raise ValueError("count must be positive")
    poly = cubic.multiply(linear)
    e = linear.coefficient(1)
    shift_y, shifted = cubic.shift_to_positive()
    f_eff = linear.coefficient(0) + e * shift_y
    certs: list[WitnessCertificate] = []
    report: dict[str, str] = {"class": "quartic_cubic_linear"}
    instances = 0
    for inst in _linked_instances(shifted, kappa_max, l_max, per_kappa):
        instances += 1
        p_val = e * inst.top.g.evaluate(2 * inst.l) + f_eff
        # the index filter walks the pair sequence mod p_val, so keep the
        # modulus small enough for the period scan
        if p_val < 2 or p_val > 100_000:
            continue
        try:
            fund = fundamental_solution(inst.pell_d, pell_digit_budget)
        except PellBudgetError as exc:
            report.setdefault("blocking_pell_d", str(exc.d))
            report.setdefault("blocking_l", str(inst.l))
            report.setdefault("blocking_digits", str(exc.digits))
            continue
        indices = indices_with_s_divisible(inst.pell_d, fund, p_val)
        tried = 0
        for j in indices:
            if j == 0:
                continue
            tried += 1
            if tried > index_tries:
                break
            # the subsequence grows fast; bail out before huge pairs
            if _digits_upper(fund[1].bit_length()) * j * 9 > max_n_digits:
                break
            r, s = pair_at(inst.pell_d, fund, j)
            assert s % p_val == 0
            got = _cubic_attempt(
                cubic, shift_y, inst, r, s, max_n_digits
            )
            if got is None:
                continue
            n, cubic_factors = got
            lin_val = linear.evaluate(n)
            assert lin_val % p_val == 0, "p must divide the linear value"
            cof = lin_val // p_val
            factors = sorted(cubic_factors + [p_val, cof])
            if not _distinct_ok(factors, n):
                continue
            certs.append(
                WitnessCertificate(
                    poly,
                    "quartic_cubic_linear",
                    n,
                    tuple(factors),
                    {
                        "shift": str(shift_y),
                        "kappa": str(inst.kappa),
                        "l": str(inst.l),
                        "p": str(p_val),
                        "pell_d": str(inst.pell_d),
                        "pell_index": str(j),
                    },
                    "distinct",
                )
            )
            if len(certs) == count:
                return certs
    report["reason"] = (
        f"exhausted {instances} linked instances "
        f"(kappa<={kappa_max}, l<={l_max})"
    )
    raise ConstructionBudgetError(certs, report)


# --------------------------------------------------------------------------
# quartic = quadratic * quadratic


def construct_quartic_biquadratic(
    first: IntPoly,
    second: IntPoly,
    count: int = 1,
    *,
    l_max: int = 12,
    index_tries: int = 3,
    modulus_cap: int = 5000,
    pell_digit_budget: int = 5000,
    max_n_digits: int = 200_000,
) -> list[WitnessCertificate]:
    """Certificates for P = first * second, both positive quadratics.

    One factor is rescaled to constant term 1 (the u side), the other
    drives the k side.  The chain n = (k+f) + l f Q(k+f) = u + v R(u)
    makes Q(k+f) | Q(n) and R(u) | R(n); a Pell equation on the product
    of the two leading coefficients links k and u, and restricting to the
    subsequence where the cofactor constant M = c_q c_r divides s makes
    both cofactors divisible by their constant terms, which pulls every
    factor below n.
    """
    for p in (first, second):
        if p.degree != 2 or p.leading < 1 or p.coefficient(0) < 1 or any(
            c < 0 for c in p.coeffs
        ):
            raise ValueError("need quadratics with nonnegative coefficients "
                             "and positive ends")
    if count < 1:
        raise ValueError("count must be positive")
    poly = first.multiply(second)
    certs: list[WitnessCertificate] = []
    report: dict[str, str] = {"class": "quartic_biquadratic"}
    attempts = 0
    for l in range(1, l_max + 1):
        for u_side, k_side in ((first, second), (second, first)):
            attempts += 1
            c1 = u_side.coefficient(0)
            # R(x) = u_side(c1 x)/c1 has constant term 1 and stays integral
            r_poly = IntPoly(
                (1, u_side.coefficient(1), u_side.coefficient(2) * c1)
            )
            q_poly = IntPoly(
                (
                    k_side.coefficient(0),
                    k_side.coefficient(1) * c1,
                    k_side.coefficient(2) * c1 * c1,
                )
            )
            dq = q_poly.coefficient(2)
            eq = q_poly.coefficient(1)
            fq = q_poly.coefficient(0)
            v_const = fq * (1 + l * fq * (dq * fq + eq + 1))
            g_k = IntPoly(
                (v_const, 1 + l * fq * (2 * dq * fq + eq), l * fq * dq)
            )
            h_u = IntPoly(
                (v_const, v_const * r_poly.coefficient(1) + 1,
                 v_const * r_poly.coefficient(2))
            )
            q1_poly = q_poly.shift(fq)
            chain = IntPoly((fq, 1)).add(q1_poly.scale(l * fq))
            assert chain == g_k, "k-side chain must close"
            assert IntPoly((0, 1)).add(r_poly.scale(v_const)) == h_u, \
                "u-side chain must close"
            a_k = g_k.coefficient(2)
            b_k = g_k.coefficient(1)
            c_u = h_u.coefficient(2)
            d_u = h_u.coefficient(1)
            pell_d = a_k * c_u
            if pell_d < 2 or is_perfect_square(pell_d):
                continue
            q2_poly = q_poly.compose(g_k).exact_divide(q1_poly)
            r2_poly = r_poly.compose(h_u).exact_divide(r_poly)
            assert isinstance(q2_poly, IntPoly) and isinstance(r2_poly, IntPoly)
            c_q = q2_poly.coefficient(0)
            c_r = r2_poly.coefficient(0)
            modulus = c_q * c_r
            if modulus < 1 or modulus > modulus_cap:
                continue
            try:
                fund = fundamental_solution(pell_d, pell_digit_budget)
            except PellBudgetError as exc:
                report.setdefault("blocking_pell_d", str(exc.d))
                report.setdefault("blocking_l", str(l))
                report.setdefault("blocking_digits", str(exc.digits))
                continue
            tried = 0
            for j in indices_with_s_divisible(pell_d, fund, modulus):
                if j == 0:
                    continue
                tried += 1
                if tried > index_tries:
                    break
                if _digits_upper(fund[1].bit_length()) * j * 5 > max_n_digits:
                    break
                r, s = pair_at(pell_d, fund, j)
                k_val, u_val = _conic_point(a_k, -b_k, c_u, -d_u, r, s)
                assert k_val > 0 and u_val > 0
                n_inner = g_k.evaluate(k_val)
                assert n_inner == h_u.evaluate(u_val)
                q1_val = q_poly.evaluate(k_val + fq)
                r1_val = r_poly.evaluate(u_val)
                assert n_inner == (k_val + fq) + l * fq * q1_val
                assert n_inner == u_val + v_const * r1_val
                qn_val = q_poly.evaluate(n_inner)
                rn_val = r_poly.evaluate(n_inner)
                assert qn_val % q1_val == 0, "Q(k+f) must divide Q(n)"
                assert rn_val % r1_val == 0, "R(u) must divide R(n)"
                q2_val = qn_val // q1_val
                r2_val = rn_val // r1_val
                assert q2_val % c_q == 0 and r2_val % c_r == 0
                n = c1 * n_inner
                vals = [modulus, q1_val, r1_val, q2_val // c_q, r2_val // c_r]
                assert _product(vals) * c1 == poly.evaluate(n)
                factors = _absorb_content(vals, c1, n)
                if not _distinct_ok(factors, n):
                    continue
                certs.append(
                    WitnessCertificate(
                        poly,
                        "quartic_biquadratic",
                        n,
                        tuple(sorted(factors)),
                        {
                            "l": str(l),
                            "scale": str(c1),
                            "v": str(v_const),
                            "c_q": str(c_q),
                            "c_r": str(c_r),
                            "pell_d": str(pell_d),
                            "pell_index": str(j),
                        },
                        "distinct",
                    )
                )
                if len(certs) == count:
                    return certs
    report["reason"] = f"exhausted {attempts} (l, assignment) candidates"
    raise ConstructionBudgetError(certs, report)


# --------------------------------------------------------------------------
# binomial, cyclotomic and Chebyshev families


def _check_n_digits(digits_est: int, max_n_digits: int, certs, report_extra):
    if digits_est > max_n_digits:
        report = {"reason": f"n would need about {digits_est} digits"}
        report.update(report_extra)
        raise ConstructionBudgetError(certs, report)


def construct_binomial_power(
    m: int,
    s_values,
    ratio=1,
    *,
    max_n_digits: int = 100_000,
) -> list[WitnessCertificate]:
    """Certificates for P = x**m - 1 at n = s**N.

    N is the product of the shortest run of primes from 2 with
    prod p/(p-1) > ratio * m; then P(n) = (s**m)**N - 1 splits into the
    cyclotomic values Phi_d(s**m) over divisors d of N.  Equal values are
    merged; if merging cannot stay below n the certificate falls back to
    the legendre rule with the raw list.
    """
    if m < 1:
        raise ValueError("m must be positive")
    sel = _mertens_strict(2, m, ratio)
    n_value = _product(sel.primes)
    certs: list[WitnessCertificate] = []
    poly = IntPoly((-1,) + (0,) * (m - 1) + (1,))
    for s in s_values:
        if s < 2:
            raise ValueError("each s must be at least 2")
        # bit-length bound keeps the estimate in integers; n_value can be
        # far too large for float conversion
        _check_n_digits(
            _digits_upper(n_value * m * s.bit_length()),
            max_n_digits,
            certs,
            {"class": "binomial_power", "N": str(n_value), "s": str(s)},
        )
        n = s**n_value
        base = s**m
        raw = [cyclotomic(d).evaluate(base) for d in _divisors_ascending(n_value)]
        assert _product(raw) == poly.evaluate(n)
        merged = _merge_duplicates(raw, n)
        if merged is None:
            factors, mode = raw, "legendre"
        else:
            factors = merged
            mode = "distinct" if _distinct_ok(merged, n) else "legendre"
        certs.append(
            WitnessCertificate(
                poly,
                "binomial_power",
                n,
                tuple(factors),
                {
                    "m": str(m),
                    "s": str(s),
                    "ratio": str(Fraction(ratio)),
                    "primes": ",".join(str(p) for p in sel.primes),
                    "N": str(n_value),
                },
                mode,
            )
        )
    return certs


def construct_cyclotomic(
    m: int,
    s_values,
    ratio=1,
    *,
    max_extensions: int = 6,
    max_n_digits: int = 100_000,
) -> list[WitnessCertificate]:
    """Certificates for P = Phi_m at n = s**N.

    N is a squarefree product of primes exceeding m (so coprime to m),
    chosen Mertens-style against the target phi(m) and extended while the
    merged factor list cannot stay below n.  The factorization used is
    Phi_m(s**N) = prod over d | N of Phi_{m d}(s).
    """
    if m < 1:
        raise ValueError("m must be positive")
    base_sel = _mertens_strict(next_prime(m + 1), euler_phi(m), ratio)
    poly = cyclotomic(m)
    certs: list[WitnessCertificate] = []
    for s in s_values:
        if s < 2:
            raise ValueError("each s must be at least 2")
        sel = base_sel
        emitted = False
        for _ in range(max_extensions + 1):
            n_value = _product(sel.primes)
            _check_n_digits(
                _digits_upper(n_value * s.bit_length()),
                max_n_digits,
                certs,
                {"class": "cyclotomic", "N": str(n_value), "s": str(s)},
            )
            n = s**n_value
            raw = [
                cyclotomic(m * d).evaluate(s)
                for d in _divisors_ascending(n_value)
            ]
            assert _product(raw) == poly.evaluate(n)
            merged = _merge_duplicates(raw, n)
            if merged is not None and _distinct_ok(merged, n):
                certs.append(
                    WitnessCertificate(
                        poly,
                        "cyclotomic",
                        n,
                        tuple(merged),
                        {
                            "m": str(m),
                            "s": str(s),
                            "ratio": str(Fraction(ratio)),
                            "primes": ",".join(str(p) for p in sel.primes),
                            "N": str(n_value),
                        },
                        "distinct",
                    )
                )
                emitted = True
                break
            sel = _extend_selection(sel)
        if not emitted:
            raise ConstructionBudgetError(
                certs,
                {
                    "class": "cyclotomic",
                    "reason": f"no valid prime run within {max_extensions} "
                    "extensions",
                    "m": str(m),
                    "s": str(s),
                },
            )
    return certs


def construct_chebyshev(
    ms,
    s_values,
    ratio=1,
    *,
    max_n_digits: int = 100_000,
) -> list[WitnessCertificate]:
    """Certificates for P = prod of T_m over m in ms, at n = T_N(s).

    N is a squarefree product of primes above max(ms) selected against
    the target 2*phi(max(ms)).  For each m the values psi_{4d}(2s) over
    divisors d of mN with odd cofactor multiply to 2*T_{mN}(s); halving
    one even value per m absorbs the doubling, and the union of the
    lists multiplies to P(n) exactly.
    """
    ms = list(ms)
    if not ms or any(m < 1 for m in ms):
        raise ValueError("need a nonempty list of positive orders")
    big = max(ms)
    sel = _mertens_strict(next_prime(big + 1), 2 * euler_phi(big), ratio)
    n_value = _product(sel.primes)
    poly = IntPoly((1,))
    for m in ms:
        poly = poly.multiply(chebyshev_t(m))
    tag = "chebyshev" if len(ms) == 1 else "chebyshev_product"
    certs: list[WitnessCertificate] = []
    for s in s_values:
        if s < 2:
            raise ValueError("each s must be at least 2")
        _check_n_digits(
            _digits_upper(n_value * max(ms) * (2 * s).bit_length()),
            max_n_digits,
            certs,
            {"class": tag, "N": str(n_value), "s": str(s)},
        )
        n = chebyshev_t_value(n_value, s)
        all_vals: list[int] = []
        for m in ms:
            vals = [v for _, v in chebyshev_factor_values(m * n_value, s)]
            for i, v in enumerate(vals):
                if v % 2 == 0:
                    vals[i] = v // 2
                    break
            else:
                raise AssertionError("an even psi value must exist")
            assert _product(vals) == chebyshev_t_value(m * n_value, s)
            all_vals.extend(vals)
        assert _product(all_vals) == poly.evaluate(n)
        merged = _merge_duplicates(all_vals, n)
        if merged is None or not _distinct_ok(merged, n):
            raise ConstructionBudgetError(
                certs,
                {
                    "class": tag,
                    "reason": "factor merging could not stay below n",
                    "s": str(s),
                    "N": str(n_value),
                },
            )
        certs.append(
            WitnessCertificate(
                poly,
                tag,
                n,
                tuple(merged),
                {
                    "ms": ",".join(str(m) for m in ms),
                    "s": str(s),
                    "ratio": str(Fraction(ratio)),
                    "primes": ",".join(str(p) for p in sel.primes),
                    "N": str(n_value),
                },
                "distinct",
            )
        )
    return certs
