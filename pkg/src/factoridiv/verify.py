"""Certificate verification.

Two admissibility rules:

  distinct   the factors are pairwise distinct positive integers, none
             exceeding n, multiplying to |P(n)|; such a list divides n!
             term by term.

  legendre   the factors multiply to |P(n)| and for every prime p the
             total valuation of the product stays within the valuation
             of n!, computed by the floor-sum formula.

verify() tries the distinct rule first and falls back to the legendre
rule only when the sole obstruction is a duplicated factor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .construct import WitnessCertificate
from .numtheory import (
    DEFAULT_FACTOR_BUDGET,
    FactorizationBudgetError,
    decimal_log_ratio,
    factorize,
    nu_p_factorial,
)

__all__ = [
    "VerificationReport",
    "verify",
    "verify_distinct",
    "verify_legendre",
]


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of checking one certificate.

    margins maps each prime of the factorization (legendre rule only) to
    nu_p(n!) - nu_p(product), never negative on acceptance.
    max_factor_ratio and exponent describe the largest factor relative
    to n; exponent is log(max factor)/log(n) to four decimal places.
    """

    accepted: bool
    rule: str | None
    reason: str | None = None
    margins: dict = field(default_factory=dict)
    max_factor_ratio: Fraction | None = None
    exponent: str | None = None
    unverifiable_factor: int | None = None


def _smoothness_fields(cert: WitnessCertificate):
    mx = max(cert.factors)
    return Fraction(mx, cert.n), str(decimal_log_ratio(mx, cert.n))


def verify_distinct(cert: WitnessCertificate) -> VerificationReport:
    """Check the distinct rule; reasons are product-mismatch,
    duplicate-factor, factor-exceeds-n, or malformed."""
    ratio, expo = None, None
    try:
        if any(f < 1 for f in cert.factors) or cert.n < 2:
            return VerificationReport(False, "distinct", "malformed")
        ratio, expo = _smoothness_fields(cert)
        product = 1
        for f in cert.factors:
            product *= f
        if product != abs(cert.poly.evaluate(cert.n)):
            return VerificationReport(
                False, "distinct", "product-mismatch",
                max_factor_ratio=ratio, exponent=expo,
            )
        if len(set(cert.factors)) != len(cert.factors):
            return VerificationReport(
                False, "distinct", "duplicate-factor",
                max_factor_ratio=ratio, exponent=expo,
            )
        if any(f > cert.n for f in cert.factors):
            return VerificationReport(
                False, "distinct", "factor-exceeds-n",
                max_factor_ratio=ratio, exponent=expo,
            )
    except (TypeError, AttributeError):
        return VerificationReport(False, "distinct", "malformed")
    return VerificationReport(
        True, "distinct", max_factor_ratio=ratio, exponent=expo
    )


def verify_legendre(
    cert: WitnessCertificate,
    budget: int = DEFAULT_FACTOR_BUDGET,
    seed: int = 0,
) -> VerificationReport:
    """Check the legendre rule by factoring every listed factor.

    A factor that cannot be factored within the budget makes the
    certificate unverifiable (reported, not accepted)."""
    ratio, expo = _smoothness_fields(cert)
    product = 1
    for f in cert.factors:
        product *= f
    if product != abs(cert.poly.evaluate(cert.n)):
        return VerificationReport(
            False, "legendre", "product-mismatch",
            max_factor_ratio=ratio, exponent=expo,
        )
    totals: dict[int, int] = {}
    for f in cert.factors:
        if f == 1:
            continue
        try:
            fac = factorize(f, budget, seed)
        except FactorizationBudgetError:
            return VerificationReport(
                False, "legendre", "unverifiable",
                max_factor_ratio=ratio, exponent=expo,
                unverifiable_factor=f,
            )
        for p, e in fac.factors:
            totals[p] = totals.get(p, 0) + e
    margins = {}
    for p, e in sorted(totals.items()):
        cap = nu_p_factorial(p, cert.n)
        margins[p] = cap - e
        if e > cap:
            return VerificationReport(
                False, "legendre", "valuation-exceeds-factorial",
                margins=margins, max_factor_ratio=ratio, exponent=expo,
            )
    return VerificationReport(
        True, "legendre", margins=margins,
        max_factor_ratio=ratio, exponent=expo,
    )


def verify(
    cert: WitnessCertificate,
    budget: int = DEFAULT_FACTOR_BUDGET,
    seed: int = 0,
) -> VerificationReport:
    """Distinct rule first; fall back to the legendre rule only when the
    single obstruction is a duplicated factor."""
    report = verify_distinct(cert)
    if not report.accepted and report.reason == "duplicate-factor":
        return verify_legendre(cert, budget, seed)
    return report
