"""Exact rational combinatorics behind the coefficient lemmas.

All scalar coefficients in the package are `fractions.Fraction` values,
re-exported here as ``Rational``.  The module verifies three identities:
the factorial-sum lemma A(q,p) (two closed sums that agree for all
0 <= q <= p), the alternating binomial sum, and the odd-part binomial
polynomial identity used in its proof.
"""

from __future__ import annotations

import math
from fractions import Fraction
from time import perf_counter

from .report import Report, report

Rational = Fraction

factorial = math.factorial


def lhs_a(q: int, p: int) -> Fraction:
    """Sum of 1/((2j+1)(2j-q)!(p-2j)!) over integers j with q <= 2j <= p."""
    _check_qp(q, p)
    total = Fraction(0)
    j = (q + 1) // 2
    while 2 * j <= p:
        total += Fraction(1, (2 * j + 1) * factorial(2 * j - q) * factorial(p - 2 * j))
        j += 1
    return total


def rhs_a(q: int, p: int) -> Fraction:
    """Sum of (-1)^l q! 2^(p-q+l) / ((q-l)!(p-q+l+1)!) over l = 0..q."""
    _check_qp(q, p)
    total = Fraction(0)
    for l in range(q + 1):
        total += Fraction(
            (-1) ** l * factorial(q) * 2 ** (p - q + l),
            factorial(q - l) * factorial(p - q + l + 1),
        )
    return total


def _check_qp(q: int, p: int) -> None:
    if q < 0 or q > p:
        raise ValueError(f"need 0 <= q <= p, got q={q}, p={p}")


def verify_factorial_lemma(max_p: int) -> Report:
    """Check lhs_a(q,p) == rhs_a(q,p) for every pair 0 <= q <= p <= max_p."""
    if max_p < 0:
        raise ValueError("max_p must be >= 0")
    t0 = perf_counter()
    bad = None
    pairs = 0
    for p in range(max_p + 1):
        for q in range(p + 1):
            pairs += 1
            left, right = lhs_a(q, p), rhs_a(q, p)
            if left != right:
                bad = {"q": q, "p": p, "lhs": str(left), "rhs": str(right)}
                break
        if bad:
            break
    return report("factorial-lemma", {"max_p": max_p}, bad, perf_counter() - t0,
                  {"pairs": pairs})


def verify_alternating_binomial(n: int) -> Report:
    """Check that sum_k (-1)^k C(n,k) is 1 for n = 0 and 0 for n > 0."""
    if n < 0:
        raise ValueError("n must be >= 0")
    t0 = perf_counter()
    total = sum((-1) ** k * math.comb(n, k) for k in range(n + 1))
    expected = 1 if n == 0 else 0
    bad = None
    if total != expected:
        bad = {"n": n, "sum": total, "expected": expected}
    return report("alternating-binomial", {"n": n}, bad, perf_counter() - t0,
                  {"sum": total})


class RationalPoly:
    """Sparse univariate polynomial over the rationals.

    Zero coefficients are never stored, so equality is map equality.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {}
        if coeffs:
            for k, c in dict(coeffs).items():
                if k < 0:
                    raise ValueError("exponents must be non-negative")
                c = Fraction(c)
                if c:
                    self.coeffs[k] = c

    @classmethod
    def constant(cls, c) -> "RationalPoly":
        return cls({0: Fraction(c)})

    @classmethod
    def x(cls) -> "RationalPoly":
        return cls({1: Fraction(1)})

    def coeff(self, k: int) -> Fraction:
        return self.coeffs.get(k, Fraction(0))

    def degree(self) -> int:
        return max(self.coeffs, default=-1)

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + c
        return RationalPoly(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return RationalPoly({k: -c for k, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalPoly({k: c * other for k, c in self.coeffs.items()})
        out = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                k = k1 + k2
                out[k] = out.get(k, Fraction(0)) + c1 * c2
        return RationalPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = RationalPoly.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, RationalPoly) and self.coeffs == other.coeffs

    def __repr__(self):
        if not self.coeffs:
            return "RationalPoly(0)"
        parts = [f"{c}*x^{k}" for k, c in sorted(self.coeffs.items())]
        return "RationalPoly(" + " + ".join(parts) + ")"


def verify_odd_binomial_poly(p: int) -> Report:
    """Check ((1+x)^(p+1) - (1-x)^(p+1))/2 == sum_j C(p+1,2j+1) x^(2j+1).

    The left side is expanded by repeated polynomial multiplication, the
    right side assembled directly from binomial coefficients, so the two
    routes are independent.
    """
    if p < 0:
        raise ValueError("p must be >= 0")
    t0 = perf_counter()
    x = RationalPoly.x()
    one = RationalPoly.constant(1)
    lhs = ((one + x) ** (p + 1) - (one - x) ** (p + 1)) * Fraction(1, 2)
    rhs = RationalPoly(
        {2 * j + 1: Fraction(math.comb(p + 1, 2 * j + 1))
         for j in range(p // 2 + 1)}
    )
    bad = None
    if lhs != rhs:
        diff = lhs - rhs
        bad = {"p": p, "difference": {str(k): str(c) for k, c in diff.coeffs.items()}}
    return report("odd-binomial-poly", {"p": p}, bad, perf_counter() - t0,
                  {"terms": len(lhs.coeffs)})
