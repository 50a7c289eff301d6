"""Characteristic polynomials of the quadratic-map orbit data and their
largest real roots.

Coefficients stay exact integers end to end; root isolation uses sign
changes with bisection so the result is independent of any floating-point
polynomial construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction


class Tau(Enum):
    CYC123 = "cyc123"
    SWAP12 = "swap12"
    ID = "id"


@dataclass(frozen=True)
class OrbitData:
    n1: int
    n2: int
    n3: int
    tau: Tau = Tau.CYC123

    def __post_init__(self):
        if min(self.n1, self.n2, self.n3) < 1:
            raise ValueError("orbit lengths must be positive")


class IntPolynomial:
    """Integer polynomial, coefficients ascending by degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(out)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + IntPolynomial([-c for c in other.coeffs])

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if self.is_zero() or other.is_zero():
            return IntPolynomial([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def divide_exact(self, other: "IntPolynomial"):
        """Quotient when ``other`` divides self exactly over Z, else None."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        d = list(other.coeffs)
        if len(rem) < len(d):
            return None if self.coeffs else IntPolynomial([])
        q = [0] * (len(rem) - len(d) + 1)
        lead = d[-1]
        for i in range(len(q) - 1, -1, -1):
            c = rem[i + len(d) - 1]
            if c % lead != 0:
                return None
            q[i] = c // lead
            if q[i]:
                for j, dc in enumerate(d):
                    rem[i + j] -= q[i] * dc
        if any(rem):
            return None
        return IntPolynomial(q)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"


def monomial(k: int, c: int = 1) -> IntPolynomial:
    return IntPolynomial([0] * k + [c])


ONE = IntPolynomial([1])
T = monomial(1)


def char_poly(d: OrbitData) -> IntPolynomial:
    """Exact expansion of the orbit-data characteristic polynomial."""
    n1, n2, n3 = d.n1, d.n2, d.n3
    t_minus_1 = IntPolynomial([-1, 1])

    def tn(k, c0=1):  # t^k + c0
        return monomial(k) + IntPolynomial([c0])

    if d.tau is Tau.CYC123:
        inner = tn(n1) * tn(n2) * tn(n3) + ONE
        return t_minus_1 * inner - (monomial(n1 + n2 + n3) - ONE)
    if d.tau is Tau.SWAP12:
        inner = monomial(n3) * tn(n1) * tn(n2) - monomial(n1) - monomial(n2) - IntPolynomial([2])
        return t_minus_1 * inner - (monomial(n1 + n2) - ONE) * (monomial(n3) - ONE)
    inner = monomial(n1 + n2 + n3) - monomial(n1) - monomial(n2) - monomial(n3) + IntPolynomial([2])
    outer = (
        IntPolynomial([2]) * monomial(n1 + n2 + n3)
        - monomial(n1 + n2)
        - monomial(n1 + n3)
        - monomial(n2 + n3)
        + ONE
    )
    return T * inner - outer


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def largest_real_root(p: IntPolynomial, tol: float = 1e-10):
    """Largest real root >= 1, or None when no root lies in [1, bound].

    Sign-change isolation on [1, 1 + max|coeff|] with exact rational
    evaluation, then bisection to width tol.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if p.is_zero():
        raise ValueError("zero polynomial has no distinguished root")
    # strip roots at exactly 1 so the scan starts with a definite sign
    q = p
    root_at_one = False
    while q(1) == 0 and q.degree > 0:
        root_at_one = True
        q = q.divide_exact(IntPolynomial([-1, 1]))
    bound = Fraction(1 + max(abs(c) for c in p.coeffs))
    # scan subintervals right-to-left for the rightmost sign change
    steps = max(8, 4 * max(q.degree, 1))
    width = (bound - 1) / steps
    bracket = None
    prev_x = bound
    prev_s = _sign(q(bound))
    for i in range(steps - 1, -1, -1):
        x = 1 + width * i
        s = _sign(q(x))
        if s == 0:
            return float(x)
        if s != prev_s:
            bracket = (x, prev_x, s, prev_s)
            break
        prev_x, prev_s = x, s
    if bracket is None:
        return 1.0 if root_at_one else None
    lo, hi, slo, _ = bracket
    while float(hi - lo) > tol:
        mid = (lo + hi) / 2
        sm = _sign(q(mid))
        if sm == 0:
            return float(mid)
        if sm == slo:
            lo = mid
        else:
            hi = mid
    return float((lo + hi) / 2)


def _cyclotomic(d: int, cache={1: IntPolynomial([-1, 1])}) -> IntPolynomial:
    if d in cache:
        return cache[d]
    p = monomial(d) - ONE
    for e in range(1, d):
        if d % e == 0:
            p = p.divide_exact(_cyclotomic(e))
    cache[d] = p
    return p


def cyclotomic_strip(p: IntPolynomial) -> IntPolynomial:
    """Divide out all cyclotomic factors; the largest real root >= 1 is
    unchanged except for a possible root at exactly 1 (which is Phi_1)."""
    if p.is_zero():
        return p
    q = p
    deg = p.degree
    for d in range(1, 2 * deg + 1):
        phi = _cyclotomic(d)
        if phi.degree > q.degree:
            continue
        while True:
            r = q.divide_exact(phi)
            if r is None or r.is_zero():
                break
            q = r
    return q
