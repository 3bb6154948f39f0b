"""Exact arithmetic in Q/Z and in the group ring Q[Q/Z].

A ``Phase`` p/q stands for the root of unity exp(2*pi*i*p/q).  The group
law of U(1) becomes addition mod 1, and the inversion action of the
grading group becomes negation.  All cocycle identities in this package
are equalities of such roots of unity, so everything is kept as reduced
integer fractions; floats never appear.

A ``PhaseSum`` is a finite Q-linear combination of phases, i.e. an
element of the group ring Q[Q/Z].  Equality of PhaseSums is *formal*
(per-phase coefficients agree).  Formal equality implies equality of the
modelled complex numbers; the converse fails (e.g. i + (-i) is formally
nonzero), but every identity checked downstream is monomial per basis
vector, where formal equality is exactly right.  When an honest complex
number is needed (integrals, counting formulas), ``PhaseSum.as_rational``
reduces the sum modulo a cyclotomic polynomial, which is exact.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd


class Phase:
    """An element of Q/Z in canonical form: 0 <= num < den, gcd = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: int, den: int = 1):
        if den <= 0:
            raise ValueError("denominator must be positive")
        num %= den
        g = gcd(num, den)
        object.__setattr__(self, "num", num // g)
        object.__setattr__(self, "den", den // g)

    def __setattr__(self, *a):  # immutable
        raise AttributeError("Phase is immutable")

    def __add__(self, other: "Phase") -> "Phase":
        if self.den == other.den:
            return Phase(self.num + other.num, self.den)
        return Phase(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> "Phase":
        return Phase(-self.num, self.den)

    def __sub__(self, other: "Phase") -> "Phase":
        return self + (-other)

    def scale(self, k: int) -> "Phase":
        return Phase(self.num * k, self.den)

    def act(self, eps: int) -> "Phase":
        """Inversion action of {+1,-1} on U(1): act(-1) is complex conjugation."""
        if eps == 1:
            return self
        if eps == -1:
            return -self
        raise ValueError("eps must be +1 or -1")

    @property
    def is_zero(self) -> bool:
        return self.num == 0

    def __eq__(self, other) -> bool:
        return isinstance(other, Phase) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"Phase({self.num}/{self.den})"

    def __str__(self):
        return f"{self.num}/{self.den}"

    @staticmethod
    def parse(text: str) -> "Phase":
        text = text.strip()
        if "/" in text:
            p, q = text.split("/")
            return Phase(int(p), int(q))
        return Phase(int(text), 1)


ZERO = Phase(0, 1)
HALF = Phase(1, 2)


# ---------------------------------------------------------------------------
# cyclotomic reduction

def _poly_divmod(num, den):
    # quotient/remainder of Fraction-coefficient polynomials (lists, low degree first)
    num = list(num)
    q = [Fraction(0)] * max(1, len(num) - len(den) + 1)
    while len(num) >= len(den) and any(num):
        while num and num[-1] == 0:
            num.pop()
        if len(num) < len(den):
            break
        c = num[-1] / den[-1]
        shift = len(num) - len(den)
        q[shift] = c
        for i, d in enumerate(den):
            num[shift + i] -= c * d
        num.pop()
    return q, num


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> tuple:
    """Coefficients of the n-th cyclotomic polynomial, low degree first."""
    # x^n - 1 = prod_{d | n} Phi_d
    poly = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic(d)))
            assert not any(rem)
    return tuple(poly)


class PhaseSum:
    """Canonical Q-linear combination of phases (group ring Q[Q/Z])."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        # terms: iterable of (coeff, Phase); canonicalized here
        acc: dict[Phase, Fraction] = {}
        for c, p in terms:
            c = Fraction(c)
            if c:
                acc[p] = acc.get(p, Fraction(0)) + c
        items = tuple(
            (c, p) for p, c in sorted(acc.items(), key=lambda kv: (kv[0].den, kv[0].num)) if c
        )
        object.__setattr__(self, "terms", items)

    def __setattr__(self, *a):
        raise AttributeError("PhaseSum is immutable")

    @staticmethod
    def zero() -> "PhaseSum":
        return PhaseSum()

    @staticmethod
    def one() -> "PhaseSum":
        return PhaseSum(((Fraction(1), ZERO),))

    @staticmethod
    def of(phase: Phase, coeff=1) -> "PhaseSum":
        return PhaseSum(((Fraction(coeff), phase),))

    def __add__(self, other: "PhaseSum") -> "PhaseSum":
        return PhaseSum(self.terms + other.terms)

    def __neg__(self) -> "PhaseSum":
        return PhaseSum(tuple((-c, p) for c, p in self.terms))

    def __sub__(self, other: "PhaseSum") -> "PhaseSum":
        return self + (-other)

    def scaled(self, q) -> "PhaseSum":
        q = Fraction(q)
        return PhaseSum(tuple((c * q, p) for c, p in self.terms))

    def rotated(self, phase: Phase) -> "PhaseSum":
        """Multiply by a single root of unity."""
        return PhaseSum(tuple((c, p + phase) for c, p in self.terms))

    def __mul__(self, other: "PhaseSum") -> "PhaseSum":
        return PhaseSum(
            tuple((c1 * c2, p1 + p2) for c1, p1 in self.terms for c2, p2 in other.terms)
        )

    def act(self, eps: int) -> "PhaseSum":
        """Coefficient-wise conjugation for eps = -1 (phases negate)."""
        if eps == 1:
            return self
        return PhaseSum(tuple((c, -p) for c, p in self.terms))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, PhaseSum) and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __repr__(self):
        if not self.terms:
            return "PhaseSum(0)"
        return "PhaseSum(" + " + ".join(f"{c}*e({p})" for c, p in self.terms) + ")"

    def as_rational(self) -> Fraction:
        """The modelled complex number, provided it is rational.

        Reduces sum_j c_j * x^(e_j) modulo the N-th cyclotomic polynomial,
        N = lcm of the denominators.  Raises ValueError when the sum is not
        a rational number; that signals an implementation bug wherever a
        counting formula is expected to produce an integer.
        """
        if not self.terms:
            return Fraction(0)
        n = 1
        for _, p in self.terms:
            n = n * p.den // gcd(n, p.den)
        coeffs = [Fraction(0)] * n
        for c, p in self.terms:
            coeffs[p.num * (n // p.den) % n] += c
        if n == 1:
            return coeffs[0]
        _, rem = _poly_divmod(coeffs, list(cyclotomic(n)))
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) > 1:
            raise ValueError(f"phase sum is not rational: {self!r}")
        return rem[0] if rem else Fraction(0)
