"""The graded ring of symmetric functions in the e- and p-bases.

Expressions are finite rational-coefficient combinations of basis
elements e_lam or p_lam indexed by partitions. Conversions between the
two bases go through the grade-n generator expansions

    e_n = sum over lam of n:  sign(lam) / z(lam) * p_lam
    p_n = (-1)**n * n * sum over lam of n with m parts:
              (-1)**m / m * multinomial(m; multiplicities) * e_lam

extended multiplicatively and cached per grade. Evaluation substitutes
the signed coefficients of a monic polynomial for the e-generators, and
the power sums of a polynomial's roots satisfy the order-d Newton
recurrence implemented independently of the basis machinery.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .exact_arith import RATIONAL, GaloisRing, MonicPoly
from .partitions import (
    DEFAULT_WEIGHT_BOUND,
    EMPTY,
    Partition,
    enumerate_partitions,
    p_equivalence_class,
)

E = "e"
P = "p"


class SymFuncExpr:
    """A finite combination of e_lam or p_lam with exact coefficients.

    Instances are treated as immutable; the term map never stores zeros.
    The empty partition indexes the constant term in either basis.
    """

    __slots__ = ("basis", "terms")

    def __init__(self, basis: str, terms=None):
        if basis not in (E, P):
            raise ValueError(f"unknown basis {basis!r}")
        clean = {}
        for lam, c in (terms or {}).items():
            c = Fraction(c)
            if c != 0:
                clean[lam] = c
        self.basis = basis
        self.terms = clean

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, lam: Partition) -> Fraction:
        return self.terms.get(lam, Fraction(0))

    def degree(self) -> int:
        return max((lam.weight for lam in self.terms), default=0)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def _require_same_basis(self, other):
        if self.basis != other.basis:
            raise ValueError("expressions in different bases; convert first")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = constant(other, self.basis)
        if not isinstance(other, SymFuncExpr):
            return NotImplemented
        self._require_same_basis(other)
        terms = dict(self.terms)
        for lam, c in other.terms.items():
            terms[lam] = terms.get(lam, Fraction(0)) + c
        return SymFuncExpr(self.basis, terms)

    __radd__ = __add__

    def __neg__(self):
        return SymFuncExpr(self.basis, {lam: -c for lam, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = constant(other, self.basis)
        if not isinstance(other, SymFuncExpr):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return SymFuncExpr(
                self.basis, {lam: c * other for lam, c in self.terms.items()}
            )
        if not isinstance(other, SymFuncExpr):
            return NotImplemented
        self._require_same_basis(other)
        terms = {}
        for lam, a in self.terms.items():
            for mu, b in other.terms.items():
                prod = lam * mu
                terms[prod] = terms.get(prod, Fraction(0)) + a * b
        return SymFuncExpr(self.basis, terms)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = constant(other, self.basis)
        if not isinstance(other, SymFuncExpr):
            return NotImplemented
        return self.basis == other.basis and self.terms == other.terms

    def __hash__(self):
        return hash((self.basis, tuple(self.sorted_terms())))

    def __repr__(self):
        if self.is_zero():
            return f"SymFuncExpr({self.basis}: 0)"
        bits = " + ".join(
            f"{c}*{self.basis}{lam.parts}" for lam, c in self.sorted_terms()
        )
        return f"SymFuncExpr({bits})"


def constant(value, basis: str = P) -> SymFuncExpr:
    return SymFuncExpr(basis, {EMPTY: Fraction(value)})


def basis_element(basis: str, lam: Partition) -> SymFuncExpr:
    return SymFuncExpr(basis, {lam: Fraction(1)})


@lru_cache(maxsize=None)
def e_in_p_basis(n: int) -> SymFuncExpr:
    """The grade-n elementary generator expanded over the power-sum basis."""
    terms = {
        lam: Fraction(lam.sign(), lam.z()) for lam in enumerate_partitions(n)
    }
    return SymFuncExpr(P, terms)


@lru_cache(maxsize=None)
def p_in_e_basis(n: int) -> SymFuncExpr:
    """The grade-n power-sum generator expanded over the elementary basis;
    all coefficients are integers."""
    if n < 1:
        raise ValueError("power-sum generators start at n = 1")
    terms = {}
    for lam in enumerate_partitions(n):
        mults = lam.multiplicities()
        m = len(lam)
        multinom = math.factorial(m)
        for r in mults.values():
            multinom //= math.factorial(r)
        sign = -1 if (n + m) % 2 else 1
        terms[lam] = Fraction(sign * n * multinom, m)
    return SymFuncExpr(E, terms)


@lru_cache(maxsize=None)
def _partition_in_other_basis(lam: Partition, target: str) -> SymFuncExpr:
    gen = e_in_p_basis if target == P else p_in_e_basis
    result = constant(1, target)
    for part in lam:
        result = result * gen(part)
    return result


def convert(f: SymFuncExpr, target: str) -> SymFuncExpr:
    """Rewrite f in the other basis; exact, and a round trip is the identity."""
    if target not in (E, P):
        raise ValueError(f"unknown basis {target!r}")
    if f.basis == target:
        return f
    result = SymFuncExpr(target)
    for lam, c in f.terms.items():
        result = result + c * _partition_in_other_basis(lam, target)
    return result


def class_sum(
    lam: Partition, p: int, max_weight: int = DEFAULT_WEIGHT_BOUND
) -> SymFuncExpr:
    """Signed, z-weighted sum of p_mu over the p-equivalence class of lam.

    Summing these over class representatives of a given weight n yields
    the expansion of e_n; each individual class sum is p-integral.
    """
    terms = {}
    for mu in p_equivalence_class(lam, p, max_weight):
        terms[mu] = Fraction(mu.sign(), mu.z())
    return SymFuncExpr(P, terms)


def is_p_integral(f: SymFuncExpr, p: int) -> bool:
    """Membership in the span of the e-basis with p-free denominators."""
    g = convert(f, E)
    return all(c.denominator % p != 0 for c in g.terms.values())


# ---------------------------------------------------------------------------
# Evaluation at monic polynomials


def _scaled_ring_sum(pairs, poly: MonicPoly):
    """Exact sum of coeff * value with Fraction coeffs and ring values.

    Denominators are cleared first and divided back out once at the end,
    so the only division happens on the final in-ring quantity.
    """
    pairs = [(Fraction(c), v) for c, v in pairs if c != 0]
    if not pairs:
        return poly.e(0) - poly.e(0)
    lcm = 1
    for c, _ in pairs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    acc = None
    for c, v in pairs:
        term = int(c * lcm) * v
        acc = term if acc is None else acc + term
    if lcm == 1:
        return acc
    return acc * Fraction(1, lcm)


def evaluate(f: SymFuncExpr, poly: MonicPoly):
    """Substitute the signed coefficients of poly for the e-generators.

    Raises if the value does not land in the coefficient ring (possible
    when f has denominators that are not invertible there).
    """
    g = convert(f, E)
    pairs = []
    for lam, c in g.terms.items():
        value = poly.e(0)
        for part in lam:
            value = value * poly.e(part)
        pairs.append((c, value))
    return _scaled_ring_sum(pairs, poly)


def newton_power_sums(poly: MonicPoly, bound: int):
    """Power sums of the roots for n = 0..bound via the order-d recurrence,
    with p_0 set to the degree."""
    d = poly.degree
    one = poly.e(0)
    ps = [d * one]
    for n in range(1, bound + 1):
        acc = None
        for i in range(1, min(n - 1, d) + 1):
            term = poly.e(i) * ps[n - i]
            if i % 2 == 0:
                term = -term
            acc = term if acc is None else acc + term
        if n <= d:
            term = (n * one) * poly.e(n)
            if n % 2 == 0:
                term = -term
            acc = term if acc is None else acc + term
        ps.append(acc if acc is not None else d * one - d * one)
    return ps


def newton_power_sum(poly: MonicPoly, n: int):
    """p_n of the roots of poly; p_0 is the degree."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return newton_power_sums(poly, n)[n]


def power_polynomial(
    poly: MonicPoly, n: int, max_weight: int = DEFAULT_WEIGHT_BOUND
) -> MonicPoly:
    """The monic polynomial of the same degree whose roots are the n-th
    powers of the roots of poly.

    Each signed coefficient is the matching elementary symmetric value of
    the powered roots, assembled from power sums with every part scaled
    by n. Unavailable over Galois rings, where the required divisions by
    part statistics lose digits at finite precision.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if isinstance(poly.ring, GaloisRing):
        raise ValueError("power polynomials are not supported over Galois rings")
    d = poly.degree
    ps = newton_power_sums(poly, n * d)
    coeffs = []
    for i in range(1, d + 1):
        pairs = []
        for lam in enumerate_partitions(i, max_weight):
            value = poly.e(0)
            for part in lam:
                value = value * ps[n * part]
            pairs.append((Fraction(lam.sign(), lam.z()), value))
        e_i = _scaled_ring_sum(pairs, poly)
        if poly.ring == RATIONAL and isinstance(e_i, Fraction) and e_i.denominator == 1:
            e_i = int(e_i)
        coeffs.append(e_i if i % 2 == 0 else -e_i)
    return MonicPoly(coeffs, poly.ring)


# ---------------------------------------------------------------------------
# Serialization (rationals as "num/den" strings, partitions as int arrays)


def expr_to_obj(f: SymFuncExpr) -> dict:
    return {
        "basis": f.basis,
        "terms": [
            {"partition": list(lam.parts), "coefficient": str(c)}
            for lam, c in f.sorted_terms()
        ],
    }


def expr_from_obj(obj: dict) -> SymFuncExpr:
    terms = {}
    for item in obj["terms"]:
        lam = Partition(tuple(item["partition"]))
        terms[lam] = terms.get(lam, Fraction(0)) + Fraction(item["coefficient"])
    return SymFuncExpr(obj["basis"], terms)
