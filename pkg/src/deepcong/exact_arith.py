"""Exact arithmetic in the three supported coefficient rings.

Everything is exact: plain rationals are ``fractions.Fraction``, ramified
elements carry rational coordinates, and valuations come out as integers,
Fractions, or the sentinel ``INF`` (reserved for zero elements). Floats
never enter any arithmetic path; ``INF`` exists only for comparisons.

The three rings:

* rationals with denominator prime to p (integers localized at p),
* ``EisensteinRing(p, e)``: the localized rationals extended by a
  uniformizer ``alpha`` with ``alpha**e == p``, so v_p(alpha) = 1/e,
* ``GaloisRing(p, S, k)``: the integers mod p**S extended by a monic
  degree-k polynomial that is irreducible mod p; residue field has
  p**k elements and the ring hosts Teichmueller lifts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

INF = float("inf")

RATIONAL = "rational"


def _vp_int(n: int, p: int):
    """Exact power of p dividing the integer n; INF for n = 0."""
    if n == 0:
        return INF
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation(x, p: int):
    """p-adic valuation of x, normalized so that valuation(p, p) == 1.

    Accepts ints, Fractions, EisensteinElements and GaloisRingElements.
    Returns an int, a Fraction, or INF (exactly for zero).
    """
    if isinstance(x, EisensteinElement):
        if p != x.ring.p:
            raise ValueError(f"element lives over p={x.ring.p}, not p={p}")
        return x.valuation()
    if isinstance(x, GaloisRingElement):
        if p != x.ring.p:
            raise ValueError(f"element lives over p={x.ring.p}, not p={p}")
        return x.valuation()
    if isinstance(x, int):
        return _vp_int(x, p)
    if isinstance(x, Fraction):
        if x == 0:
            return INF
        return _vp_int(x.numerator, p) - _vp_int(x.denominator, p)
    raise TypeError(f"unsupported element type {type(x).__name__}")


def multinomial_valuation(parts, p: int) -> int:
    """v_p of the multinomial coefficient (sum(parts) choose parts).

    Computed by carrying out the base-p addition of the parts and summing
    the carry digits. The factorial route v_p(m!) - sum v_p(r_i!) is kept
    out of this function so tests can use it as an independent check.
    """
    parts = list(parts)
    if not parts:
        raise ValueError("parts must be nonempty")
    if any(r < 0 for r in parts):
        raise ValueError("parts must be nonnegative")
    total = 0
    carry = 0
    while carry or any(parts):
        s = sum(r % p for r in parts) + carry
        carry = s // p
        total += carry
        parts = [r // p for r in parts]
    return total


def mobius(d: int) -> int:
    """Moebius function: (-1)**k on squarefree products of k primes, else 0."""
    if d < 1:
        raise ValueError("d must be positive")
    result = 1
    q = 2
    while q * q <= d:
        if d % q == 0:
            d //= q
            if d % q == 0:
                return 0
            result = -result
        q += 1
    if d > 1:
        result = -result
    return result


# ---------------------------------------------------------------------------
# Divided-power ideals of the valuation rings


@dataclass(frozen=True)
class IdealSpec:
    """An ideal of one of the valuation rings, given by its valuation c > 0.

    e == 1 means the ideal (p**c) of the rationals localized at p, in which
    case c must be a positive integer; e >= 2 means the ideal of elements of
    valuation >= c inside EisensteinRing(p, e).
    """

    p: int
    c: Fraction
    e: int = 1

    def __post_init__(self):
        object.__setattr__(self, "c", Fraction(self.c))
        if self.c <= 0:
            raise ValueError("ideal valuation must be positive")
        if self.e < 1:
            raise ValueError("ramification degree must be >= 1")
        if self.e == 1 and self.c.denominator != 1:
            raise ValueError("over the localized rationals the ideal is a power of p")

    @property
    def ring_tag(self) -> str:
        return RATIONAL if self.e == 1 else "eisenstein"


def is_divided_power(ideal: IdealSpec) -> bool:
    """True iff the ideal's valuation is at least 1/(p-1)."""
    return ideal.c >= Fraction(1, ideal.p - 1)


# ---------------------------------------------------------------------------
# Eisenstein extension: uniformizer alpha with alpha**e == p


@dataclass(frozen=True)
class EisensteinRing:
    p: int
    e: int

    def __post_init__(self):
        if self.p < 2 or self.e < 1:
            raise ValueError("need a prime p and e >= 1")

    def element(self, coords) -> "EisensteinElement":
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != self.e:
            raise ValueError(f"expected {self.e} coordinates, got {len(coords)}")
        for c in coords:
            if c.denominator % self.p == 0:
                raise ValueError(f"coordinate {c} has denominator divisible by {self.p}")
        return EisensteinElement(self, coords)

    def coerce(self, x) -> "EisensteinElement":
        if isinstance(x, EisensteinElement):
            if x.ring != self:
                raise ValueError("element from a different ring")
            return x
        if isinstance(x, (int, Fraction)):
            return self.element((x,) + (0,) * (self.e - 1))
        raise TypeError(f"cannot coerce {type(x).__name__}")

    def zero(self) -> "EisensteinElement":
        return self.coerce(0)

    def one(self) -> "EisensteinElement":
        return self.coerce(1)

    def alpha(self) -> "EisensteinElement":
        if self.e == 1:
            return self.coerce(self.p)
        return self.element((0, 1) + (0,) * (self.e - 2))


@dataclass(frozen=True)
class EisensteinElement:
    """Sum of c_i * alpha**i for i < e, with rational c_i prime to p in the
    denominator; multiplication folds alpha**e back to p."""

    ring: EisensteinRing
    coords: tuple

    def _check_other(self, other):
        if isinstance(other, EisensteinElement):
            if other.ring != self.ring:
                raise ValueError("mixed Eisenstein rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.coerce(other)
        return None

    def __add__(self, other):
        other = self._check_other(other)
        if other is None:
            return NotImplemented
        return self.ring.element(tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return self.ring.element(tuple(-a for a in self.coords))

    def __sub__(self, other):
        other = self._check_other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.ring.element(tuple(other * a for a in self.coords))
        other = self._check_other(other)
        if other is None:
            return NotImplemented
        e, p = self.ring.e, self.ring.p
        prod = [Fraction(0)] * (2 * e - 1)
        for i, a in enumerate(self.coords):
            if a == 0:
                continue
            for j, b in enumerate(other.coords):
                prod[i + j] += a * b
        folded = list(prod[:e])
        for i in range(e, 2 * e - 1):
            folded[i - e] += p * prod[i]
        return self.ring.element(tuple(folded))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers not supported")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def valuation(self):
        if self.is_zero():
            return INF
        e, p = self.ring.e, self.ring.p
        return min(
            valuation(c, p) + Fraction(i, e)
            for i, c in enumerate(self.coords)
            if c != 0
        )

    def __repr__(self):
        return f"Eisenstein(p={self.ring.p}, e={self.ring.e}, {list(self.coords)})"


# ---------------------------------------------------------------------------
# Galois ring: Z/p**S extended by a degree-k lift of an irreducible polynomial

# One default monic irreducible lift per (p, k); coefficients of
# X**0 .. X**(k-1), the leading 1 implicit.
DEFAULT_MODULI = {
    (2, 1): (0,), (3, 1): (0,), (5, 1): (0,), (7, 1): (0,),
    (2, 2): (1, 1), (3, 2): (1, 0), (5, 2): (2, 0), (7, 2): (1, 0),
    (2, 3): (1, 1, 0), (3, 3): (1, 2, 0), (5, 3): (1, 1, 0), (7, 3): (2, 0, 0),
    (2, 4): (1, 0, 0, 1), (3, 4): (1, 0, 1, 1), (5, 4): (1, 0, 1, 1),
    (7, 4): (1, 0, 0, 1),
}


@dataclass(frozen=True)
class GaloisRing:
    p: int
    S: int
    k: int
    modulus: tuple = None

    def __post_init__(self):
        if self.p < 2 or self.S < 1 or self.k < 1:
            raise ValueError("need a prime p, S >= 1, k >= 1")
        if self.modulus is None:
            try:
                modulus = DEFAULT_MODULI[(self.p, self.k)]
            except KeyError:
                raise ValueError(
                    f"no default modulus for (p={self.p}, k={self.k}); supply one"
                ) from None
            object.__setattr__(self, "modulus", modulus)
        else:
            modulus = tuple(c % self.p**self.S for c in self.modulus)
            if len(modulus) != self.k:
                raise ValueError("modulus must list the k coefficients below the leading 1")
            object.__setattr__(self, "modulus", modulus)

    @property
    def q(self) -> int:
        return self.p**self.k

    @property
    def char(self) -> int:
        return self.p**self.S

    def element(self, coeffs) -> "GaloisRingElement":
        coeffs = tuple(int(c) % self.char for c in coeffs)
        if len(coeffs) != self.k:
            raise ValueError(f"expected {self.k} coefficients, got {len(coeffs)}")
        return GaloisRingElement(self, coeffs)

    def coerce(self, x) -> "GaloisRingElement":
        if isinstance(x, GaloisRingElement):
            if x.ring != self:
                raise ValueError("element from a different ring")
            return x
        if isinstance(x, int):
            return self.element((x,) + (0,) * (self.k - 1))
        if isinstance(x, Fraction):
            num = self.coerce(x.numerator)
            return num * pow(x.denominator, -1, self.char)
        raise TypeError(f"cannot coerce {type(x).__name__}")

    def zero(self) -> "GaloisRingElement":
        return self.coerce(0)

    def one(self) -> "GaloisRingElement":
        return self.coerce(1)

    def x(self) -> "GaloisRingElement":
        if self.k == 1:
            return self.element((self.modulus[0] * (self.char - 1) % self.char,))
        return self.element((0, 1) + (0,) * (self.k - 2))

    def residue_field(self) -> "GaloisRing":
        """The same extension at precision 1."""
        if self.S == 1:
            return self
        return GaloisRing(self.p, 1, self.k, tuple(c % self.p for c in self.modulus))

    def residues(self):
        """All p**k residue-field elements, zero first, in lexicographic order."""
        field = self.residue_field()
        coeffs = [0] * self.k
        out = []
        for idx in range(self.q):
            m = idx
            for i in range(self.k):
                coeffs[i] = m % self.p
                m //= self.p
            out.append(field.element(tuple(coeffs)))
        return out


@dataclass(frozen=True)
class GaloisRingElement:
    ring: GaloisRing
    coeffs: tuple

    def _check_other(self, other):
        if isinstance(other, GaloisRingElement):
            if other.ring != self.ring:
                raise ValueError("mixed Galois rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.coerce(other)
        return None

    def __add__(self, other):
        other = self._check_other(other)
        if other is None:
            return NotImplemented
        return self.ring.element(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return self.ring.element(tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._check_other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.ring.element(tuple(other * a for a in self.coeffs))
        if isinstance(other, Fraction):
            return self * self.ring.coerce(other)
        other = self._check_other(other)
        if other is None:
            return NotImplemented
        ring = self.ring
        k, char = ring.k, ring.char
        prod = [0] * (2 * k - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                prod[i + j] = (prod[i + j] + a * b) % char
        # reduce degrees >= k using X**k == -modulus
        for deg in range(2 * k - 2, k - 1, -1):
            c = prod[deg]
            if c == 0:
                continue
            prod[deg] = 0
            for i, m in enumerate(ring.modulus):
                prod[deg - k + i] = (prod[deg - k + i] - c * m) % char
        return ring.element(tuple(prod[:k]))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers not supported; use inverse()")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_unit(self) -> bool:
        return any(c % self.ring.p for c in self.coeffs)

    def inverse(self) -> "GaloisRingElement":
        if not self.is_unit():
            raise ZeroDivisionError("not a unit")
        ring = self.ring
        order = ring.p ** (ring.k * (ring.S - 1)) * (ring.q - 1)
        return self ** (order - 1)

    def reduce_mod_p(self) -> "GaloisRingElement":
        field = self.ring.residue_field()
        return field.element(tuple(c % self.ring.p for c in self.coeffs))

    def valuation(self):
        """Largest j <= S with all coefficients divisible by p**j; INF at zero."""
        if self.is_zero():
            return INF
        return min(_vp_int(c, self.ring.p) for c in self.coeffs if c != 0)

    def __repr__(self):
        r = self.ring
        return f"GR(p={r.p}, S={r.S}, k={r.k}, {list(self.coeffs)})"


def teichmueller(x: GaloisRingElement) -> GaloisRingElement:
    """The multiplicative lift of x mod p: the unique fixed point of
    y -> y**q congruent to x mod p. Each q-power iteration gains at least
    one digit of agreement, so S - 1 rounds suffice; we iterate to a fixed
    point with a safety cap."""
    q = x.ring.q
    y = x
    for _ in range(x.ring.S + 2):
        y_next = y**q
        if y_next == y:
            return y
        y = y_next
    raise ArithmeticError("q-power iteration failed to stabilize")


# ---------------------------------------------------------------------------
# Monic polynomials over the supported rings


class MonicPoly:
    """Monic polynomial X**d + a_1 X**(d-1) + ... + a_d over one ring.

    Only the trailing coefficients a_1..a_d are stored; the signed
    coefficient accessor e(n) returns (-1)**n * a_n inside the degree
    range, 1 at n = 0, and 0 beyond the degree.
    """

    __slots__ = ("ring", "coeffs")

    def __init__(self, coeffs, ring=RATIONAL):
        coeffs = tuple(coeffs)
        if ring == RATIONAL:
            fixed = []
            for c in coeffs:
                if not isinstance(c, (int, Fraction)):
                    raise TypeError(f"rational poly got {type(c).__name__}")
                fixed.append(c)
            coeffs = tuple(fixed)
        elif isinstance(ring, (EisensteinRing, GaloisRing)):
            coeffs = tuple(ring.coerce(c) for c in coeffs)
        else:
            raise TypeError(f"unsupported ring {ring!r}")
        self.ring = ring
        self.coeffs = coeffs

    @classmethod
    def from_leading(cls, coeffs, ring=RATIONAL):
        """Build from the full list, leading coefficient (which must be 1) first."""
        coeffs = list(coeffs)
        if not coeffs:
            raise ValueError("need at least the leading coefficient")
        lead = coeffs[0]
        if isinstance(ring, (EisensteinRing, GaloisRing)):
            if ring.coerce(lead) != ring.one():
                raise ValueError("polynomial is not monic")
        elif lead != 1:
            raise ValueError("polynomial is not monic")
        return cls(coeffs[1:], ring)

    @classmethod
    def linear(cls, root, ring=RATIONAL):
        """X - root."""
        return cls((-root if ring == RATIONAL else ring.coerce(root) * (-1),), ring)

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def _zero(self):
        return 0 if self.ring == RATIONAL else self.ring.zero()

    def _one(self):
        return 1 if self.ring == RATIONAL else self.ring.one()

    def e(self, n: int):
        """Signed coefficient: elementary symmetric value of the roots."""
        if n < 0:
            raise ValueError("n must be nonnegative")
        if n == 0:
            return self._one()
        if n > self.degree:
            return self._zero()
        a = self.coeffs[n - 1]
        return a if n % 2 == 0 else -a

    def __mul__(self, other):
        if not isinstance(other, MonicPoly):
            return NotImplemented
        if self.ring != other.ring:
            raise ValueError("polynomials over different rings")
        a = (self._one(),) + self.coeffs
        b = (other._one(),) + other.coeffs
        prod = [self._zero()] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = prod[i + j] + x * y
        return MonicPoly(prod[1:], self.ring)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers undefined")
        result = MonicPoly((), self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, MonicPoly):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def __repr__(self):
        return f"MonicPoly(deg={self.degree}, {list(self.coeffs)})"


# ---------------------------------------------------------------------------
# Serialization: rationals as "num/den" strings, ring elements as
# coefficient arrays under a ring header


def eisenstein_to_obj(x: EisensteinElement) -> dict:
    return {
        "p": x.ring.p,
        "e": x.ring.e,
        "coeffs": [str(c) for c in x.coords],
    }


def eisenstein_from_obj(obj: dict) -> EisensteinElement:
    ring = EisensteinRing(int(obj["p"]), int(obj["e"]))
    return ring.element([Fraction(str(c)) for c in obj["coeffs"]])


def galois_to_obj(x: GaloisRingElement) -> dict:
    return {
        "p": x.ring.p,
        "S": x.ring.S,
        "k": x.ring.k,
        "modulus": list(x.ring.modulus),
        "coeffs": list(x.coeffs),
    }


def galois_from_obj(obj: dict) -> GaloisRingElement:
    ring = GaloisRing(
        int(obj["p"]), int(obj["S"]), int(obj["k"]), tuple(obj["modulus"])
    )
    return ring.element(obj["coeffs"])


def ring_to_obj(ring) -> dict:
    if ring == RATIONAL:
        return {"type": RATIONAL}
    if isinstance(ring, EisensteinRing):
        return {"type": "eisenstein", "p": ring.p, "e": ring.e}
    if isinstance(ring, GaloisRing):
        return {
            "type": "galois",
            "p": ring.p,
            "S": ring.S,
            "k": ring.k,
            "modulus": list(ring.modulus),
        }
    raise TypeError(f"unsupported ring {ring!r}")


def ring_from_obj(obj) -> object:
    kind = RATIONAL if obj is None else obj.get("type", RATIONAL)
    if kind == RATIONAL:
        return RATIONAL
    if kind == "eisenstein":
        return EisensteinRing(int(obj["p"]), int(obj["e"]))
    if kind == "galois":
        modulus = tuple(obj["modulus"]) if "modulus" in obj else None
        return GaloisRing(int(obj["p"]), int(obj["S"]), int(obj["k"]), modulus)
    raise ValueError(f"unknown ring type {kind!r}")


def _coeff_to_obj(c, ring):
    if ring == RATIONAL:
        return str(c)
    if isinstance(ring, EisensteinRing):
        return [str(v) for v in c.coords]
    return list(c.coeffs)


def _coeff_from_obj(obj, ring):
    if ring == RATIONAL:
        return Fraction(str(obj))
    if isinstance(ring, EisensteinRing):
        return ring.element([Fraction(str(v)) for v in obj])
    return ring.element(obj)


def monic_poly_to_obj(poly: MonicPoly) -> dict:
    """Leading-first coefficient list including the monic 1."""
    full = (poly._one(),) + poly.coeffs
    return {
        "ring": ring_to_obj(poly.ring),
        "coeffs": [_coeff_to_obj(c, poly.ring) for c in full],
    }


def monic_poly_from_obj(obj: dict) -> MonicPoly:
    ring = ring_from_obj(obj.get("ring"))
    coeffs = [_coeff_from_obj(c, ring) for c in obj["coeffs"]]
    return MonicPoly.from_leading(coeffs, ring)
