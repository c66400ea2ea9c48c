"""Truncated formal power series with exact coefficients.

Coefficients are either rationals or symmetric-function expressions in
the power-sum basis. Arithmetic truncates at a fixed order N and binary
operations insist on matching orders rather than silently re-truncating.
exp and log are the standard formal expansions; they are exact and
mutually inverse up to the truncation order.

Two independent constructions of the prime-restricted exponential series
exp(sum of z**(p**j) / p**j) are provided: the direct exponential and the
Moebius product over prime-to-p indices d of (1 - z**d) ** (-mu(d)/d),
each factor expanded through generalized binomial coefficients.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .exact_arith import mobius
from .partitions import DEFAULT_WEIGHT_BOUND, Partition
from .symfunc import P, SymFuncExpr, class_sum, constant

RATIONAL_DOMAIN = "rational"
SYMFUNC_DOMAIN = "symfunc"


def _zero(domain):
    return Fraction(0) if domain == RATIONAL_DOMAIN else SymFuncExpr(P)


def _one(domain):
    return Fraction(1) if domain == RATIONAL_DOMAIN else constant(1, P)


class TruncatedSeries:
    __slots__ = ("domain", "order", "coeffs")

    def __init__(self, domain: str, coeffs, order: int):
        if domain not in (RATIONAL_DOMAIN, SYMFUNC_DOMAIN):
            raise ValueError(f"unknown coefficient domain {domain!r}")
        if order < 0:
            raise ValueError("order must be nonnegative")
        coeffs = list(coeffs)
        if len(coeffs) > order + 1:
            raise ValueError("more coefficients than the truncation order allows")
        coeffs += [_zero(domain)] * (order + 1 - len(coeffs))
        if domain == RATIONAL_DOMAIN:
            coeffs = [Fraction(c) for c in coeffs]
        self.domain = domain
        self.order = order
        self.coeffs = coeffs

    def __getitem__(self, i: int):
        return self.coeffs[i]

    def _require_compatible(self, other):
        if not isinstance(other, TruncatedSeries):
            raise TypeError("expected a TruncatedSeries")
        if self.domain != other.domain:
            raise ValueError("mixed coefficient domains")
        if self.order != other.order:
            raise ValueError(
                f"order mismatch ({self.order} vs {other.order}); no silent re-truncation"
            )

    def __add__(self, other):
        self._require_compatible(other)
        return TruncatedSeries(
            self.domain,
            [a + b for a, b in zip(self.coeffs, other.coeffs)],
            self.order,
        )

    def __sub__(self, other):
        self._require_compatible(other)
        return TruncatedSeries(
            self.domain,
            [a - b for a, b in zip(self.coeffs, other.coeffs)],
            self.order,
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries(
                self.domain, [c * other for c in self.coeffs], self.order
            )
        self._require_compatible(other)
        out = [_zero(self.domain) for _ in range(self.order + 1)]
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if i + j > self.order:
                    break
                out[i + j] = out[i + j] + a * b
        return TruncatedSeries(self.domain, out, self.order)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        return f"TruncatedSeries({self.domain}, N={self.order}, {self.coeffs!r})"


def zero_series(domain: str, order: int) -> TruncatedSeries:
    return TruncatedSeries(domain, [], order)


def one_series(domain: str, order: int) -> TruncatedSeries:
    return TruncatedSeries(domain, [_one(domain)], order)


def series_exp(f: TruncatedSeries) -> TruncatedSeries:
    """exp of a series with zero constant term."""
    if not f.coeffs[0] == 0:
        raise ValueError("exp needs constant term 0")
    g = [_one(f.domain)]
    for n in range(1, f.order + 1):
        acc = _zero(f.domain)
        for k in range(1, n + 1):
            acc = acc + (k * f.coeffs[k]) * g[n - k]
        g.append(acc * Fraction(1, n))
    return TruncatedSeries(f.domain, g, f.order)


def series_log(f: TruncatedSeries) -> TruncatedSeries:
    """log of a series with constant term 1."""
    if not f.coeffs[0] == _one(f.domain):
        raise ValueError("log needs constant term 1")
    h = [_zero(f.domain)]
    for n in range(1, f.order + 1):
        acc = _zero(f.domain)
        for k in range(1, n):
            acc = acc + (k * h[k]) * f.coeffs[n - k]
        h.append(f.coeffs[n] - acc * Fraction(1, n))
    return TruncatedSeries(f.domain, h, f.order)


def binomial_series_coeffs(gamma: Fraction, count: int):
    """Generalized binomial coefficients C(gamma, k) for k = 0..count-1."""
    out = [Fraction(1)]
    for k in range(1, count):
        out.append(out[-1] * (gamma - k + 1) / k)
    return out


def artin_hasse(p: int, order: int, method: str = "exponential") -> TruncatedSeries:
    """exp(sum over j >= 0 of z**(p**j) / p**j), truncated at the order.

    method "exponential" expands the exponential directly; "product"
    multiplies out (1 - z**d) ** (-mu(d)/d) over d prime to p. Both give
    the same coefficients and every coefficient has denominator prime
    to p.
    """
    if method == "exponential":
        f = zero_series(RATIONAL_DOMAIN, order)
        power = 1
        j = 0
        while power <= order:
            f.coeffs[power] = Fraction(1, p**j)
            power *= p
            j += 1
        return series_exp(f)
    if method == "product":
        result = one_series(RATIONAL_DOMAIN, order)
        for d in range(1, order + 1):
            if d % p == 0:
                continue
            mu = mobius(d)
            if mu == 0:
                continue
            binom = binomial_series_coeffs(Fraction(-mu, d), order // d + 1)
            factor = zero_series(RATIONAL_DOMAIN, order)
            for k in range(order // d + 1):
                factor.coeffs[d * k] = binom[k] * (-1) ** k
            result = result * factor
        return result
    raise ValueError(f"unknown method {method!r}")


def powersum_gf(s_set, order: int) -> TruncatedSeries:
    """Signed, weighted power-sum generating function: the coefficient of
    t**s is (-1)**(s-1) * p_s / s for s in the given set, zero elsewhere."""
    out = zero_series(SYMFUNC_DOMAIN, order)
    for s in s_set:
        if s < 1:
            raise ValueError("set members must be positive")
        if s > order:
            continue
        sign = 1 if s % 2 else -1
        out.coeffs[s] = SymFuncExpr(P, {Partition((s,)): Fraction(sign, s)})
    return out


def class_sum_series(
    u: int,
    p: int,
    order: int,
    method: str = "class-sum",
    max_weight: int = DEFAULT_WEIGHT_BOUND,
) -> TruncatedSeries:
    """Generating function whose t**(u*r) coefficient is the class sum of
    the partition with r copies of u; gcd(u, p) must be 1.

    method "class-sum" assembles each coefficient from the partition
    machinery; "artin-hasse" exponentiates the power-sum generating
    function restricted to the parts u * p**j. The two agree as symmetric
    functions.
    """
    if u < 1:
        raise ValueError("u must be positive")
    if math.gcd(u, p) != 1:
        raise ValueError(f"u={u} must be prime to p={p}")
    if method == "class-sum":
        out = zero_series(SYMFUNC_DOMAIN, order)
        r = 0
        while u * r <= order:
            lam = Partition((u,) * r)
            out.coeffs[u * r] = class_sum(lam, p, max_weight)
            r += 1
        return out
    if method == "artin-hasse":
        parts = []
        m = u
        while m <= order:
            parts.append(m)
            m *= p
        return series_exp(powersum_gf(parts, order))
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# Serialization


def series_to_obj(f: TruncatedSeries) -> dict:
    from .symfunc import expr_to_obj

    if f.domain == RATIONAL_DOMAIN:
        coeffs = [str(c) for c in f.coeffs]
    else:
        coeffs = [expr_to_obj(c) for c in f.coeffs]
    return {"domain": f.domain, "order": f.order, "coefficients": coeffs}


def series_from_obj(obj: dict) -> TruncatedSeries:
    from .symfunc import expr_from_obj

    domain = obj["domain"]
    if domain == RATIONAL_DOMAIN:
        coeffs = [Fraction(c) for c in obj["coefficients"]]
    else:
        coeffs = [expr_from_obj(c) for c in obj["coefficients"]]
    return TruncatedSeries(domain, coeffs, obj["order"])
