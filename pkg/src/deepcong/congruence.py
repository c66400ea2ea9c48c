"""Per-degree congruence ledgers for pairs of monic polynomials.

Given an ideal of valuation c in one of the valuation rings, two checks
run side by side over a range of n:

* elementary: the signed coefficients agree to depth c,
* deep: the power sums of the roots agree to depth c + v_p(n).

Over a divided-power ideal the two overall verdicts provably coincide,
so a divergence there is flagged as an internal error rather than a
result. Reports carry the exact achieved valuation per row, not just
flags, which reproduces published worked tables and makes near misses
visible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .exact_arith import (
    INF,
    RATIONAL,
    EisensteinRing,
    IdealSpec,
    MonicPoly,
    _vp_int,
    is_divided_power,
    valuation,
)
from .symfunc import newton_power_sums


def _check_pair(P: MonicPoly, Q: MonicPoly, ideal: IdealSpec):
    if P.ring != Q.ring:
        raise ValueError("P and Q live over different rings")
    ring = P.ring
    if ring == RATIONAL:
        if ideal.e != 1:
            raise ValueError("rational polynomials need an ideal with e = 1")
    elif isinstance(ring, EisensteinRing):
        if ideal.e != ring.e or ideal.p != ring.p:
            raise ValueError("ideal does not match the Eisenstein ring")
    else:
        raise ValueError("congruence checks support rational and Eisenstein rings")


@dataclass
class CongruenceRow:
    n: int
    e_p: object
    e_q: object
    p_p: object
    p_q: object
    required: object  # c + v_p(n); INF at n = 0
    achieved: object  # exact valuation of p_n(P) - p_n(Q)
    elementary_ok: bool
    deep_ok: bool


@dataclass
class CongruenceReport:
    p: int
    c: Fraction
    bound: int
    max_degree: int
    rows: list
    condition_elementary: bool  # coefficients congruent for 1 <= n <= max degree
    condition_deep: bool  # power sums deeply congruent on the same range
    condition_elementary_ext: bool  # same, over the full computed range
    condition_deep_ext: bool
    divided_power: bool
    theorem_violation: bool

    @property
    def verdict(self) -> bool:
        return self.condition_elementary and self.condition_deep

    def to_obj(self) -> dict:
        return {
            "p": self.p,
            "c": str(self.c),
            "bound": self.bound,
            "max_degree": self.max_degree,
            "divided_power": self.divided_power,
            "conditions": {
                "elementary": self.condition_elementary,
                "deep": self.condition_deep,
                "elementary_extended": self.condition_elementary_ext,
                "deep_extended": self.condition_deep_ext,
            },
            "theorem_violation": self.theorem_violation,
            "rows": [
                {
                    "n": row.n,
                    "e_P": _value_str(row.e_p),
                    "e_Q": _value_str(row.e_q),
                    "p_P": _value_str(row.p_p),
                    "p_Q": _value_str(row.p_q),
                    "required": _val_str(row.required),
                    "achieved": _val_str(row.achieved),
                    "elementary_ok": row.elementary_ok,
                    "deep_ok": row.deep_ok,
                }
                for row in self.rows
            ],
        }

    def to_tsv(self) -> str:
        lines = ["n\t1+v_p(n)\te_n(P)\te_n(Q)\tp_n(P)\tp_n(Q)\tv_p(diff)"]
        for row in self.rows:
            depth = INF if row.n == 0 else 1 + _vp_int(row.n, self.p)
            lines.append(
                "\t".join(
                    [
                        str(row.n),
                        _val_str(depth),
                        _value_str(row.e_p),
                        _value_str(row.e_q),
                        _value_str(row.p_p),
                        _value_str(row.p_q),
                        _val_str(row.achieved),
                    ]
                )
            )
        return "\n".join(lines) + "\n"


def _value_str(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int):
        return str(x)
    return repr(x)


def _val_str(v) -> str:
    return "inf" if v == INF else str(v)


def _build_rows(P: MonicPoly, Q: MonicPoly, ideal: IdealSpec, bound: int):
    p, c = ideal.p, ideal.c
    ps_p = newton_power_sums(P, bound)
    ps_q = newton_power_sums(Q, bound)
    rows = []
    for n in range(0, bound + 1):
        e_p, e_q = P.e(n), Q.e(n)
        p_p, p_q = ps_p[n], ps_q[n]
        vp_n = INF if n == 0 else _vp_int(n, p)
        required = c + vp_n
        achieved = valuation(p_p - p_q, p)
        elementary_ok = valuation(e_p - e_q, p) >= c
        deep_ok = achieved >= required
        rows.append(
            CongruenceRow(n, e_p, e_q, p_p, p_q, required, achieved, elementary_ok, deep_ok)
        )
    return rows


def check_elementary(P: MonicPoly, Q: MonicPoly, ideal: IdealSpec, bound: int) -> dict:
    """Per-n flags for the coefficient congruence, n = 1..bound."""
    _check_pair(P, Q, ideal)
    rows = _build_rows(P, Q, ideal, bound)
    return {row.n: row.elementary_ok for row in rows if row.n >= 1}


def check_deep_powersum(
    P: MonicPoly,
    Q: MonicPoly,
    ideal: IdealSpec,
    bound: int,
    include_n0: bool = False,
) -> dict:
    """Per-n flags for the depth c + v_p(n) power-sum congruence.

    With include_n0 the n = 0 flag demands equal degrees, the n = 0
    reading of the congruence.
    """
    _check_pair(P, Q, ideal)
    rows = _build_rows(P, Q, ideal, bound)
    flags = {row.n: row.deep_ok for row in rows if row.n >= 1}
    if include_n0:
        flags[0] = P.degree == Q.degree
    return flags


def theorem_verdict(
    P: MonicPoly, Q: MonicPoly, ideal: IdealSpec, extended_range: int | None = None
) -> CongruenceReport:
    """Run both checks with bound max(deg P, deg Q) and reconcile them.

    Over a divided-power ideal the overall verdicts must agree; if they
    do not, the report's theorem_violation flag is set, which callers
    treat as fatal. Over other ideals both verdicts are reported without
    reconciliation. extended_range re-checks both congruence families out
    to a larger bound as a redundancy test.
    """
    _check_pair(P, Q, ideal)
    max_degree = max(P.degree, Q.degree)
    bound = max(max_degree, extended_range or 0)
    rows = _build_rows(P, Q, ideal, bound)
    in_range = [row for row in rows if 1 <= row.n <= max_degree]
    cond_elem = all(row.elementary_ok for row in in_range)
    cond_deep = all(row.deep_ok for row in in_range)
    positive = [row for row in rows if row.n >= 1]
    cond_elem_ext = all(row.elementary_ok for row in positive)
    cond_deep_ext = all(row.deep_ok for row in positive)
    dp = is_divided_power(ideal)
    violation = dp and (cond_elem != cond_deep)
    return CongruenceReport(
        p=ideal.p,
        c=ideal.c,
        bound=bound,
        max_degree=max_degree,
        rows=rows,
        condition_elementary=cond_elem,
        condition_deep=cond_deep,
        condition_elementary_ext=cond_elem_ext,
        condition_deep_ext=cond_deep_ext,
        divided_power=dp,
        theorem_violation=violation,
    )


def search_divergent_pairs(
    p: int,
    e: int,
    trials: int = 100,
    seed: int = 0,
    degree: int = 4,
    coeff_span: int = 3,
):
    """Random search over a ramified ring for pairs where the two checks
    disagree. Over a non-divided-power maximal ideal such pairs exist;
    this helper only reports what it finds and proves nothing.

    Returns a list of (P, Q, report) triples with diverging verdicts.
    """
    ring = EisensteinRing(p, e)
    ideal = IdealSpec(p, Fraction(1, e), e)
    rng = random.Random(seed)
    alpha = ring.alpha()
    found = []
    for _ in range(trials):
        coeffs_p = []
        coeffs_q = []
        for _ in range(degree):
            a = rng.randint(-coeff_span, coeff_span)
            b = rng.randint(0, e - 1)
            coeffs_p.append(ring.coerce(a) + alpha**b * rng.randint(-1, 1))
            coeffs_q.append(ring.coerce(a))
        P = MonicPoly(coeffs_p, ring)
        Q = MonicPoly(coeffs_q, ring)
        report = theorem_verdict(P, Q, ideal)
        if report.condition_elementary != report.condition_deep:
            found.append((P, Q, report))
    return found
