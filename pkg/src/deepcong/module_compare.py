"""Operator modules over the integers: traces, semisimplification
comparison, invariant factors mod p, and eigenvalue-multiplicity
recovery from traces at finite precision.

Two independent routes decide whether two integer operators agree up to
semisimplification mod p: exact traces of matrix powers checked to depth
1 + v_p(n), and equality of characteristic polynomials mod p. They must
agree; the comparator reports both and flags any divergence as an
internal error.

The recovery algorithm consumes traces that are sums of multiplicities
times powers of Teichmueller lifts in a Galois ring and returns every
multiplicity mod p**S, one base-p digit per stage, each stage solved as
a Vandermonde system over the residue field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact_arith import (
    INF,
    GaloisRing,
    GaloisRingElement,
    _vp_int,
    teichmueller,
)


class IntMatrix:
    """Square matrix of arbitrary-precision integers; dimension 0 is legal."""

    __slots__ = ("rows", "dim")

    def __init__(self, rows):
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        for row in rows:
            if len(row) != len(rows):
                raise ValueError("matrix must be square")
        self.rows = rows
        self.dim = len(rows)

    @classmethod
    def identity(cls, d: int) -> "IntMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d)))

    @classmethod
    def diagonal(cls, entries) -> "IntMatrix":
        entries = tuple(entries)
        d = len(entries)
        return cls(
            tuple(tuple(entries[i] if i == j else 0 for j in range(d)) for i in range(d))
        )

    @classmethod
    def zero(cls, d: int) -> "IntMatrix":
        return cls(tuple((0,) * d for _ in range(d)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        d = self.dim
        cols = list(zip(*other.rows)) if d else []
        return IntMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
                for row in self.rows
            )
        )

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.dim))

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.rows]})"


def companion(coeffs) -> IntMatrix:
    """Companion matrix of X**d + a_1 X**(d-1) + ... + a_d, given a_1..a_d."""
    coeffs = tuple(int(c) for c in coeffs)
    d = len(coeffs)
    rows = [[0] * d for _ in range(d)]
    for i in range(1, d):
        rows[i][i - 1] = 1
    for i in range(d):
        rows[i][d - 1] = -coeffs[d - 1 - i]
    return IntMatrix(rows)


@dataclass(frozen=True)
class TraceProfile:
    p: int
    traces: tuple  # tr(T**n) for n = 0..bound; entry 0 is the dimension


def trace_powers(M: IntMatrix, bound: int, p: int = 0) -> TraceProfile:
    """Exact traces of M**n for n = 0..bound by iterated multiplication."""
    traces = [M.dim]
    power = IntMatrix.identity(M.dim)
    for _ in range(bound):
        power = power @ M
        traces.append(power.trace())
    return TraceProfile(p=p, traces=tuple(traces))


def charpoly_int(M: IntMatrix):
    """Coefficients of det(X*I - M), leading term first, by the
    division-free Berkowitz iteration over the integers."""
    n = M.dim
    if n == 0:
        return (1,)
    A = M.rows
    poly = [1, -A[0][0]]
    for i in range(1, n):
        row = A[i][:i]
        col = [A[j][i] for j in range(i)]
        a = A[i][i]
        s = [1, -a]
        vec = col
        for k in range(2, i + 2):
            if k > 2:
                vec = [sum(A[r][c] * vec[c] for c in range(i)) for r in range(i)]
            s.append(-sum(row[c] * vec[c] for c in range(i)))
        new = [0] * (i + 2)
        for m in range(i + 2):
            acc = 0
            for j in range(len(s)):
                idx = m - j
                if 0 <= idx < len(poly):
                    acc += s[j] * poly[idx]
            new[m] = acc
        poly = new
    return tuple(poly)


def charpoly_mod_p(M: IntMatrix, p: int):
    """Characteristic polynomial computed exactly, then reduced mod p;
    coefficients leading term first."""
    return tuple(c % p for c in charpoly_int(M))


# ---------------------------------------------------------------------------
# Semisimplification comparison


@dataclass
class SSComparison:
    verdict: bool
    p: int
    dim_match: bool
    rows: list  # (n, tr M, tr N, required depth, achieved, ok)
    charpoly_m: tuple
    charpoly_n: tuple
    charpoly_equal: bool
    consistent: bool

    def to_obj(self) -> dict:
        return {
            "p": self.p,
            "verdict": self.verdict,
            "dim_match": self.dim_match,
            "charpoly_mod_p_M": list(self.charpoly_m),
            "charpoly_mod_p_N": list(self.charpoly_n),
            "charpoly_factors_M": [
                {"factor": list(f), "multiplicity": m}
                for f, m in factor_mod_p(self.charpoly_m, self.p)
            ],
            "charpoly_factors_N": [
                {"factor": list(f), "multiplicity": m}
                for f, m in factor_mod_p(self.charpoly_n, self.p)
            ],
            "charpoly_equal": self.charpoly_equal,
            "consistent": self.consistent,
            "rows": [
                {
                    "n": n,
                    "trace_M": tm,
                    "trace_N": tn,
                    "required": str(req),
                    "achieved": "inf" if ach == INF else str(ach),
                    "ok": ok,
                }
                for (n, tm, tn, req, ach, ok) in self.rows
            ],
        }


def ss_isomorphic(M: IntMatrix, N: IntMatrix, p: int) -> SSComparison:
    """Do the two operators agree mod p up to semisimplification?

    The verdict comes from trace congruences to depth 1 + v_p(n) for
    n = 1..dim; equality of the mod-p characteristic polynomials is
    computed alongside as an independent check and must agree whenever
    the dimensions match.
    """
    cp_m = charpoly_mod_p(M, p)
    cp_n = charpoly_mod_p(N, p)
    cp_equal = cp_m == cp_n
    if M.dim != N.dim:
        return SSComparison(
            verdict=False,
            p=p,
            dim_match=False,
            rows=[],
            charpoly_m=cp_m,
            charpoly_n=cp_n,
            charpoly_equal=cp_equal,
            consistent=True,
        )
    d = M.dim
    tr_m = trace_powers(M, d, p).traces
    tr_n = trace_powers(N, d, p).traces
    rows = []
    ok_all = True
    for n in range(1, d + 1):
        required = 1 + _vp_int(n, p)
        achieved = _vp_int(tr_m[n] - tr_n[n], p)
        ok = achieved >= required
        ok_all = ok_all and ok
        rows.append((n, tr_m[n], tr_n[n], required, achieved, ok))
    return SSComparison(
        verdict=ok_all,
        p=p,
        dim_match=True,
        rows=rows,
        charpoly_m=cp_m,
        charpoly_n=cp_n,
        charpoly_equal=cp_equal,
        consistent=ok_all == cp_equal,
    )


@dataclass
class VirtualComparison:
    verdict: bool
    p: int
    bound: int
    rows: list  # (n, combination, required, achieved, ok)

    def to_obj(self) -> dict:
        return {
            "p": self.p,
            "verdict": self.verdict,
            "bound": self.bound,
            "rows": [
                {
                    "n": n,
                    "combination": comb,
                    "required": "inf" if req == INF else str(req),
                    "achieved": "inf" if ach == INF else str(ach),
                    "ok": ok,
                }
                for (n, comb, req, ach, ok) in self.rows
            ],
        }


def virtual_compare(
    M1: IntMatrix,
    N1: IntMatrix,
    M2: IntMatrix,
    N2: IntMatrix,
    p: int,
    bound: int | None = None,
) -> VirtualComparison:
    """Four-term trace congruence deciding whether the two quotients
    (M1 mod p)/(N1 mod p) and (M2 mod p)/(N2 mod p) agree up to
    semisimplification, assuming the embeddings exist mod p (the caller's
    obligation; embedding_possible checks the invariant-factor criterion).

    The n = 0 row encodes the rank identity; rank M1 + rank N2 rows
    suffice, which is the default bound.
    """
    if bound is None:
        bound = M1.dim + N2.dim
    if bound < M1.dim + N2.dim:
        raise ValueError("bound must cover rank M1 + rank N2")
    tr = [trace_powers(A, bound, p).traces for A in (M1, N1, M2, N2)]
    rows = []
    ok_all = True
    for n in range(0, bound + 1):
        comb = tr[0][n] - tr[1][n] - tr[2][n] + tr[3][n]
        required = INF if n == 0 else 1 + _vp_int(n, p)
        achieved = _vp_int(comb, p)
        ok = achieved >= required
        ok_all = ok_all and ok
        rows.append((n, comb, required, achieved, ok))
    return VirtualComparison(verdict=ok_all, p=p, bound=bound, rows=rows)


# ---------------------------------------------------------------------------
# Polynomials over the prime field (little-endian coefficient tuples)


def _fp_trim(a):
    while a and a[-1] == 0:
        a = a[:-1]
    return a


def _fp_add(a, b, p):
    n = max(len(a), len(b))
    a = a + (0,) * (n - len(a))
    b = b + (0,) * (n - len(b))
    return _fp_trim(tuple((x + y) % p for x, y in zip(a, b)))


def _fp_scale(a, c, p):
    c %= p
    if c == 0:
        return ()
    return tuple(x * c % p for x in a)


def _fp_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return _fp_trim(tuple(out))


def _fp_shift(a, k):
    if not a:
        return ()
    return (0,) * k + a


def _fp_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], -1, p)
    rem = a
    quot = ()
    while rem and len(rem) >= len(b):
        c = rem[-1] * inv_lead % p
        k = len(rem) - len(b)
        quot = _fp_add(quot, _fp_shift((c,), k), p)
        rem = _fp_add(rem, _fp_scale(_fp_shift(b, k), -c, p), p)
    return quot, rem


def _fp_monic(a, p):
    if not a:
        return a
    return _fp_scale(a, pow(a[-1], -1, p), p)


def _fp_divides(a, b, p):
    """Does a divide b?"""
    if not b:
        return True
    if not a:
        return False
    _, rem = _fp_divmod(b, a, p)
    return not rem


def _fp_gcd(a, b, p):
    while b:
        a, b = b, _fp_divmod(a, b, p)[1]
    return _fp_monic(a, p)


def _fp_derivative(a, p):
    return _fp_trim(tuple(i * c % p for i, c in enumerate(a))[1:])


def _fp_powmod(base, exponent, modulus, p):
    result = (1,)
    base = _fp_divmod(base, modulus, p)[1]
    while exponent:
        if exponent & 1:
            result = _fp_divmod(_fp_mul(result, base, p), modulus, p)[1]
        base = _fp_divmod(_fp_mul(base, base, p), modulus, p)[1]
        exponent >>= 1
    return result


def _field_eval(poly_little, x: GaloisRingElement):
    acc = x.ring.zero()
    for c in reversed(poly_little):
        acc = acc * x + c
    return acc


def _minimal_polynomial(x: GaloisRingElement, p: int):
    """Monic minimal polynomial over the prime field of a residue-field
    element, little-endian, via its Frobenius orbit."""
    orbit = [x]
    y = x**p
    while y != x:
        orbit.append(y)
        y = y**p
    coeffs = [x.ring.one()]
    for root in orbit:
        nxt = [x.ring.zero()] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] = nxt[i + 1] + c
            nxt[i] = nxt[i] - c * root
        coeffs = nxt
    out = []
    for c in coeffs:
        if any(v for v in c.coeffs[1:]):
            raise ArithmeticError("minimal polynomial left the prime field")
        out.append(c.coeffs[0])
    return _fp_trim(tuple(out))


def _equal_degree_split(component, k, p):
    """Split a squarefree product of irreducibles, all of degree k, by
    exhaustive root search in the degree-k extension field; supports
    k <= 4 (enough to split anything of degree up to 9)."""
    if len(component) - 1 == k:
        return [component]
    if k > 4:
        raise ValueError("equal-degree splitting beyond quartic extensions")
    field = GaloisRing(p, 1, k)
    found = []
    remaining = component
    for x in field.residues():
        if len(remaining) - 1 < 2 * k:
            break
        if not _field_eval(remaining, x).is_zero():
            continue
        factor = _minimal_polynomial(x, p)
        quotient, rem = _fp_divmod(remaining, factor, p)
        if rem:
            raise ArithmeticError("root's minimal polynomial must divide the component")
        found.append(factor)
        remaining = quotient
    if len(remaining) - 1 > 0:
        found.append(_fp_monic(remaining, p))
    return found


def _factor_squarefree(f, p):
    """Distinct-degree stage on a squarefree monic polynomial, each
    degree class then split by root search."""
    factors = []
    rem = f
    x = (0, 1)
    w = x
    k = 1
    while len(rem) - 1 >= 2 * k:
        w = _fp_powmod(w, p, rem, p)
        g = _fp_gcd(_fp_add(w, _fp_scale(x, -1, p), p), rem, p)
        if len(g) > 1:
            factors.extend(_equal_degree_split(g, k, p))
            rem = _fp_divmod(rem, g, p)[0]
            w = _fp_divmod(w, rem, p)[1]
        k += 1
    if len(rem) > 1:
        factors.append(rem)
    return factors


def factor_mod_p(coeffs, p):
    """Factor a monic polynomial over the prime field into monic
    irreducibles; reporting convenience for semisimplification output.

    coeffs are big-endian with leading 1. Returns (factor, multiplicity)
    pairs, factors big-endian, sorted by degree then coefficients.
    """
    little = _fp_trim(tuple(reversed(tuple(c % p for c in coeffs))))
    if not little or little[-1] != 1:
        raise ValueError("polynomial must be monic")
    original = little
    work = little
    irreducibles = []
    while len(work) > 1:
        der = _fp_derivative(work, p)
        if not der:
            # vanishing derivative means a perfect p-th power
            work = _fp_trim(tuple(work[i] for i in range(0, len(work), p)))
            continue
        squarefree = _fp_divmod(work, _fp_gcd(work, der, p), p)[0]
        for g in _factor_squarefree(_fp_monic(squarefree, p), p):
            if g not in irreducibles:
                irreducibles.append(g)
            while _fp_divides(g, work, p):
                work = _fp_divmod(work, g, p)[0]
    out = []
    for g in irreducibles:
        mult = 0
        probe = original
        while _fp_divides(g, probe, p):
            probe = _fp_divmod(probe, g, p)[0]
            mult += 1
        out.append((tuple(reversed(g)), mult))
    out.sort(key=lambda fm: (len(fm[0]), fm[0]))
    return out


def invariant_factors_mod_p(M: IntMatrix, p: int):
    """Nonconstant invariant factors of X*I - M over the prime field,
    ascending, each dividing the next; their product is the mod-p
    characteristic polynomial. Returned big-endian, leading term first."""
    d = M.dim
    # entries of X*I - M as little-endian tuples
    A = [
        [
            _fp_trim(((-M.rows[i][j]) % p, 1 if i == j else 0))
            for j in range(d)
        ]
        for i in range(d)
    ]
    factors = []
    for t in range(d):
        while True:
            # pick the minimum-degree nonzero entry in the trailing block
            best = None
            for i in range(t, d):
                for j in range(t, d):
                    if A[i][j] and (best is None or len(A[i][j]) < len(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                raise ArithmeticError("X*I - M cannot degenerate")
            bi, bj = best
            if bi != t:
                A[bi], A[t] = A[t], A[bi]
            if bj != t:
                for row in A:
                    row[bj], row[t] = row[t], row[bj]
            pivot = A[t][t]
            dirty = False
            for i in range(t + 1, d):
                if not A[i][t]:
                    continue
                q, _ = _fp_divmod(A[i][t], pivot, p)
                for j in range(t, d):
                    A[i][j] = _fp_add(A[i][j], _fp_scale(_fp_mul(q, A[t][j], p), -1, p), p)
                if A[i][t]:
                    dirty = True
            for j in range(t + 1, d):
                if not A[t][j]:
                    continue
                q, _ = _fp_divmod(A[t][j], pivot, p)
                for i in range(t, d):
                    A[i][j] = _fp_add(A[i][j], _fp_scale(_fp_mul(q, A[i][t], p), -1, p), p)
                if A[t][j]:
                    dirty = True
            if dirty:
                continue
            # pivot must divide everything that remains
            offender = None
            for i in range(t + 1, d):
                for j in range(t + 1, d):
                    if not _fp_divides(pivot, A[i][j], p):
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            for j in range(t, d):
                A[t][j] = _fp_add(A[t][j], A[offender][j], p)
        factors.append(_fp_monic(A[t][t], p))
    out = []
    for f in factors:
        if len(f) > 1:
            out.append(tuple(reversed(f)))
    return out


def embedding_possible(N: IntMatrix, M: IntMatrix, p: int) -> bool:
    """Can the mod-p reduction of N embed equivariantly into that of M?
    True iff the i-th largest invariant factor of N divides the i-th
    largest of M for every i."""
    fn = list(reversed(invariant_factors_mod_p(N, p)))
    fm = list(reversed(invariant_factors_mod_p(M, p)))
    if len(fn) > len(fm):
        return False
    for a, b in zip(fn, fm):
        if not _fp_divides(tuple(reversed(a)), tuple(reversed(b)), p):
            return False
    return True


# ---------------------------------------------------------------------------
# Multiplicity recovery from Galois-ring traces


@dataclass(frozen=True)
class MultiplicityVector:
    p: int
    S: int
    k: int
    entries: tuple  # pairs (residue-field element, multiplicity mod p**S)

    def as_dict(self) -> dict:
        return dict(self.entries)

    def to_obj(self) -> dict:
        return {
            "p": self.p,
            "S": self.S,
            "k": self.k,
            "entries": [
                {"residue": list(x.coeffs), "multiplicity": m}
                for x, m in self.entries
            ],
        }


def trace_bound(p: int, S: int, k: int) -> int:
    """Largest trace index the recovery needs: at stage s the indices
    p**s * n with n up to q - 1 are consumed, and the final stage is
    s = S - 1."""
    return p ** (S - 1) * (p**k - 1)


def synthesize_traces(ring: GaloisRing, multiplicities: dict):
    """Traces sum of m(x) * t(x)**n for n = 0..trace_bound, with t the
    Teichmueller lift and the n = 0 term counting every x including zero."""
    lifts = []
    for x, m in multiplicities.items():
        lifted = ring.element(x.coeffs)
        lifts.append((teichmueller(lifted), int(m)))
    out = []
    for n in range(trace_bound(ring.p, ring.S, ring.k) + 1):
        acc = ring.zero()
        for t, m in lifts:
            acc = acc + m * t**n
        out.append(acc)
    return out


def _solve_residue_system(matrix, rhs):
    """Gaussian elimination over the residue field; raises on a singular
    or inconsistent system."""
    n = len(rhs)
    A = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if not A[r][col].is_zero()), None)
        if pivot is None:
            raise ValueError("singular character system; traces are malformed")
        A[col], A[pivot] = A[pivot], A[col]
        inv = A[col][col].inverse()
        A[col] = [inv * v for v in A[col]]
        for r in range(n):
            if r == col or A[r][col].is_zero():
                continue
            factor = A[r][col]
            A[r] = [a - factor * b for a, b in zip(A[r], A[col])]
    return [A[i][n] for i in range(n)]


def _digit_of(x: GaloisRingElement) -> int:
    """Residue-field element as a prime-field digit; error if it is not one."""
    if any(c for c in x.coeffs[1:]):
        raise ValueError("inconsistent system: digit not in the prime field")
    return x.coeffs[0]


def recover_multiplicities(traces, p: int, S: int, k: int) -> MultiplicityVector:
    """Invert traces of the form sum of m(x) * t(x)**n over the residue
    field (t(0)**0 counted as 1) into the multiplicities m(x) mod p**S.

    Stage s subtracts the contribution of the digits already known,
    verifies divisibility by p**s on the indices it uses, divides, and
    solves the resulting Vandermonde character system over the residue
    field; the zero residue's digit falls out of the n = 0 trace. Raises
    ValueError when the traces are not of the assumed shape.
    """
    traces = list(traces)
    if not traces:
        raise ValueError("no traces supplied")
    ring = traces[0].ring
    if (ring.p, ring.S, ring.k) != (p, S, k):
        raise ValueError("traces do not live in the requested Galois ring")
    need = trace_bound(p, S, k) + 1
    if len(traces) < need:
        raise ValueError(f"need traces for n = 0..{need - 1}, got {len(traces)}")
    q = ring.q
    field = ring.residue_field()
    residues = ring.residues()
    nonzero = [x for x in residues if not x.is_zero()]
    lifts = {x: teichmueller(ring.element(x.coeffs)) for x in residues}
    digits = {x: [] for x in residues}

    for s in range(S):
        ps = p**s
        partial = {x: sum(d * p**j for j, d in enumerate(digits[x])) for x in residues}
        residual = []
        for n in range(need):
            acc = traces[n]
            for x in residues:
                m = partial[x]
                if m:
                    acc = acc - m * lifts[x] ** n
            residual.append(acc)
        for n in range(0, need, ps):
            if residual[n].valuation() < s:
                raise ValueError(
                    f"stage {s}: trace residual at n = {n} not divisible by p**{s}"
                )
        # divide by p**s and reduce to the residue field
        def _reduced(n):
            elt = residual[n]
            return field.element(tuple((c // ps) % p for c in elt.coeffs))

        if nonzero:
            matrix = []
            rhs = []
            for n_s in range(1, q):
                # the Teichmueller lift reduces to x itself, so the row is
                # the character x -> x**(p**s * n_s)
                row = [x ** (ps * n_s) for x in nonzero]
                matrix.append(row)
                rhs.append(_reduced(ps * n_s))
            solution = _solve_residue_system(matrix, rhs)
            stage_digits = {}
            for x, value in zip(nonzero, solution):
                stage_digits[x] = _digit_of(value)
        else:
            stage_digits = {}
        total_digit = _digit_of(_reduced(0))
        zero_digit = (total_digit - sum(stage_digits.values())) % p
        zero_elt = next(x for x in residues if x.is_zero())
        stage_digits[zero_elt] = zero_digit
        for x in residues:
            digits[x].append(stage_digits[x])

    entries = tuple(
        (x, sum(d * p**j for j, d in enumerate(digits[x])) % p**S) for x in residues
    )
    return MultiplicityVector(p=p, S=S, k=k, entries=entries)
