"""Exact arithmetic kernel: rationals, matrices, sparse polynomials, and
rational functions whose denominators are products of linear forms.

All scalars are ``gmpy2.mpq``.  Monomials are stored as packed integers
(one 12-bit field per variable plus a total-degree field on top), so that
monomial multiplication is integer addition and sorting keys gives a
graded order.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Optional, Sequence

import gmpy2
from gmpy2 import mpq, mpz

Rational = type(mpq())

_BITS = 12
_MASK = (1 << _BITS) - 1
NEG_INF = -math.inf


class DimensionError(ValueError):
    pass


class UnsupportedPolyhedronError(ValueError):
    """Raised when a denominator factor has no x-part (unbounded input)."""


def Q(value) -> Rational:
    """Coerce ints, strings ("p/q"), Fractions and mpq to mpq."""
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return mpq(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        s = value.strip()
        if not s or any(c in s for c in ".eE "):
            raise ValueError(f"not an exact rational: {value!r}")
        return mpq(s)
    if hasattr(value, "numerator") and hasattr(value, "denominator") and not isinstance(value, float):
        return mpq(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def qstr(value: Rational) -> str:
    return str(value)


def qvec(values: Iterable) -> tuple:
    return tuple(Q(v) for v in values)


def is_rational_square(value: Rational) -> bool:
    value = Q(value)
    return value >= 0 and gmpy2.is_square(value.numerator) and gmpy2.is_square(value.denominator)


def rational_sqrt(value: Rational) -> Optional[Rational]:
    """Exact square root, or None if ``value`` is not a square of a rational."""
    if not is_rational_square(value):
        return None
    return mpq(gmpy2.isqrt(value.numerator), gmpy2.isqrt(value.denominator))


def dot(a: Sequence, b: Sequence):
    return sum((x * y for x, y in zip(a, b)), mpq(0))


# ---------------------------------------------------------------------------
# matrices


def _integer_rows(M):
    rows, scale = [], mpq(1)
    for row in M:
        den = reduce(gmpy2.lcm, (Q(x).denominator for x in row), mpz(1))
        rows.append([int(Q(x) * den) for x in row])
        scale *= den
    return rows, scale


def det_exact(M: Sequence[Sequence]) -> Rational:
    """Determinant by Bareiss fraction-free elimination on an integer copy."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise DimensionError("determinant of a non-square matrix")
    if n == 0:
        return mpq(1)
    A, scale = _integer_rows(M)
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for r in range(k + 1, n):
                if A[r][k] != 0:
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return mpq(0)
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return mpq(sign * A[n - 1][n - 1]) / scale


def det_cofactor(M: Sequence[Sequence]) -> Rational:
    """Naive Laplace expansion; only meant as an oracle for small matrices."""
    n = len(M)
    if n == 0:
        return mpq(1)
    if n == 1:
        return Q(M[0][0])
    total = mpq(0)
    for j in range(n):
        if M[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        total += (-1) ** j * Q(M[0][j]) * det_cofactor(minor)
    return total


def rref(M: Sequence[Sequence]):
    """Reduced row echelon form. Returns (rows, pivot_columns)."""
    A = [[Q(x) for x in row] for row in M]
    if not A:
        return A, []
    rows, cols = len(A), len(A[0])
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A, pivots


def rank(M: Sequence[Sequence]) -> int:
    if not M:
        return 0
    return len(rref(M)[1])


def nullspace(M: Sequence[Sequence], ncols: Optional[int] = None) -> list:
    """Basis of {y : M y = 0}."""
    if not M:
        n = ncols or 0
        return [tuple(mpq(int(i == j)) for j in range(n)) for i in range(n)]
    A, pivots = rref(M)
    n = len(A[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        y = [mpq(0)] * n
        y[f] = mpq(1)
        for row, pc in zip(A, pivots):
            y[pc] = -row[f]
        basis.append(tuple(y))
    return basis


def solve(M: Sequence[Sequence], b: Sequence) -> tuple:
    """Unique solution of the square system M y = b."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise DimensionError("solve needs a square system")
    A, pivots = rref([list(row) + [b[i]] for i, row in enumerate(M)])
    if pivots[:n] != list(range(n)) or len(pivots) > n:
        raise ZeroDivisionError("singular system")
    return tuple(A[i][n] for i in range(n))


def mat_inverse(M: Sequence[Sequence]) -> list:
    n = len(M)
    aug = [list(M[i]) + [mpq(int(i == j)) for j in range(n)] for i in range(n)]
    A, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in A]


def transpose(M):
    return [list(col) for col in zip(*M)]


def mat_vec(M, v):
    return tuple(dot(row, v) for row in M)


# ---------------------------------------------------------------------------
# monomial packing


def pack(exps: Sequence[int]) -> int:
    key, deg = 0, 0
    for i, e in enumerate(exps):
        if e < 0 or e > _MASK:
            raise ValueError("exponent out of range")
        key |= e << (_BITS * i)
        deg += e
    return key | (deg << (_BITS * len(exps)))


def unpack(key: int, nvars: int) -> tuple:
    return tuple((key >> (_BITS * i)) & _MASK for i in range(nvars))


def _key_degree(key: int, nvars: int) -> int:
    return key >> (_BITS * nvars)


def _unit_key(i: int, nvars: int) -> int:
    return (1 << (_BITS * i)) | (1 << (_BITS * nvars))


class MultiPoly:
    """Sparse multivariate polynomial with exact rational coefficients.

    Instances are treated as immutable.
    """

    __slots__ = ("nvars", "_t", "_hash")

    def __init__(self, nvars: int, terms: Optional[dict] = None):
        self.nvars = nvars
        self._t = terms if terms is not None else {}
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def from_dict(cls, nvars: int, terms: dict) -> "MultiPoly":
        out = {}
        for exps, c in terms.items():
            if len(exps) != nvars:
                raise DimensionError("exponent vector of wrong length")
            c = Q(c)
            if c:
                k = pack(exps)
                v = out.get(k, 0) + c
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return cls(nvars, out)

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> "MultiPoly":
        c = Q(c)
        return cls(nvars, {pack((0,) * nvars): c} if c else {})

    @classmethod
    def var(cls, nvars: int, i: int) -> "MultiPoly":
        return cls(nvars, {_unit_key(i, nvars): mpq(1)})

    @classmethod
    def affine(cls, const, coeffs: Sequence) -> "MultiPoly":
        """const + sum coeffs[i] * x_i."""
        n = len(coeffs)
        t = {}
        c = Q(const)
        if c:
            t[pack((0,) * n)] = c
        for i, a in enumerate(coeffs):
            a = Q(a)
            if a:
                t[_unit_key(i, n)] = a
        return cls(n, t)

    # inspection ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def __len__(self):
        return len(self._t)

    def terms(self):
        """Iterate (exponent tuple, coefficient) in decreasing graded order."""
        for k in sorted(self._t, reverse=True):
            yield unpack(k, self.nvars), self._t[k]

    def as_dict(self) -> dict:
        return {unpack(k, self.nvars): c for k, c in self._t.items()}

    def degree(self):
        if not self._t:
            return NEG_INF
        return _key_degree(max(self._t), self.nvars)

    def min_degree(self):
        if not self._t:
            return NEG_INF
        return min(_key_degree(k, self.nvars) for k in self._t)

    def leading_coefficient(self) -> Rational:
        if not self._t:
            return mpq(0)
        return self._t[max(self._t)]

    def constant_term(self) -> Rational:
        return self._t.get(pack((0,) * self.nvars), mpq(0))

    def is_homogeneous(self) -> bool:
        return len({_key_degree(k, self.nvars) for k in self._t}) <= 1

    def homogeneous_part(self, degree: int) -> "MultiPoly":
        n = self.nvars
        return MultiPoly(n, {k: c for k, c in self._t.items() if _key_degree(k, n) == degree})

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._t == other._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._t.items())))
        return self._hash

    def __repr__(self):
        if not self._t:
            return "0"
        parts = []
        for exps, c in self.terms():
            mono = "*".join(f"x{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(exps) if e)
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts).replace("+ -", "- ")

    # arithmetic ----------------------------------------------------------
    def _check(self, other):
        if self.nvars != other.nvars:
            raise DimensionError("polynomials over different variable counts")

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(self.nvars, other)
        self._check(other)
        if len(other._t) > len(self._t):
            self, other = other, self
        t = dict(self._t)
        for k, c in other._t.items():
            v = t.get(k)
            if v is None:
                t[k] = c
            else:
                v = v + c
                if v:
                    t[k] = v
                else:
                    del t[k]
        return MultiPoly(self.nvars, t)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {k: -c for k, c in self._t.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "MultiPoly":
        c = Q(c)
        if not c:
            return MultiPoly(self.nvars, {})
        return MultiPoly(self.nvars, {k: v * c for k, v in self._t.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._check(other)
        if len(other._t) > len(self._t):
            self, other = other, self
        t = {}
        get = t.get
        for k2, c2 in other._t.items():
            for k1, c1 in self._t.items():
                k = k1 + k2
                v = get(k)
                t[k] = c1 * c2 if v is None else v + c1 * c2
        return MultiPoly(self.nvars, {k: c for k, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = MultiPoly.constant(self.nvars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def mul_affine(self, const, coeffs: Sequence) -> "MultiPoly":
        """Multiply by const + sum coeffs[i] x_i."""
        n = self.nvars
        t = {}
        get = t.get
        const = Q(const)
        factors = [(0, const)] if const else []
        factors += [(_unit_key(i, n), Q(a)) for i, a in enumerate(coeffs) if a]
        for k, c in self._t.items():
            for dk, a in factors:
                kk = k + dk
                v = get(kk)
                t[kk] = c * a if v is None else v + c * a
        return MultiPoly(n, {k: c for k, c in t.items() if c})

    def divide_affine(self, const, coeffs: Sequence) -> Optional["MultiPoly"]:
        """Exact quotient by const + sum coeffs[i] x_i, or None.

        Long division in the graded order; the divisor's leading term is
        its highest-index variable, so a remainder term free of that
        variable proves non-divisibility.
        """
        n = self.nvars
        coeffs = [Q(a) for a in coeffs]
        lead = max((i for i, a in enumerate(coeffs) if a), default=None)
        if lead is None:
            c = Q(const)
            if not c:
                raise ZeroDivisionError("division by the zero form")
            return self.scale(1 / c)
        if not self._t:
            return self
        a_lead = coeffs[lead]
        inv = 1 / a_lead
        lead_bits = _BITS * lead
        lead_key = _unit_key(lead, n)
        tail = [(lead_key - _unit_key(i, n), a) for i, a in enumerate(coeffs) if a and i != lead]
        c0 = Q(const)
        if c0:
            tail.append((lead_key, c0))
        r = dict(self._t)
        heap = [-k for k in r]
        heapq.heapify(heap)
        q = {}
        while heap:
            k = -heapq.heappop(heap)
            c = r.pop(k, None)
            if not c:
                continue
            if not (k >> lead_bits) & _MASK:
                return None
            qk = k - lead_key
            qc = c * inv
            q[qk] = qc
            for dk, a in tail:
                kk = k - dk
                v = r.get(kk)
                if v is None:
                    r[kk] = -qc * a
                    heapq.heappush(heap, -kk)
                else:
                    r[kk] = v - qc * a
        return MultiPoly(n, q)

    # evaluation & substitution ------------------------------------------
    def evaluate(self, point: Sequence):
        n = self.nvars
        if len(point) != n:
            raise DimensionError("point has wrong dimension")
        pt = [Q(p) if not isinstance(p, (float,)) and not _is_mp(p) else p for p in point]
        pow_cache = [dict() for _ in range(n)]
        total = 0
        for k, c in self._t.items():
            term = c
            for i in range(n):
                e = (k >> (_BITS * i)) & _MASK
                if e:
                    cache = pow_cache[i]
                    v = cache.get(e)
                    if v is None:
                        v = pt[i] ** e
                        cache[e] = v
                    term = term * v
            total = total + term
        return total

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Compose: replace x_i by images[i] (all over the same variables)."""
        if len(images) != self.nvars:
            raise DimensionError("need one image per variable")
        if not images:
            return self
        m = images[0].nvars
        powers = [{0: MultiPoly.constant(m, 1), 1: img} for img in images]

        def pw(i, e):
            cache = powers[i]
            if e not in cache:
                cache[e] = pw(i, e - 1) * images[i]
            return cache[e]

        out = MultiPoly.zero(m)
        for k, c in self._t.items():
            exps = unpack(k, self.nvars)
            term = MultiPoly.constant(m, c)
            for i, e in enumerate(exps):
                if e:
                    term = term * pw(i, e)
            out = out + term
        return out

    def embed(self, nvars: int, offset: int = 0) -> "MultiPoly":
        """Same polynomial viewed in ``nvars`` variables, variable i -> i+offset."""
        t = {}
        for k, c in self._t.items():
            exps = [0] * nvars
            for i, e in enumerate(unpack(k, self.nvars)):
                exps[i + offset] = e
            t[pack(exps)] = c
        return MultiPoly(nvars, t)

    def homogenize(self, degree: int) -> "MultiPoly":
        """x0^degree * p(x/x0) as a polynomial in (x0, x_1..x_n); x0 is index 0."""
        n = self.nvars
        t = {}
        for k, c in self._t.items():
            exps = unpack(k, n)
            e0 = degree - sum(exps)
            if e0 < 0:
                raise ValueError("homogenization degree below polynomial degree")
            t[pack((e0,) + exps)] = c
        return MultiPoly(n + 1, t)

    def coefficients_in_first(self) -> list:
        """Split p(x0, x) = sum_j p_j(x) x0^j; returns [p_0, p_1, ...]."""
        n = self.nvars
        buckets = {}
        for k, c in self._t.items():
            exps = unpack(k, n)
            buckets.setdefault(exps[0], {})[pack(exps[1:])] = c
        if not buckets:
            return []
        top = max(buckets)
        return [MultiPoly(n - 1, buckets.get(j, {})) for j in range(top + 1)]

    def max_power_of_first(self):
        """Largest j with x0^j dividing the polynomial (x0 = variable 0)."""
        if not self._t:
            return math.inf
        return min(k & _MASK for k in self._t)

    # serialization -------------------------------------------------------
    def to_json(self) -> list:
        return [{"exps": list(e), "coeff": qstr(c)} for e, c in self.terms()]

    @classmethod
    def from_json(cls, data: list, nvars: Optional[int] = None) -> "MultiPoly":
        if nvars is None:
            if not data:
                raise ValueError("cannot infer variable count of an empty polynomial")
            nvars = len(data[0]["exps"])
        return cls.from_dict(nvars, {tuple(d["exps"]): Q(d["coeff"]) for d in data})


def _is_mp(x) -> bool:
    return type(x).__module__.startswith("mpmath")


def poly_product_of_forms(nvars: int, forms: Iterable["LinearForm"], start: Optional[MultiPoly] = None) -> MultiPoly:
    p = start if start is not None else MultiPoly.constant(nvars, 1)
    for L in forms:
        p = p.mul_affine(L.h, [-a for a in L.u])
    return p


# ---------------------------------------------------------------------------
# linear forms


@dataclass(frozen=True)
class LinearForm:
    """The affine form h - <u, x>."""

    h: Rational
    u: tuple

    def __post_init__(self):
        object.__setattr__(self, "h", Q(self.h))
        object.__setattr__(self, "u", qvec(self.u))
        if not any(self.u):
            raise ValueError("linear form with zero normal")

    @property
    def nvars(self) -> int:
        return len(self.u)

    def __call__(self, x: Sequence):
        return self.h - dot(self.u, x)

    evaluate = __call__

    def coefficient_vector(self) -> tuple:
        return (self.h,) + self.u

    def scaled(self, c) -> "LinearForm":
        c = Q(c)
        return LinearForm(self.h * c, tuple(a * c for a in self.u))

    def primitive(self) -> tuple:
        """(c, L') with self = c * L', L' integral with content 1, same orientation."""
        vec = self.coefficient_vector()
        den = reduce(gmpy2.lcm, (v.denominator for v in vec), mpz(1))
        ints = [v.numerator * (den // v.denominator) for v in vec]
        g = reduce(gmpy2.gcd, ints, mpz(0))
        L = LinearForm(mpq(ints[0] // g), tuple(mpq(a // g) for a in ints[1:]))
        return mpq(g) / den, L

    def canonical(self) -> tuple:
        """(c, L') with self = c * L' and L' primitive with first nonzero entry of (h, u) positive."""
        c, L = self.primitive()
        first = next(v for v in L.coefficient_vector() if v)
        if first < 0:
            return -c, L.scaled(-1)
        return c, L

    def to_poly(self) -> MultiPoly:
        return MultiPoly.affine(self.h, [-a for a in self.u])

    def homogeneous_part(self) -> "LinearForm":
        """The form -<u, x> (height dropped)."""
        return LinearForm(0, self.u)

    def substitute_affine(self, A: Sequence[Sequence], b: Sequence) -> Optional["LinearForm"]:
        """The form y -> L(A y + b); None if the result is constant."""
        new_u = tuple(dot([A[i][j] for i in range(len(A))], self.u) for j in range(len(A[0])))
        new_h = self.h - dot(self.u, b)
        if not any(new_u):
            return None
        return LinearForm(new_h, new_u)

    def to_json(self) -> dict:
        return {"h": qstr(self.h), "u": [qstr(a) for a in self.u]}

    @classmethod
    def from_json(cls, data: dict) -> "LinearForm":
        return cls(Q(data["h"]), qvec(data["u"]))

    def __repr__(self):
        return f"LinearForm(h={self.h}, u=({', '.join(map(str, self.u))}))"


def _form_key(L: LinearForm):
    return L.coefficient_vector()


# ---------------------------------------------------------------------------
# rational functions


@dataclass(frozen=True, eq=True)
class RatFn:
    """sign * num / prod(L^mult) in canonical reduced form.

    Build instances through :func:`ratfn` (or the arithmetic operators);
    the constructor itself does not normalize.
    """

    nvars: int
    sign: int
    num: MultiPoly
    den: tuple  # ((LinearForm, mult), ...) sorted, canonical forms

    # construction --------------------------------------------------------
    @staticmethod
    def zero(nvars: int) -> "RatFn":
        return RatFn(nvars, 1, MultiPoly.zero(nvars), ())

    @staticmethod
    def constant(nvars: int, c) -> "RatFn":
        return ratfn(MultiPoly.constant(nvars, c), ())

    @staticmethod
    def from_poly(p: MultiPoly) -> "RatFn":
        return ratfn(p, ())

    # inspection ----------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def degree(self):
        return ratfn_degree(self)

    def den_forms(self) -> list:
        return [L for L, k in self.den for _ in range(k)]

    def den_multiset(self) -> dict:
        return {L: k for L, k in self.den}

    def signed_num(self) -> MultiPoly:
        return self.num if self.sign > 0 else -self.num

    def evaluate(self, x: Sequence):
        value = self.signed_num().evaluate(x)
        for L, k in self.den:
            lv = L(x) if not _is_mp(x[0]) and not isinstance(x[0], float) else _eval_form_float(L, x)
            if lv == 0:
                raise ZeroDivisionError("evaluation on a pole")
            value = value / lv ** k
        return value

    def numerator_over(self, forms: Sequence[LinearForm]) -> MultiPoly:
        """The polynomial N with self == N / prod(forms).

        ``forms`` must cover the reduced denominator up to scalars; extra
        forms multiply into N.
        """
        needed = dict(self.den_multiset())
        scale = mpq(1)
        extra = []
        for F in forms:
            c, Lc = F.canonical()
            scale *= c
            if needed.get(Lc, 0) > 0:
                needed[Lc] -= 1
            else:
                extra.append(Lc)
        if any(needed.values()):
            raise ValueError("denominator not covered by the given forms")
        return poly_product_of_forms(self.nvars, extra, self.signed_num()).scale(scale)

    # arithmetic ----------------------------------------------------------
    def __add__(self, other):
        return ratfn_add(self, other)

    def __neg__(self):
        if self.is_zero():
            return self
        return RatFn(self.nvars, -self.sign, self.num, self.den)

    def __sub__(self, other):
        return ratfn_add(self, -other)

    def __mul__(self, other):
        if isinstance(other, RatFn):
            if self.nvars != other.nvars:
                raise DimensionError("rational functions over different variable counts")
            merged = dict(self.den_multiset())
            for L, k in other.den:
                merged[L] = merged.get(L, 0) + k
            return ratfn(self.signed_num() * other.signed_num(), merged.items())
        if isinstance(other, MultiPoly):
            return ratfn(self.signed_num() * other, self.den)
        c = Q(other)
        if not c:
            return RatFn.zero(self.nvars)
        sign = self.sign if c > 0 else -self.sign
        return RatFn(self.nvars, sign, self.num.scale(abs(c)), self.den) if not self.is_zero() else self

    __rmul__ = __mul__

    def divide_by_forms(self, factors: Iterable) -> "RatFn":
        merged = dict(self.den_multiset())
        items = []
        for item in factors:
            L, k = (item, 1) if isinstance(item, LinearForm) else item
            items.append((L, k))
        return ratfn(self.signed_num(), list(self.den) + items)

    def substitute_affine(self, A: Sequence[Sequence], b: Sequence) -> "RatFn":
        """The function y -> self(A y + b)."""
        m = len(A[0])
        images = [MultiPoly.affine(b[i], A[i]) for i in range(len(A))]
        num = self.signed_num().substitute(images)
        factors = []
        for L, k in self.den:
            L2 = L.substitute_affine(A, b)
            if L2 is None:
                c = L.h - dot(L.u, b)
                if c == 0:
                    raise ZeroDivisionError("substitution maps a pole onto everything")
                num = num.scale(1 / c ** k)
            else:
                factors.append((L2, k))
        if num.nvars != m:
            num = MultiPoly.zero(m) if num.is_zero() else num
        return ratfn(num, factors)

    # serialization -------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "sign": self.sign,
            "nvars": self.nvars,
            "num": self.num.to_json(),
            "den": [dict(L.to_json(), mult=k) for L, k in self.den],
        }

    @classmethod
    def from_json(cls, data: dict) -> "RatFn":
        nvars = data.get("nvars")
        den = [(LinearForm(Q(d["h"]), qvec(d["u"])), int(d.get("mult", 1))) for d in data["den"]]
        if nvars is None:
            if den:
                nvars = den[0][0].nvars
            elif data["num"]:
                nvars = len(data["num"][0]["exps"])
            else:
                raise ValueError("cannot infer variable count")
        num = MultiPoly.from_json(data["num"], nvars)
        return ratfn(num.scale(int(data.get("sign", 1))), den)

    def __repr__(self):
        if self.is_zero():
            return "RatFn(0)"
        den = " * ".join(f"({L.h} - <{', '.join(map(str, L.u))}, x>)" + (f"^{k}" if k > 1 else "") for L, k in self.den)
        s = "-" if self.sign < 0 else ""
        return f"RatFn({s}[{self.num}] / [{den or '1'}])"


def _eval_form_float(L: LinearForm, x):
    return L.h + sum(-a * xi for a, xi in zip(L.u, x))


def ratfn(num: MultiPoly, factors: Iterable) -> RatFn:
    """Build a RatFn in canonical reduced form.

    ``factors`` holds LinearForms or (LinearForm, multiplicity) pairs; each
    form is rescaled to its canonical representative, scalars move into the
    numerator, and every factor that divides the numerator is cancelled.
    """
    n = num.nvars
    merged = {}
    scale = mpq(1)
    for item in factors:
        L, k = (item, 1) if isinstance(item, LinearForm) else item
        if L.nvars != n:
            raise DimensionError("denominator form over the wrong variable count")
        if k <= 0:
            continue
        c, Lc = L.canonical()
        scale *= c ** k
        merged[Lc] = merged.get(Lc, 0) + k
    if num.is_zero():
        return RatFn.zero(n)
    if scale != 1:
        num = num.scale(1 / scale)
    den = []
    for L in sorted(merged, key=_form_key):
        k = merged[L]
        neg_u = [-a for a in L.u]
        while k:
            qpoly = num.divide_affine(L.h, neg_u)
            if qpoly is None:
                break
            num = qpoly
            k -= 1
        if k:
            den.append((L, k))
    sign = 1
    if num.leading_coefficient() < 0:
        num, sign = -num, -1
    return RatFn(n, sign, num, tuple(den))


def ratfn_add(f: RatFn, g: RatFn) -> RatFn:
    if f.nvars != g.nvars:
        raise DimensionError("rational functions over different variable counts")
    if f.is_zero():
        return g
    if g.is_zero():
        return f
    mf, mg = f.den_multiset(), g.den_multiset()
    common = dict(mf)
    for L, k in mg.items():
        common[L] = max(common.get(L, 0), k)
    extra_f = [L for L, k in common.items() for _ in range(k - mf.get(L, 0))]
    extra_g = [L for L, k in common.items() for _ in range(k - mg.get(L, 0))]
    a = poly_product_of_forms(f.nvars, extra_f, f.signed_num())
    b = poly_product_of_forms(g.nvars, extra_g, g.signed_num())
    return ratfn(a + b, common.items())


def ratfn_sum(items: Iterable[RatFn], nvars: int) -> RatFn:
    total = RatFn.zero(nvars)
    for f in items:
        total = ratfn_add(total, f)
    return total


def ratfn_degree(f: RatFn):
    if f.is_zero():
        return NEG_INF
    return f.num.degree() - sum(k for _, k in f.den)


def linear_form_divide(p: MultiPoly, L: LinearForm) -> Optional[MultiPoly]:
    """q with p == L * q, or None when L does not divide p."""
    if p.nvars != L.nvars:
        raise DimensionError("form and polynomial over different variable counts")
    return p.divide_affine(L.h, [-a for a in L.u])


def series_coefficients_in_marker(num: MultiPoly, den: Iterable, s_max: int) -> list:
    """Taylor coefficients in x0 (variable 0) of num / prod(den).

    Each factor c - a0*x0 - <a, x> is written as beta(x) * (1 - (-a0/beta) x0)
    with beta = c - <a, x>, expanded as a truncated geometric series, and the
    series are multiplied.  Returns [c_0, ..., c_{s_max}] as RatFns in x.
    """
    if s_max < 0:
        raise ValueError("s_max must be nonnegative")
    n = num.nvars - 1
    if n < 1:
        raise DimensionError("need at least one variable besides the marker")
    factors = []
    for item in den:
        L, k = (item, 1) if isinstance(item, LinearForm) else item
        if L.nvars != n + 1:
            raise DimensionError("denominator form over the wrong variable count")
        if not any(L.u[1:]):
            raise UnsupportedPolyhedronError("denominator factor without x-part")
        factors.extend([L] * k)

    parts = num.coefficients_in_first()
    series = [RatFn.from_poly(parts[j]) if j < len(parts) else RatFn.zero(n) for j in range(s_max + 1)]
    for L in factors:
        beta = LinearForm(L.h, L.u[1:])
        ratio = -L.u[0]  # coefficient of x0 in L
        geo = []
        for k in range(s_max + 1):
            coeff = (-ratio) ** k
            geo.append(ratfn(MultiPoly.constant(n, coeff), [(beta, k + 1)]))
        new = []
        for s in range(s_max + 1):
            acc = RatFn.zero(n)
            for k in range(s + 1):
                if series[s - k].is_zero() or geo[k].is_zero():
                    continue
                acc = acc + series[s - k] * geo[k]
            new.append(acc)
        series = new
    return series
