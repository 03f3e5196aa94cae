"""Exact arithmetic in the field of fractions of Z[q, 1/q, r, 1/r].

Two layers:

* :class:`LaurentPoly` -- a sparse Laurent polynomial in ``q`` and ``r`` with
  rational coefficients, stored as ``{(q_exp, r_exp): coeff}``.
* :class:`FieldValue` -- a quotient ``num / den`` kept in canonical form, so
  that equality is a structural comparison.

Canonical form of a :class:`FieldValue`:

* ``gcd(num, den)`` is a unit,
* ``den`` is an honest polynomial (no negative exponents) whose smallest
  ``q``- and ``r``-exponents are 0, with integer coefficients, content 1 and a
  positive leading coefficient in lexicographic ``(r, q)`` order,
* ``num`` absorbs every unit factor (monomials and rational constants).

GCDs are computed on ``Z[q][r]`` by primitive polynomial remainder sequences
with ``r`` as the outer variable.  Denominators met in practice only involve
``q``, which takes a purely univariate fast path.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from numbers import Rational
from typing import Dict, Iterable, List, Mapping, Tuple, Union

__all__ = [
    "LaurentPoly",
    "FieldValue",
    "PoleError",
    "Q",
    "R",
    "ONE",
    "ZERO",
    "substitute",
]

Coeff = Union[int, Fraction]
Monomial = Tuple[int, int]  # (q exponent, r exponent)


class PoleError(ZeroDivisionError):
    """Division by zero, or evaluation/substitution at a pole."""


def _norm(c: Coeff) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


# ---------------------------------------------------------------------------
# Dense univariate polynomials over Z: lists of ints, index = exponent of q.
# The zero polynomial is [].
# ---------------------------------------------------------------------------

def _up_trim(a: List[int]) -> List[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _up_sub(a: List[int], b: List[int]) -> List[int]:
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] -= c
    return _up_trim(out)


def _up_mul(a: List[int], b: List[int]) -> List[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _up_content(a: List[int]) -> int:
    return reduce(gcd, a, 0)


def _up_divexact(a: List[int], b: List[int]) -> List[int]:
    """Exact division ``a / b`` in Z[q]; raises if it does not divide."""
    if not b:
        raise PoleError("division by the zero polynomial")
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    if len(a) - 1 < db:
        if a:
            raise ArithmeticError("inexact polynomial division")
        return []
    out = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c == 0:
            continue
        quo, rem = divmod(c, lb)
        if rem:
            raise ArithmeticError("inexact polynomial division")
        out[k - db] = quo
        for j in range(db + 1):
            a[k - db + j] -= quo * b[j]
    if any(a):
        raise ArithmeticError("inexact polynomial division")
    return _up_trim(out)


def _up_prem(a: List[int], b: List[int]) -> List[int]:
    """Pseudo-remainder of a by b over Z."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        c = a[-1]
        shift = len(a) - 1 - db
        a = [x * lb for x in a]
        for j in range(db + 1):
            a[shift + j] -= c * b[j]
        _up_trim(a)
    return a


def _up_pp(a: List[int]) -> List[int]:
    c = _up_content(a)
    if a[-1] < 0:
        c = -c
    return [x // c for x in a]


def _up_normal(a: List[int]) -> List[int]:
    return [-x for x in a] if a and a[-1] < 0 else list(a)


def _up_gcd(a: List[int], b: List[int]) -> List[int]:
    """gcd in Z[q] (integer content included), positive leading coefficient."""
    if not a:
        return _up_normal(b)
    if not b:
        return _up_normal(a)
    g = _up_heu_gcd(a, b)
    return g if g is not None else _up_gcd_prs(a, b)


def _up_gcd_prs(a: List[int], b: List[int]) -> List[int]:
    """gcd in Z[q] by primitive polynomial remainder sequence."""
    if not a:
        return _up_normal(b)
    if not b:
        return _up_normal(a)
    c = gcd(_up_content(a), _up_content(b))
    a, b = _up_pp(a), _up_pp(b)
    if len(a) > 1 and len(b) > 1 and _up_coprime(a, b):
        return [c]
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            return [c]
        a, b = b, _up_prem(a, b)
        if b:
            b = _up_pp(b)
    return [c * x for x in a]



# ---------------------------------------------------------------------------
# Heuristic gcd: evaluate at a large integer, take the integer gcd and read
# the candidate back off its balanced xi-adic digits.  A candidate is only
# accepted after it divides both inputs exactly, so the result is always a
# true gcd; on repeated failure the callers fall back to the PRS.
# ---------------------------------------------------------------------------

def _xi_digits(h: int, xi: int) -> List[int]:
    out = []
    half = xi // 2
    while h:
        c = h % xi
        if c > half:
            c -= xi
        out.append(c)
        h = (h - c) // xi
    return out


def _up_eval(a: List[int], x: int) -> int:
    v = 0
    for c in reversed(a):
        v = v * x + c
    return v


def _up_heu_gcd(a: List[int], b: List[int]):
    """gcd of nonzero a, b in Z[q] with content, or None if the heuristic gives up."""
    ca, cb = _up_content(a), _up_content(b)
    c = gcd(ca, cb)
    a = [x // ca for x in a]
    b = [x // cb for x in b]
    if len(a) == 1 or len(b) == 1:
        return [c]
    xi = 2 * min(max(map(abs, a)), max(map(abs, b))) + 29
    for _ in range(6):
        h = gcd(_up_eval(a, xi), _up_eval(b, xi))
        if h:
            g = _up_pp(_xi_digits(h, xi))
            try:
                _up_divexact(a, g)
                _up_divexact(b, g)
            except ArithmeticError:
                pass
            else:
                return [c * x for x in g]
        xi = xi * 73794 // 27011
    return None


def _bp_heu_gcd(a, b):
    """gcd of nonzero a, b in Z[q][r] with content, or None."""
    ca = reduce(gcd, (x for row in a for x in row), 0)
    cb = reduce(gcd, (x for row in b for x in row), 0)
    c = gcd(ca, cb)
    a = [[x // ca for x in row] for row in a]
    b = [[x // cb for x in row] for row in b]
    norm = min(max(abs(x) for row in a for x in row), max(abs(x) for row in b for x in row))
    xi = 2 * norm + 29
    for _ in range(6):
        ea = _up_trim([_up_eval(row, xi) for row in a])
        eb = _up_trim([_up_eval(row, xi) for row in b])
        if len(ea) == len(a) and len(eb) == len(b):
            h = _up_heu_gcd(ea, eb)
            if h is None:
                h = _up_gcd_prs(ea, eb)
            g = _bp_trim([_xi_digits(x, xi) for x in h])
            content = reduce(gcd, (x for row in g for x in row), 0)
            if g[-1][-1] < 0:
                content = -content
            g = [[x // content for x in row] for row in g]
            try:
                _bp_divexact(a, g)
                _bp_divexact(b, g)
            except ArithmeticError:
                pass
            else:
                return [[c * x for x in row] for row in g]
        xi = xi * 73794 // 27011
    return None

# ---------------------------------------------------------------------------
# Coprimality certificates.  The gcd of images modulo a prime (after fixing
# q at a point, for bivariate input) has at least the degree of the image
# of the true gcd as long as the leading coefficients survive, so a constant
# image gcd proves that the true gcd has degree zero.
# ---------------------------------------------------------------------------

_P = 2147483647
_POINTS = (1000003, 7919, 104729, 31337)


def _modp_degree_of_gcd(a: List[int], b: List[int]) -> int:
    a = _up_trim([x % _P for x in a])
    b = _up_trim([x % _P for x in b])
    while b:
        inv = pow(b[-1], _P - 2, _P)
        while len(a) >= len(b):
            c = a[-1] * inv % _P
            shift = len(a) - len(b)
            for j, y in enumerate(b):
                a[shift + j] = (a[shift + j] - c * y) % _P
            _up_trim(a)
            if not a:
                break
        a, b = b, a
    return len(a) - 1


def _up_coprime(a: List[int], b: List[int]) -> bool:
    """True if a and b certainly have no common factor of positive degree."""
    if a[-1] % _P == 0 or b[-1] % _P == 0:
        return False
    return _modp_degree_of_gcd(a, b) == 0


def _bp_r_coprime(a, b) -> bool:
    """True if the gcd of a and b in Z[q][r] certainly has r-degree zero."""
    for q0 in _POINTS:
        def image(poly):
            out = []
            for row in poly:
                v = 0
                for c in reversed(row):
                    v = (v * q0 + c) % _P
                out.append(v)
            return out
        ia, ib = image(a), image(b)
        if ia[-1] and ib[-1]:
            return _modp_degree_of_gcd(ia, ib) == 0
    return False

# ---------------------------------------------------------------------------
# Bivariate polynomials in Z[q][r]: lists (index = r exponent) of dense
# univariate q-polynomials.
# ---------------------------------------------------------------------------

def _bp_trim(a):
    while a and not a[-1]:
        a.pop()
    return a


def _bp_content(a) -> List[int]:
    g: List[int] = []
    for c in a:
        if c:
            g = _up_gcd(g, c)
            if len(g) == 1 and g[0] == 1:
                break
    return g


def _bp_prem(a, b):
    a = [list(c) for c in a]
    db, lb = len(b) - 1, b[-1]
    while a and len(a) - 1 >= db:
        c = a[-1]
        shift = len(a) - 1 - db
        a = [_up_mul(x, lb) for x in a]
        for j in range(db + 1):
            a[shift + j] = _up_sub(a[shift + j], _up_mul(c, b[j]))
        _bp_trim(a)
    return a


def _bp_divexact(a, b):
    a = [list(c) for c in a]
    db, lb = len(b) - 1, b[-1]
    if len(a) - 1 < db:
        if a:
            raise ArithmeticError("inexact polynomial division")
        return []
    out = [[] for _ in range(len(a) - db)]
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if not c:
            continue
        quo = _up_divexact(c, lb)
        out[k - db] = quo
        for j in range(db + 1):
            a[k - db + j] = _up_sub(a[k - db + j], _up_mul(quo, b[j]))
    if any(a):
        raise ArithmeticError("inexact polynomial division")
    return _bp_trim(out)


def _bp_pp(a):
    c = _bp_content(a)
    if a[-1][-1] < 0:
        c = [-x for x in c]
    return [_up_divexact(x, c) if x else [] for x in a]


def _bp_gcd(a, b):
    """gcd in Z[q][r] up to an integer unit."""
    if not a:
        return _bp_pp(b)
    if not b:
        return _bp_pp(a)
    g = _bp_heu_gcd(a, b)
    return g if g is not None else _bp_gcd_prs(a, b)


def _bp_gcd_prs(a, b):
    """gcd in Z[q][r] by primitive PRS in r."""
    if not a:
        return _bp_pp(b)
    if not b:
        return _bp_pp(a)
    cont = _up_gcd(_bp_content(a), _bp_content(b))
    a, b = _bp_pp(a), _bp_pp(b)
    if len(a) > 1 and len(b) > 1 and _bp_r_coprime(a, b):
        return [cont]
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            return [cont]
        a, b = b, _bp_prem(a, b)
        if b:
            b = _bp_pp(b)
    return [_up_mul(cont, x) for x in a]


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------

class LaurentPoly:
    """Sparse Laurent polynomial in q and r with rational coefficients.

    Instances are immutable; zero coefficients are never stored.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Coeff] | None = None):
        clean: Dict[Monomial, Coeff] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[(int(m[0]), int(m[1]))] = _norm(c if isinstance(c, int) else Fraction(c))
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Coeff]) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, q_exp: int = 0, r_exp: int = 0, coeff: Coeff = 1) -> "LaurentPoly":
        return cls({(q_exp, r_exp): coeff})

    @classmethod
    def constant(cls, c: Coeff) -> "LaurentPoly":
        return cls({(0, 0): c})

    # -- structure ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(0, 0): 1}

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == LaurentPoly.constant(other).terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def min_exponents(self) -> Monomial:
        return (min(m[0] for m in self.terms), min(m[1] for m in self.terms))

    def max_exponents(self) -> Monomial:
        return (max(m[0] for m in self.terms), max(m[1] for m in self.terms))

    def involves_r(self) -> bool:
        return any(m[1] for m in self.terms)

    def leading(self) -> Tuple[Monomial, Coeff]:
        """Leading term under lexicographic (r, q) order."""
        m = max(self.terms, key=lambda t: (t[1], t[0]))
        return m, self.terms[m]

    def sorted_terms(self) -> List[Tuple[Monomial, Coeff]]:
        return sorted(self.terms.items(), key=lambda t: (-t[0][1], -t[0][0]))

    # -- arithmetic ----------------------------------------------------------
    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({m: -c for m, c in self.terms.items()})

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = _norm(s)
            else:
                out.pop(m, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(other)
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            if not other:
                return LaurentPoly._raw({})
            return LaurentPoly._raw({m: _norm(c * other) for m, c in self.terms.items()})
        out: Dict[Monomial, Coeff] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                m = (a1 + a2, b1 + b2)
                out[m] = out.get(m, 0) + c1 * c2
        return LaurentPoly._raw({m: _norm(c) for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (m, c), = self.terms.items()
            return LaurentPoly({(-m[0] * -n, -m[1] * -n): Fraction(1, 1) / Fraction(c) ** -n})
        result = LaurentPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, q_shift: int, r_shift: int) -> "LaurentPoly":
        return LaurentPoly._raw({(a + q_shift, b + r_shift): c for (a, b), c in self.terms.items()})

    def invert_q(self) -> "LaurentPoly":
        return LaurentPoly._raw({(-a, b): c for (a, b), c in self.terms.items()})

    def evaluate(self, q, r=1) -> Fraction:
        q, r = Fraction(q), Fraction(r)
        total = Fraction(0)
        for (a, b), c in self.terms.items():
            total += c * q ** a * r ** b
        return total

    def r_coefficients(self) -> Dict[int, "LaurentPoly"]:
        """Split into ``{r_exp: coefficient polynomial in q}``."""
        out: Dict[int, Dict[Monomial, Coeff]] = {}
        for (a, b), c in self.terms.items():
            out.setdefault(b, {})[(a, 0)] = c
        return {b: LaurentPoly._raw(t) for b, t in out.items()}

    # -- conversion to Z[q][r] -------------------------------------------------
    def _to_bp(self, q0: int, r0: int):
        """Integer-coefficient polynomial after shifting by q^-q0 r^-r0."""
        qmax, rmax = self.max_exponents()
        out = [[0] * (qmax - q0 + 1) for _ in range(rmax - r0 + 1)]
        for (a, b), c in self.terms.items():
            out[b - r0][a - q0] = c
        return _bp_trim([_up_trim(x) for x in out])

    @staticmethod
    def _from_bp(bp, q0: int = 0, r0: int = 0) -> "LaurentPoly":
        terms = {}
        for b, row in enumerate(bp):
            for a, c in enumerate(row):
                if c:
                    terms[(a + q0, b + r0)] = c
        return LaurentPoly._raw(terms)

    # -- rendering --------------------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (a, b), c in self.sorted_terms():
            factors = []
            if a:
                factors.append("q" if a == 1 else f"q^{a}")
            if b:
                factors.append("r" if b == 1 else f"r^{b}")
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += sign + body
        return out

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def to_json(self) -> List[list]:
        return [[a, b, str(c)] for (a, b), c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data: Iterable[Iterable]) -> "LaurentPoly":
        return cls({(int(a), int(b)): Fraction(c) for a, b, c in data})


def _as_int_pair(num: LaurentPoly, den: LaurentPoly):
    """Scale num and den by a common integer so both have integer coefficients."""
    dens = [c.denominator for c in num.terms.values() if isinstance(c, Fraction)]
    dens += [c.denominator for c in den.terms.values() if isinstance(c, Fraction)]
    if not dens:
        return num, den
    m = lcm(*dens)
    return num * m, den * m


def _canonical(num: LaurentPoly, den: LaurentPoly) -> Tuple[LaurentPoly, LaurentPoly]:
    if not den.terms:
        raise PoleError("division by zero")
    if not num.terms:
        return num, _ONE_POLY
    if len(den.terms) == 1:
        (m, c), = den.terms.items()
        inv = Fraction(1) / c
        return LaurentPoly._raw({(a - m[0], b - m[1]): _norm(x * inv) for (a, b), x in num.terms.items()}), _ONE_POLY

    num, den = _as_int_pair(num, den)
    nq0, nr0 = num.min_exponents()
    dq0, dr0 = den.min_exponents()
    n_bp = num._to_bp(nq0, nr0)
    d_bp = den._to_bp(dq0, dr0)

    if len(d_bp) == 1:
        # denominator free of r: gcd against each r-coefficient of num
        d = d_bp[0]
        g = d
        for row in n_bp:
            if row:
                g = _up_gcd(g, row)
                if len(g) == 1:
                    break
        if len(g) > 1:
            d = _up_divexact(d, g)
            n_bp = [_up_divexact(row, g) if row else [] for row in n_bp]
        d_bp = [d]
    else:
        g = _bp_gcd(n_bp, d_bp)
        if len(g) > 1 or len(g[0]) > 1:
            n_bp = _bp_divexact(n_bp, g)
            d_bp = _bp_divexact(d_bp, g)

    # unit normalization of the denominator
    content = reduce(gcd, (c for row in d_bp for c in row), 0)
    lead = d_bp[-1][-1]
    scale = content if lead > 0 else -content

    if len(d_bp) == 1 and len(d_bp[0]) == 1:
        new_den = _ONE_POLY
        scale = d_bp[0][0]
    else:
        new_den = LaurentPoly._from_bp([[c // scale for c in row] for row in d_bp])
    frac_scale = Fraction(1, scale) if scale != 1 else 1
    terms = {}
    for b, row in enumerate(n_bp):
        for a, c in enumerate(row):
            if c:
                terms[(a + nq0 - dq0, b + nr0 - dr0)] = _norm(c * frac_scale) if frac_scale != 1 else c
    return LaurentPoly._raw(terms), new_den


_ONE_POLY = LaurentPoly._raw({(0, 0): 1})


class FieldValue:
    """An element of Frac(Z[q, 1/q, r, 1/r]) in canonical form.

    >>> (Q + 1 / Q) * (Q - 1 / Q) == Q**2 - Q**-2
    True
    >>> str((Q**2 - 1) / (Q - 1))
    'q+1'
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1):
        if not isinstance(num, LaurentPoly):
            num = LaurentPoly.constant(num)
        if not isinstance(den, LaurentPoly):
            den = LaurentPoly.constant(den)
        self.num, self.den = _canonical(num, den)
        self._hash = None

    @classmethod
    def _raw(cls, num: LaurentPoly, den: LaurentPoly) -> "FieldValue":
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def coerce(cls, x) -> "FieldValue":
        if isinstance(x, FieldValue):
            return x
        if isinstance(x, LaurentPoly):
            return cls(x)
        if isinstance(x, (int, Fraction)) or isinstance(x, Rational):
            return cls._raw(LaurentPoly.constant(Fraction(x)) if x else LaurentPoly(), _ONE_POLY)
        raise TypeError(f"cannot coerce {type(x).__name__} to FieldValue")

    # -- predicates ----------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num.terms

    def __bool__(self) -> bool:
        return bool(self.num.terms)

    def is_laurent(self) -> bool:
        return self.den.is_one()

    def involves_r(self) -> bool:
        return self.num.involves_r() or self.den.involves_r()

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldValue):
            try:
                other = FieldValue.coerce(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # -- arithmetic ------------------------------------------------------------------
    def __neg__(self) -> "FieldValue":
        return FieldValue._raw(-self.num, self.den)

    def __add__(self, other) -> "FieldValue":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other.num.terms:
            return self
        if not self.num.terms:
            return other
        if self.den == other.den:
            if self.den.is_one():
                return FieldValue._raw(self.num + other.num, _ONE_POLY)
            return FieldValue(self.num + other.num, self.den)
        return FieldValue(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other) -> "FieldValue":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "FieldValue":
        return (-self) + other

    def __mul__(self, other) -> "FieldValue":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self.num.terms or not other.num.terms:
            return ZERO
        if self.den.is_one() and other.den.is_one():
            return FieldValue._raw(self.num * other.num, _ONE_POLY)
        return FieldValue(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "FieldValue":
        if not self.num.terms:
            raise PoleError("division by zero")
        return FieldValue(self.den, self.num)

    def __truediv__(self, other) -> "FieldValue":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other.num.terms:
            raise PoleError("division by zero")
        return FieldValue(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "FieldValue":
        return _coerce(other) / self

    def __pow__(self, n: int) -> "FieldValue":
        if n < 0:
            return self.inverse() ** -n
        if self.den.is_one():
            return FieldValue._raw(self.num ** n, _ONE_POLY)
        return FieldValue._raw(self.num ** n, self.den ** n)

    # -- substitutions -----------------------------------------------------------------
    def invert_q(self) -> "FieldValue":
        """The image under the field automorphism q -> 1/q."""
        return FieldValue(self.num.invert_q(), self.den.invert_q())

    def substitute_r(self, expr) -> "FieldValue":
        """Replace r by ``expr``, a FieldValue free of r."""
        expr = FieldValue.coerce(expr)
        if expr.involves_r():
            raise ValueError("substituted expression must not involve r")

        def image(p: LaurentPoly) -> FieldValue:
            total = ZERO
            for b, coeff in p.r_coefficients().items():
                if b < 0 and expr.is_zero():
                    raise PoleError("substitution r -> 0 hits a pole")
                total = total + FieldValue(coeff) * expr ** b
            return total

        den = image(self.den)
        if den.is_zero():
            raise PoleError("substitution creates a zero denominator")
        return image(self.num) / den

    def evaluate(self, q, r=1) -> Fraction:
        """Exact rational value at rational (q, r)."""
        q, r = Fraction(q), Fraction(r)
        if q == 0 or r == 0:
            raise PoleError("q and r must be nonzero")
        d = self.den.evaluate(q, r)
        if d == 0:
            raise PoleError(f"pole at q={q}, r={r}")
        return self.num.evaluate(q, r) / d

    # -- rendering ---------------------------------------------------------------------
    def __str__(self) -> str:
        if self.den.is_one():
            return str(self.num)
        num = str(self.num)
        if len(self.num.terms) > 1:
            num = f"({num})"
        return f"{num}/({self.den})"

    def __repr__(self) -> str:
        return f"FieldValue({self})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data: Mapping) -> "FieldValue":
        return cls(LaurentPoly.from_json(data["num"]), LaurentPoly.from_json(data["den"]))


def _coerce(x):
    if isinstance(x, FieldValue):
        return x
    try:
        return FieldValue.coerce(x)
    except TypeError:
        return NotImplemented


def substitute(v: FieldValue, *, invert_q: bool = False, r=None) -> FieldValue:
    """Apply q -> 1/q and/or r -> ``r`` (an r-free FieldValue) to ``v``."""
    if invert_q:
        v = v.invert_q()
    if r is not None:
        v = v.substitute_r(r)
    return v


ONE = FieldValue._raw(_ONE_POLY, _ONE_POLY)
ZERO = FieldValue._raw(LaurentPoly(), _ONE_POLY)
Q = FieldValue._raw(LaurentPoly.monomial(1, 0), _ONE_POLY)
R = FieldValue._raw(LaurentPoly.monomial(0, 1), _ONE_POLY)
