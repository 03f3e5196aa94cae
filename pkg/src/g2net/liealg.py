"""Root data of g2 and the quantities derived from it.

This is a second route to the crossing coefficients: Casimir values give
the chord eigenvalues, exponentiating those gives the eigenvalues of a
crossing on each summand of V (x) V, and solving the crossing-change
relation summand by summand recovers (alpha, beta, gamma, delta).  Nothing
here reads :mod:`g2net.coeffs`.

Weights are integer vectors in the basis of simple roots; inner products
use the Gram matrix with short roots of square length 2.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from .ring import ONE, Q, R, ZERO, FieldValue, LaurentPoly

__all__ = [
    "RootDataG2",
    "ROOTS",
    "FLIP_SIGNS",
    "casimir_eigenvalue",
    "casimir_ratios",
    "chord_eigenvalues",
    "crossing_eigenvalues",
    "derive_skein_coefficients",
    "rosso_jones_unknot",
    "weyl_dimension",
    "rosso_jones_exponents",
    "solve_linear",
]

Weight = Tuple[int, int]


@dataclass(frozen=True)
class RootDataG2:
    gram: Tuple[Tuple[int, int], Tuple[int, int]] = ((2, -3), (-3, 6))
    positive_roots: Tuple[Weight, ...] = ((1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2))
    omega1: Weight = (2, 1)
    omega2: Weight = (3, 2)

    @property
    def delta(self) -> Weight:
        """Half the sum of the positive roots, which is omega1 + omega2."""
        return (self.omega1[0] + self.omega2[0], self.omega1[1] + self.omega2[1])

    @property
    def highest_weights(self) -> Dict[str, Weight]:
        w1, w2 = self.omega1, self.omega2
        return {"C": (0, 0), "V": w1, "L": w2, "W": (2 * w1[0], 2 * w1[1])}

    def form(self, a: Sequence[int], b: Sequence[int]) -> int:
        g = self.gram
        return sum(a[i] * g[i][j] * b[j] for i in range(2) for j in range(2))

    def is_dominant(self, lam: Sequence[int]) -> bool:
        # pairing with each simple coroot must be a nonnegative integer
        for k in range(2):
            e = (1, 0) if k == 0 else (0, 1)
            num = 2 * self.form(lam, e)
            den = self.form(e, e)
            if num < 0 or num % den:
                return False
        return True


ROOTS = RootDataG2()

# +1 on the symmetric square (C, W), -1 on the exterior square (V, L)
FLIP_SIGNS = {"C": 1, "V": -1, "L": -1, "W": 1}
SUMMANDS = ("C", "V", "L", "W")


def _shifted(lam: Sequence[int], k: int = 1, roots: RootDataG2 = ROOTS) -> Weight:
    d = roots.delta
    return (lam[0] + k * d[0], lam[1] + k * d[1])


def casimir_eigenvalue(lam: Sequence[int], roots: RootDataG2 = ROOTS) -> Fraction:
    """(lam, lam + 2 delta), normalized so the adjoint representation gives 1."""
    if not roots.is_dominant(lam):
        raise ValueError(f"weight {tuple(lam)} is not dominant")
    adj = roots.omega2
    raw = roots.form(lam, _shifted(lam, 2, roots))
    return Fraction(raw, roots.form(adj, _shifted(adj, 2, roots)))


def casimir_ratios(roots: RootDataG2 = ROOTS) -> Dict[str, Fraction]:
    return {k: casimir_eigenvalue(w, roots) for k, w in roots.highest_weights.items()}


def chord_eigenvalues(roots: RootDataG2 = ROOTS) -> Dict[str, Fraction]:
    """Chord eigenvalue c_V - c_U / 2 on each summand U of V (x) V."""
    c = casimir_ratios(roots)
    return {u: c["V"] - c[u] / 2 for u in SUMMANDS}


def weyl_dimension(lam: Sequence[int], roots: RootDataG2 = ROOTS) -> int:
    num = den = 1
    shifted = _shifted(lam, 1, roots)
    for a in roots.positive_roots:
        num *= roots.form(shifted, a)
        den *= roots.form(roots.delta, a)
    if num % den:
        raise ArithmeticError("Weyl dimension is not an integer")
    return num // den


def _exponent(x: Fraction) -> int:
    e = 12 * x
    if e.denominator != 1:
        raise ArithmeticError(f"chord eigenvalue {x} gives a fractional q-exponent")
    return int(e)


def crossing_eigenvalues(roots: RootDataG2 = ROOTS) -> Dict[str, Tuple[FieldValue, FieldValue]]:
    """(positive, negative) crossing eigenvalue on each summand."""
    out = {}
    for u, x in chord_eigenvalues(roots).items():
        e = _exponent(x)
        s = FLIP_SIGNS[u]
        out[u] = (s * Q ** (-e), s * Q ** e)
    return out


def solve_linear(matrix: List[List[FieldValue]], rhs: List[FieldValue]) -> List[FieldValue]:
    """Gaussian elimination over the field; raises ArithmeticError if singular."""
    n = len(matrix)
    a = [list(row) + [b] for row, b in zip(matrix, rhs)]
    for col in range(n):
        piv = next((i for i in range(col, n) if not a[i][col].is_zero()), None)
        if piv is None:
            raise ArithmeticError("singular system")
        a[col], a[piv] = a[piv], a[col]
        inv = a[col][col].inverse()
        a[col] = [v * inv for v in a[col]]
        for i in range(n):
            if i != col and not a[i][col].is_zero():
                f = a[i][col]
                a[i] = [v - f * w for v, w in zip(a[i], a[col])]
    return [a[i][n] for i in range(n)]


def derive_skein_coefficients(roots: RootDataG2 = ROOTS) -> Tuple[FieldValue, ...]:
    """(alpha, beta, gamma, delta) with pos = alpha*neg + beta*id + gamma*cupcap + delta*H.

    On each summand the identity acts by 1, the cup-cap by the loop value
    on C only, and the H-tangle by r on V only.
    """
    loop = _loop_value()
    eig = crossing_eigenvalues(roots)
    cupcap = {"C": loop, "V": ZERO, "L": ZERO, "W": ZERO}
    h = {"C": ZERO, "V": R, "L": ZERO, "W": ZERO}
    matrix = [[eig[u][1], ONE, cupcap[u], h[u]] for u in SUMMANDS]
    rhs = [eig[u][0] for u in SUMMANDS]
    return tuple(solve_linear(matrix, rhs))


def _u_binomial(m: int) -> FieldValue:
    return FieldValue(LaurentPoly({(m, 0): 1, (-m, 0): -1}))


@lru_cache(maxsize=None)
def _rosso_jones(roots: RootDataG2 = ROOTS) -> Tuple[LaurentPoly, Tuple[int, ...], Tuple[int, ...]]:
    lam = roots.highest_weights["V"]
    ms = tuple(sorted(roots.form(_shifted(lam, 1, roots), a) for a in roots.positive_roots))
    ns = tuple(sorted(roots.form(roots.delta, a) for a in roots.positive_roots))
    value = ONE
    for m, n in zip(ms, ns):
        value = value * _u_binomial(m) / _u_binomial(n)
    if not value.den.is_one():
        raise ArithmeticError("quantum dimension is not a Laurent polynomial")
    return value.num, ms, ns


def rosso_jones_unknot(roots: RootDataG2 = ROOTS) -> LaurentPoly:
    """Quantum dimension of V as a Laurent polynomial in u (stored in the q slot)."""
    return _rosso_jones(roots)[0]


def rosso_jones_exponents(roots: RootDataG2 = ROOTS) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    _, ms, ns = _rosso_jones(roots)
    return ms, ns


def _loop_value() -> FieldValue:
    """The unknot value in q, from the Rosso--Jones product with u^2 = q."""
    poly = rosso_jones_unknot()
    terms = {}
    for (e, re), c in poly.terms.items():
        if e % 2:
            raise ArithmeticError("odd power of u in the quantum dimension")
        terms[(e // 2, re)] = c
    return FieldValue(LaurentPoly(terms))
