"""Named constants of the (g2, V) skein theory, as exact field values.

Every constant is built from its closed-form expression in q and r.  The
:mod:`g2net.liealg` module re-derives the crossing coefficients from root
data independently; the two routes are compared in the test-suite.
"""
from __future__ import annotations

from dataclasses import dataclass, fields
from functools import lru_cache
from typing import Dict, Tuple

from .ring import ONE, Q, R, ZERO, FieldValue

__all__ = [
    "CoefficientTable",
    "build_table",
    "eigenvalue_table",
    "identity_residuals",
    "SUMMANDS",
    "TANGLES",
    "KUPERBERG_R",
]

SUMMANDS = ("C", "V", "L", "W")
# columns: positive crossing, negative crossing, identity arcs, cup-cap, H
TANGLES = ("pos", "neg", "id", "cupcap", "H")

# r specialization giving the one-variable quantum G2 skein relation
KUPERBERG_R = -(Q**2 + Q + 1 + Q**-2 + Q**-3 + Q**-4)


@dataclass(frozen=True)
class CoefficientTable:
    """Skein and mesh-rule coefficients.

    ``alpha .. delta`` drive the crossing-change relation, ``lam .. sigma``
    the crossing-elimination relation; ``t``, ``g``, ``d`` and the two
    square coefficients belong to the planar mesh rules.
    """

    sevenC: FieldValue
    alpha: FieldValue
    beta: FieldValue
    gamma: FieldValue
    delta: FieldValue
    lam: FieldValue
    mu: FieldValue
    rho: FieldValue
    sigma: FieldValue
    t: FieldValue
    g: FieldValue
    d: FieldValue
    square_arc: FieldValue
    square_tree: FieldValue

    def as_dict(self) -> Dict[str, FieldValue]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def replace(self, **changes) -> "CoefficientTable":
        data = self.as_dict()
        data.update(changes)
        return CoefficientTable(**data)


@lru_cache(maxsize=None)
def build_table() -> CoefficientTable:
    q, r = Q, R
    sevenC = q**5 + q**4 + q + 1 + q**-1 + q**-4 + q**-5
    alpha = q
    beta = q - 1
    gamma = (-q**7 + q**-6 - q + 1) / sevenC
    delta = (q**4 - q**-3 - q + 1) / r
    one_minus = 1 - alpha**2
    lam = (alpha * gamma + beta) / one_minus
    mu = (alpha * beta + gamma) / one_minus
    rho = delta / one_minus
    sigma = alpha * delta / one_minus
    t = (-q**3 + alpha * q**-3 - gamma) / delta
    g = q**6 + q**5 + q**4 + q**2 + q + 1
    d = r * q**3 / g
    square_arc = r**2 * q**5 / (g * (q**4 + 1))
    square_tree = r * q**2 * (q**2 + 1) / g
    return CoefficientTable(
        sevenC=sevenC, alpha=alpha, beta=beta, gamma=gamma, delta=delta,
        lam=lam, mu=mu, rho=rho, sigma=sigma,
        t=t, g=g, d=d, square_arc=square_arc, square_tree=square_tree,
    )


@lru_cache(maxsize=None)
def eigenvalue_table() -> Tuple[Tuple[FieldValue, ...], ...]:
    """Eigenvalues of the five basic 4-ended tangles on C, V, L, W.

    Rows follow :data:`SUMMANDS`, columns follow :data:`TANGLES`.
    """
    q, r = Q, R
    c7 = build_table().sevenC
    return (
        (q**-6, q**6, ONE, c7, ZERO),
        (-q**-3, -q**3, ONE, ZERO, r),
        (-ONE, -ONE, ONE, ZERO, ZERO),
        (q, q**-1, ONE, ZERO, ZERO),
    )


def identity_residuals(table: CoefficientTable | None = None) -> Dict[str, FieldValue]:
    """Defining identities among the constants, as residuals that must vanish."""
    c = table or build_table()
    q, r = Q, R
    one_minus = 1 - c.alpha**2
    res = {
        "gamma*7c": c.gamma * c.sevenC - (-q**7 + q**-6 - q + 1),
        "delta*r": c.delta * r - (q**4 - q**-3 - q + 1),
        "lambda": c.lam * one_minus - (c.alpha * c.gamma + c.beta),
        "mu": c.mu * one_minus - (c.alpha * c.beta + c.gamma),
        "rho": c.rho * one_minus - c.delta,
        "sigma": c.sigma - c.alpha * c.rho,
        "t*delta": c.t * c.delta - (-q**3 + c.alpha * q**-3 - c.gamma),
        "d*g": c.d * c.g - r * q**3,
    }
    # crossing-change relation, column by column of the eigenvalue table
    for name, row in zip(SUMMANDS, eigenvalue_table()):
        pos, neg, ident, cupcap, h = row
        res[f"eigen[{name}]"] = pos - (c.alpha * neg + c.beta * ident + c.gamma * cupcap + c.delta * h)
    return res
