import sympy
import pytest

from conftest import q_sym as q, r_sym as r, sympy_equal
from g2net.coeffs import KUPERBERG_R, SUMMANDS, TANGLES, build_table, eigenvalue_table, identity_residuals
from g2net.ring import ONE, Q, R

# closed forms re-derived with sympy from the defining relations
SEVEN_C = q**5 + q**4 + q + 1 + q**-1 + q**-4 + q**-5
ALPHA, BETA = q, q - 1
GAMMA = (-q**7 + q**-6 - q + 1) / SEVEN_C
DELTA = (q**4 - q**-3 - q + 1) / r
LAM = (ALPHA * GAMMA + BETA) / (1 - ALPHA**2)
MU = (ALPHA * BETA + GAMMA) / (1 - ALPHA**2)
RHO = DELTA / (1 - ALPHA**2)
SIGMA = ALPHA * RHO
T = (-q**3 + ALPHA * q**-3 - GAMMA) / DELTA


@pytest.fixture(scope="module")
def table():
    return build_table()


def test_identities_vanish(table):
    res = identity_residuals(table)
    assert set(res) >= {"gamma*7c", "lambda", "mu", "rho", "sigma", "t*delta", "d*g"}
    assert all(v.is_zero() for v in res.values()), {k: str(v) for k, v in res.items() if v}


@pytest.mark.parametrize("name,expr", [
    ("sevenC", SEVEN_C), ("gamma", GAMMA), ("delta", DELTA), ("lam", LAM), ("mu", MU),
    ("rho", RHO), ("sigma", SIGMA), ("t", T),
])
def test_against_sympy(table, name, expr):
    assert sympy_equal(getattr(table, name), expr)


def test_simplified_forms(table):
    # what the canonicalizer reveals
    assert table.gamma == -(Q - 1) * (Q**2 + 1) / Q
    assert table.gamma.is_laurent()
    assert table.lam == Q**2 / (Q + 1)
    assert table.mu == 1 / (Q * (Q + 1))
    assert table.t == -Q * R * (Q**2 - Q + 1) / (Q**4 + 1)


def test_eigenvalue_table_shape():
    rows = eigenvalue_table()
    assert len(rows) == len(SUMMANDS) and all(len(row) == len(TANGLES) for row in rows)


def test_crossing_change_on_each_summand(table):
    for name in SUMMANDS:
        assert identity_residuals(table)[f"eigen[{name}]"].is_zero()


def test_perturbed_gamma_breaks_identities(table):
    bad = table.replace(gamma=table.gamma + ONE)
    res = identity_residuals(bad)
    assert not res["gamma*7c"].is_zero()
    assert not res["eigen[C]"].is_zero()


def test_kuperberg_r():
    assert sympy_equal(KUPERBERG_R, -(q**2 + q + 1 + q**-2 + q**-3 + q**-4))
