import random

import pytest

from g2net.coeffs import build_table
from g2net.examples import load
from g2net.generate import random_diagram
from g2net.net import mirror, parse
from g2net.reduce import Evaluator, invariant
from g2net.ring import ONE, Q
from g2net.skein import (CALIBRATED_CONVENTION, convention_coefficients, expand, flip_crossing,
                         resolve_crossing, smooth, smoothing_roles, crossing_change_residual)

C7 = build_table().sevenC
KINK = parse("X 1 2 2 1")


def test_smoothings_of_a_curl():
    # d1-d4 and d2-d3 are edges: P1 joins everything into one circle, P2 into two
    assert smooth(KINK, 0, "P1").free_loops == 1
    assert smooth(KINK, 0, "P2").free_loops == 2
    assert smooth(KINK, 0, "T1").num_trivalent() == 2
    assert smooth(KINK, 0, "T2").num_trivalent() == 2


def test_kink_factor():
    assert invariant(KINK) == Q**6 * C7
    assert invariant(mirror(KINK)) == Q**-6 * C7


def test_other_convention_is_the_mirror():
    for name in ("trefoil", "hopf", "figure8"):
        d = load(name)
        assert invariant(d, convention="A") == invariant(mirror(d), convention="B")


def test_convention_tables():
    a, b = convention_coefficients("A"), convention_coefficients("B")
    assert a["P1"] == b["P2"] and a["T1"] == b["T2"]
    assert smoothing_roles(CALIBRATED_CONVENTION)["id"] in ("P1", "P2")
    with pytest.raises(ValueError):
        convention_coefficients("C")


def test_flip_twice_is_identity():
    d = load("trefoil")
    assert flip_crossing(flip_crossing(d, 0), 0) == d
    with pytest.raises(ValueError):
        flip_crossing(parse("V 1 2 3\nV 3 2 1"), 0)


def test_expand_route_matches_recursive_route():
    for name in ("hopf", "trefoil", "figure8"):
        d = load(name)
        assert invariant(d, method="expand") == invariant(d)
    lc = expand(load("trefoil"))
    assert all(t.num_crossings() == 0 for t, _ in lc)


def test_resolution_is_linear():
    d = load("hopf")
    total = sum((c * invariant(t) for t, c in resolve_crossing(d, 0)), 0 * ONE)
    assert total == invariant(d)


def test_crossing_change_relation_on_examples():
    for name in ("hopf", "trefoil", "figure8"):
        d = load(name)
        for c in d.crossings():
            assert crossing_change_residual(d, c).is_zero()


def test_crossing_change_relation_random():
    rng = random.Random(11)
    for _ in range(15):
        d = random_diagram(rng, max_crossings=4)
        for c in d.crossings():
            assert crossing_change_residual(d, c).is_zero()


def test_perturbed_gamma_is_detected():
    table = build_table()
    bad = table.replace(gamma=table.gamma + 1)
    d = load("hopf")
    assert not crossing_change_residual(d, 0, table=bad).is_zero()
