import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import relabel
from g2net.coeffs import build_table
from g2net.examples import NAMES, expected, load
from g2net.generate import random_diagram, random_planar_trivalent
from g2net.net import Diagram, Node, bridges, disjoint_union, faces, mirror, parse
from g2net.reduce import (Evaluator, MemoCache, StuckError, apply_mesh_rule, find_mesh, glue,
                          invariant, mesh_count, mesh_rule_terms, reduce_closed_planar,
                          verify_rule_closures)
from g2net.ring import ONE, Q, R, ZERO
from g2net.tangles import TangleBuilder

TABLE = build_table()
C7 = TABLE.sevenC
THETA = parse("V 1 2 3\nV 3 2 1")
K4 = parse("V 1 2 3\nV 4 1 6\nV 5 2 4\nV 6 3 5")


def test_small_values():
    assert reduce_closed_planar(Diagram()) == ONE
    assert reduce_closed_planar(parse("O")) == C7
    assert reduce_closed_planar(THETA) == R * C7
    assert reduce_closed_planar(K4) == TABLE.t * R * C7
    assert reduce_closed_planar(K4) == -C7 * Q * (Q**2 - Q + 1) / (Q**4 + 1) * R**2
    with pytest.raises(ValueError):
        reduce_closed_planar(load("trefoil"))


def test_bigon_rule_on_theta():
    m = find_mesh(THETA)
    assert m.name == "bigon2"
    (d, c), = list(apply_mesh_rule(THETA, m))
    assert c == R and d.free_loops == 1 and not d.nodes


def test_triangle_rule_on_k4_gives_theta():
    m = find_mesh(K4)
    assert m.name == "triangle3"
    (d, c), = list(apply_mesh_rule(K4, m))
    assert c == TABLE.t and hash(d) == hash(THETA)


@pytest.mark.parametrize("name", NAMES)
def test_bundled_examples(name):
    assert invariant(load(name)) == expected(name)


def test_figure_eight_is_palindromic():
    v = invariant(load("figure8"))
    assert v.invert_q() == v


def test_rule_closures():
    report = verify_rule_closures()
    assert len(report) == 4 + 10 + 2
    assert all(c.ok for c in report), [c.name for c in report if not c.ok]


def test_swapped_pentagon_shapes_fail_closure():
    report = verify_rule_closures(pentagon={"tree": "d2", "arc_y": "d"})
    assert not all(c.ok for c in report if c.name.startswith("pentagon"))


def test_glue_mesh_into_itself():
    # a square glued to the outside of a square is the cube net
    cube = glue(([], [("V", (i, f"s{i}", f"s{(i - 1) % 4}")) for i in range(4)]),
                ([], [("V", (i, f"s{i}", f"s{(i - 1) % 4}")) for i in range(4)]), 4)
    cube.validate()
    assert cube.num_trivalent() == 8 and sorted(map(len, faces(cube))) == [4] * 6


def test_tadpole_and_bridges_vanish():
    dumbbell = Diagram([Node("V", (1, 2, 5)), Node("V", (6, 3, 4))],
                       {1: 2, 2: 1, 3: 4, 4: 3, 5: 6, 6: 5})
    assert invariant(dumbbell) == ZERO
    assert Evaluator(bridge_shortcut=False).evaluate(dumbbell) == ZERO
    assert mesh_rule_terms(1) == []


def test_bridge_with_crossings_vanishes_without_shortcut():
    # two knotted lollipops joined by their sticks
    b = TangleBuilder(0).cup(0).cross(0, 1).cross(0, 1).cross(0, 1).merge(0)
    b.split(0).cross(0, -1).cross(0, 1).cap(0)
    d = b.close()
    assert len(bridges(d)) == 1 and d.num_crossings() == 5
    assert Evaluator(bridge_shortcut=False).evaluate(d) == ZERO
    assert invariant(d) == ZERO


@given(st.integers(0, 10_000))
@settings(max_examples=40, deadline=None)
def test_mesh_existence_and_termination(seed):
    rng = random.Random(seed)
    d = random_planar_trivalent(rng, rng.randint(2, 30))
    assert not bridges(d)
    m = find_mesh(d)
    assert m is not None and m.kind <= 5 and m.face.is_simple
    before = mesh_count(d)
    for t, _ in apply_mesh_rule(d, m):
        t.validate()
        assert mesh_count(t) < before


@given(st.integers(0, 10_000))
@settings(max_examples=25, deadline=None)
def test_memo_soundness(seed):
    rng = random.Random(seed)
    d = random_diagram(rng, max_crossings=3) if seed % 2 else random_planar_trivalent(rng, 10)
    assert Evaluator(memo=False, check=True).evaluate(d) == Evaluator().evaluate(d)


@given(st.integers(0, 10_000))
@settings(max_examples=25, deadline=None)
def test_relabelling_does_not_change_value(seed):
    rng = random.Random(seed)
    d = random_diagram(rng, max_crossings=4)
    assert invariant(relabel(d, rng), memo=False) == invariant(d)


@given(st.integers(0, 10_000))
@settings(max_examples=25, deadline=None)
def test_multiplicativity(seed):
    rng = random.Random(seed)
    a, b = random_diagram(rng, 3), random_diagram(rng, 3)
    assert invariant(disjoint_union(a, b)) == invariant(a) * invariant(b)


def test_cache_contract():
    cache = MemoCache()
    cache.put(b"k", ONE)
    cache.put(b"k", ONE)
    with pytest.raises(AssertionError):
        cache.put(b"k", ZERO)
    assert cache.get(b"k") == ONE and cache.hits == 1


def test_stuck_is_reported():
    # every face of the cube is a square; without the square rule nothing applies
    square = ([], [("V", (i, f"s{i}", f"s{(i - 1) % 4}")) for i in range(4)])
    cube = glue(square, square, 4)
    with pytest.raises(StuckError):
        Evaluator(max_kind=3).evaluate(cube)
    assert Evaluator().evaluate(cube) == Evaluator(memo=False).evaluate(cube)


def test_stats():
    ev = Evaluator()
    ev.evaluate(load("figure8"))
    s = ev.stats.as_dict()
    assert s["crossings_resolved"] > 0 and s["cache_misses"] > 0 and s["peak_terms"] >= 4
