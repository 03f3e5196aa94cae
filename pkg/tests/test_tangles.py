import random

import pytest

from g2net.generate import random_planar_trivalent, reidemeister2_pair, reidemeister3_pair
from g2net.net import bridges, faces
from g2net.reduce import invariant
from g2net.tangles import TangleBuilder, braid_closure, from_word


def test_braid_closure_counts():
    d = braid_closure([1, -2, 1, -2])
    assert d.num_crossings() == 4 and d.free_loops == 0
    assert braid_closure([], strands=3).free_loops == 3


def test_word_interface():
    d = from_word(2, [("cross", 0, 1), ("rung", 0), ("kink", 1, -1)])
    assert d.num_crossings() == 2 and d.num_trivalent() == 2
    d.validate()


def test_errors():
    with pytest.raises(IndexError):
        TangleBuilder(2).cross(1)
    with pytest.raises(ValueError):
        TangleBuilder(2).merge(0).close()


def test_random_maps_are_bridgeless_and_planar():
    rng = random.Random(9)
    for _ in range(30):
        d = random_planar_trivalent(rng, rng.randint(2, 30))
        d.validate()
        assert not bridges(d) and all(f.is_simple for f in faces(d))


def test_move_pairs_are_different_diagrams():
    rng = random.Random(5)
    a, b = reidemeister2_pair(rng)
    assert b.num_crossings() == a.num_crossings() + 2
    a, b = reidemeister3_pair(rng)
    assert a.num_crossings() == b.num_crossings()
    assert invariant(a) == invariant(b)
