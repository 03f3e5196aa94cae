import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import relabel
from g2net.examples import NAMES, load, load_text
from g2net.generate import random_diagram, random_planar_trivalent
from g2net.net import (Diagram, NetParseError, Node, PlanarityError, bridges, canonical_code,
                       components, disjoint_union, faces, mirror, parse, substitute_region, to_net)

THETA = "V 1 2 3\nV 3 2 1\n"
K4 = "V 1 2 3\nV 4 1 6\nV 5 2 4\nV 6 3 5\n"


def test_parse_basic():
    d = parse(THETA)
    assert d.num_trivalent() == 2 and d.num_edges == 3 and len(faces(d)) == 3
    assert parse("O\nO").free_loops == 2
    assert parse("# nothing\n").is_empty()
    k4 = parse(K4)
    assert sorted(len(f) for f in faces(k4)) == [3, 3, 3, 3]


@pytest.mark.parametrize("text,line", [
    ("V 1 2\n", 1),
    ("V 1 2 3\nQ 1 2 3\n", 2),
    ("V 1 2 x\n", 1),
    ("V 1 2 0\n", 1),
    ("O 1\n", 1),
    ("V 1 2 3\nV 3 2 4\n", 1),
    ("V 1 1 1\n", 1),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(NetParseError) as exc:
        parse(text)
    assert exc.value.line == line


def test_nonplanar_rotation_rejected():
    # theta with one vertex listed clockwise sits on a torus
    with pytest.raises(PlanarityError):
        parse("V 1 2 3\nV 1 2 3\n")
    assert parse("V 1 2 3\nV 1 2 3\n", validate=False).num_trivalent() == 2


def test_faces_walk_boundaries():
    for name in NAMES:
        d = load(name)
        for f in faces(d):
            assert all(d.face_next(f.darts[i]) == f.darts[(i + 1) % len(f)] for i in range(len(f)))


def test_round_trip_text():
    for name in NAMES:
        d = load(name)
        assert canonical_code(parse(to_net(d))) == canonical_code(d)
    assert "# note" in to_net(parse(THETA), "note")


@given(st.integers(0, 10_000))
@settings(max_examples=60, deadline=None)
def test_canonical_code_ignores_labels(seed):
    rng = random.Random(seed)
    d = random_diagram(rng) if seed % 2 else random_planar_trivalent(rng, rng.randint(2, 16))
    assert canonical_code(relabel(d, rng)) == canonical_code(d)
    assert hash(relabel(d, rng)) == hash(d)


def test_canonical_code_separates():
    assert canonical_code(load("trefoil")) != canonical_code(mirror(load("trefoil")))
    assert canonical_code(load("hopf")) != canonical_code(load("trefoil"))
    assert canonical_code(parse(THETA)) != canonical_code(parse(THETA + "O"))


def test_mirror_is_an_involution():
    for name in NAMES:
        d = load(name)
        assert canonical_code(mirror(mirror(d))) == canonical_code(d)


def test_components_and_union():
    d = disjoint_union(parse(THETA), parse(K4), parse("O"))
    comps, loops = components(d)
    assert loops == 1 and sorted(c.num_trivalent() for c in comps) == [2, 4]
    d.validate()


def test_bridges():
    assert bridges(parse(THETA)) == []
    dumbbell = Diagram([Node("V", (1, 2, 5)), Node("V", (6, 3, 4))],
                       {1: 2, 2: 1, 3: 4, 4: 3, 5: 6, 6: 5})
    dumbbell.validate()
    assert len(bridges(dumbbell)) == 1


def test_substitute_region_bigon_to_arc():
    d = parse(THETA)
    f = next(f for f in faces(d) if len(f) == 2)
    ports = tuple(d.rot_prev(x) for x in f.darts)
    out = substitute_region(d, set(f.nodes), ports, arcs=[(0, 1)])
    assert not out.nodes and out.free_loops == 1


def test_substitute_region_keeps_planarity():
    rng = random.Random(4)
    for _ in range(20):
        d = random_planar_trivalent(rng, 12)
        f = rng.choice(faces(d))
        ports = tuple(d.rot_prev(x) for x in f.darts)
        n = len(ports)
        nodes = [("V", (i, f"e{i}", f"e{(i - 1) % n}")) for i in range(n)]
        out = substitute_region(d, set(f.nodes), ports, new_nodes=nodes)
        out.validate()
        assert canonical_code(out) == canonical_code(d)


def test_bundled_text_has_comment():
    for name in NAMES:
        assert load_text(name).startswith("#")
