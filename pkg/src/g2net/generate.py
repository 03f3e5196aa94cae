"""Random diagrams for property tests and fuzzing."""
from __future__ import annotations

import random
from typing import List, Tuple

from .net import Diagram, Node, faces
from .tangles import TangleBuilder

__all__ = [
    "random_braid_word",
    "random_tangle_word",
    "random_diagram",
    "random_planar_trivalent",
    "reidemeister2_pair",
    "reidemeister3_pair",
]

Word = List[Tuple]


def random_braid_word(rng: random.Random, strands: int, length: int) -> List[int]:
    return [rng.choice([1, -1]) * rng.randint(1, strands - 1) for _ in range(length)]


def random_tangle_word(rng: random.Random, strands: int, crossings: int,
                       rungs: int = 0, kinks: int = 0) -> Word:
    """A shuffled word of crossings, H-rungs and curls on ``strands`` strands."""
    ops: Word = [("cross", rng.randrange(strands - 1), rng.choice([1, -1]))
                 for _ in range(crossings)]
    ops += [("rung", rng.randrange(strands - 1)) for _ in range(rungs)]
    ops += [("kink", rng.randrange(strands), rng.choice([1, -1])) for _ in range(kinks)]
    rng.shuffle(ops)
    return ops


def random_diagram(rng: random.Random, max_crossings: int = 5, max_strands: int = 4,
                   max_rungs: int = 2) -> Diagram:
    strands = rng.randint(2, max_strands)
    crossings = rng.randint(1, max_crossings)
    rungs = rng.randint(0, max_rungs)
    word = random_tangle_word(rng, strands, crossings, rungs)
    return TangleBuilder(strands).apply(word).close()


def reidemeister2_pair(rng: random.Random, max_crossings: int = 6) -> Tuple[Diagram, Diagram]:
    """A diagram and the same diagram with a cancelling crossing pair inserted."""
    strands = rng.randint(2, 4)
    word = random_tangle_word(rng, strands, rng.randint(0, max_crossings - 2), rng.randint(0, 1))
    i = rng.randrange(strands - 1)
    s = rng.choice([1, -1])
    at = rng.randint(0, len(word))
    extra = [("cross", i, s), ("cross", i, -s)]
    a = TangleBuilder(strands).apply(word).close()
    b = TangleBuilder(strands).apply(word[:at] + extra + word[at:]).close()
    return a, b


def reidemeister3_pair(rng: random.Random, max_crossings: int = 6) -> Tuple[Diagram, Diagram]:
    """Two diagrams differing by a braid-relation move on three strands."""
    strands = rng.randint(3, 4)
    word = random_tangle_word(rng, strands, rng.randint(0, max_crossings - 3), rng.randint(0, 1))
    i = rng.randrange(strands - 2)
    # s_i s_j^e s_i^-1 ... every sign pattern of the form a b a = b a b up to inverse
    pattern = rng.choice([(1, 1, 1), (-1, -1, -1), (1, 1, -1), (-1, 1, 1), (1, -1, -1), (-1, -1, 1)])
    x, y, z = pattern
    left = [("cross", i, x), ("cross", i + 1, y), ("cross", i, z)]
    right = [("cross", i + 1, z), ("cross", i, y), ("cross", i + 1, x)]
    at = rng.randint(0, len(word))
    a = TangleBuilder(strands).apply(word[:at] + left + word[at:]).close()
    b = TangleBuilder(strands).apply(word[:at] + right + word[at:]).close()
    return a, b


def random_planar_trivalent(rng: random.Random, vertices: int) -> Diagram:
    """A connected bridgeless planar trivalent map with about ``vertices`` vertices.

    Starts from the theta net and repeatedly joins new points on two
    distinct edges of one face by a chord through that face.
    """
    d = Diagram([Node("V", (1, 2, 3)), Node("V", (4, 5, 6))], {1: 6, 6: 1, 2: 5, 5: 2, 3: 4, 4: 3})
    nxt = 7
    while d.num_trivalent() + 2 <= vertices:
        f = rng.choice(faces(d))
        x1, x2 = rng.sample(f.darts, 2)
        partner = dict(d.partner)
        new_nodes = list(d.nodes)
        chord = []
        for x in (x1, x2):
            y = partner[x]
            a, b, c = nxt, nxt + 1, nxt + 2
            nxt += 3
            # walking from x to y the face lies on the left
            new_nodes.append(Node("V", (b, c, a)))
            partner[x], partner[a] = a, x
            partner[y], partner[b] = b, y
            chord.append(c)
        partner[chord[0]], partner[chord[1]] = chord[1], chord[0]
        d = Diagram(new_nodes, partner)
    return d
