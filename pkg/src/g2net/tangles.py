"""Build diagrams from words of elementary tangles.

Strands run upward; generators act on adjacent strand positions (0-based,
counted from the left).  A finished word is closed off braid-style: the
top end of strand ``j`` is joined to its bottom end around the right-hand
side, which keeps the diagram planar.

At a node, bottom darts are listed left to right and top darts right to
left, which is the counterclockwise order in the plane.
"""
from __future__ import annotations

from typing import Dict, List, Sequence

from .net import Diagram, Node, resolve_chains

__all__ = ["TangleBuilder", "braid_closure", "from_word"]


class TangleBuilder:
    """Incrementally build a closed diagram.

    >>> b = TangleBuilder(2)
    >>> for _ in range(3):
    ...     _ = b.cross(0, +1)
    >>> b.close().num_crossings()
    3
    """

    def __init__(self, strands: int = 0):
        self._dart = 0
        self._virtual = 0
        self.nodes: List[Node] = []
        self.links: Dict[int, List[int]] = {}
        self.bottom = [self._new_virtual() for _ in range(strands)]
        self.top = list(self.bottom)
        self.loops = 0

    def _new_virtual(self) -> int:
        self._virtual -= 1
        self.links[self._virtual] = []
        return self._virtual

    def _new_dart(self) -> int:
        self._dart += 1
        self.links[self._dart] = []
        return self._dart

    def _join(self, a: int, b: int) -> None:
        self.links[a].append(b)
        self.links[b].append(a)

    def _check(self, i: int, width: int) -> None:
        if i < 0 or i + width > len(self.top):
            raise IndexError(f"position {i} (width {width}) outside {len(self.top)} strands")

    def _node(self, kind: str, i: int, n_bottom: int, n_top: int) -> "TangleBuilder":
        self._check(i, n_bottom)
        bottoms = [self._new_dart() for _ in range(n_bottom)]
        tops = [self._new_dart() for _ in range(n_top)]
        for b, p in zip(bottoms, self.top[i:i + n_bottom]):
            self._join(b, p)
        ccw = tuple(reversed(tops)) + tuple(bottoms)
        if kind == "X+":
            # bottom-left to top-right strand over: slots 0 (T2) and 2 (B1)
            self.nodes.append(Node("X", ccw))
        elif kind == "X-":
            self.nodes.append(Node("X", ccw[1:] + ccw[:1]))
        else:
            self.nodes.append(Node("V", ccw))
        self.top[i:i + n_bottom] = tops
        return self

    # -- generators ------------------------------------------------------------
    def cross(self, i: int, sign: int = 1) -> "TangleBuilder":
        """Cross strands i, i+1; ``sign=+1`` puts the bottom-left strand over."""
        return self._node("X+" if sign > 0 else "X-", i, 2, 2)

    def merge(self, i: int) -> "TangleBuilder":
        """Join strands i, i+1 at a trivalent vertex into one strand."""
        return self._node("V", i, 2, 1)

    def split(self, i: int) -> "TangleBuilder":
        """Split strand i into two at a trivalent vertex."""
        return self._node("V", i, 1, 2)

    def rung(self, i: int) -> "TangleBuilder":
        """Merge then split strands i, i+1 (an H-shaped piece)."""
        return self.merge(i).split(i)

    def cup(self, i: int) -> "TangleBuilder":
        """Insert a minimum: two new strands at positions i, i+1."""
        if i < 0 or i > len(self.top):
            raise IndexError(f"cup position {i} outside {len(self.top)} strands")
        a, b = self._new_virtual(), self._new_virtual()
        self._join(a, b)
        self.top[i:i] = [a, b]
        return self

    def cap(self, i: int) -> "TangleBuilder":
        """Join strands i, i+1 with a maximum."""
        self._check(i, 2)
        a, b = self.top[i], self.top[i + 1]
        self._join(a, b)
        del self.top[i:i + 2]
        return self

    def kink(self, i: int, sign: int = 1) -> "TangleBuilder":
        """A curl on strand i, with the crossing of the given sign."""
        return self.cup(i + 1).cross(i, sign).cap(i + 1)

    def apply(self, word: Sequence) -> "TangleBuilder":
        """Apply ``(name, *args)`` tuples, e.g. ``[("cross", 0, 1), ("merge", 1)]``."""
        for op, *args in word:
            getattr(self, op)(*args)
        return self

    # -- closing ----------------------------------------------------------------
    def close(self) -> Diagram:
        if len(self.top) != len(self.bottom):
            raise ValueError(f"cannot close: {len(self.bottom)} strands in, {len(self.top)} out")
        links = {k: list(v) for k, v in self.links.items()}
        loops = self.loops
        for b, t in zip(self.bottom, self.top):
            if b == t:
                loops += 1  # untouched strand
            else:
                links[b].append(t)
                links[t].append(b)
        partner: Dict[int, int] = {}
        for x, nb in links.items():
            if x > 0 and nb[0] > 0:
                partner[x] = nb[0]
        links = {k: v for k, v in links.items() if v}
        loops += resolve_chains(links, {v for v in links if v < 0}, partner)
        return Diagram(self.nodes, partner, loops)


def braid_closure(word: Sequence[int], strands: int | None = None) -> Diagram:
    """Closure of a braid word; ``k`` is sigma_k and ``-k`` its inverse (1-based).

    >>> braid_closure([1, 1]).num_crossings()
    2
    """
    n = strands if strands is not None else max((abs(k) for k in word), default=0) + 1
    b = TangleBuilder(n)
    for k in word:
        b.cross(abs(k) - 1, 1 if k > 0 else -1)
    return b.close()


def from_word(strands: int, word: Sequence) -> Diagram:
    return TangleBuilder(strands).apply(word).close()
