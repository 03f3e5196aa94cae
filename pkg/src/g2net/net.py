"""Closed 3-net diagrams as combinatorial maps.

A :class:`Diagram` is a set of nodes -- 4-valent crossings and trivalent
vertices -- each listing its darts counterclockwise, plus a perfect matching
on darts (the edges) and a count of vertex-free circles.  For a crossing
``X(d1, d2, d3, d4)`` the strand d1--d3 passes over d2--d4.

Face traversal: the face successor of a dart ``d`` is obtained by crossing
the edge at ``d`` and stepping to the clockwise neighbour of the arriving
dart.  Faces are therefore walked with the region on the left, i.e.
counterclockwise around the region, and the darts leaving a face appear in
counterclockwise order as seen from inside it.

NET text format, one node per line, ``#`` starts a comment::

    X a b c d     crossing, edge labels counterclockwise, a--c over
    V a b c       trivalent vertex, edge labels counterclockwise
    O             a vertex-free circle

Every edge label is a positive integer used exactly twice.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

__all__ = [
    "Node",
    "Diagram",
    "Face",
    "NetParseError",
    "PlanarityError",
    "parse",
    "to_net",
    "faces",
    "components",
    "bridges",
    "canonical_code",
    "mirror",
    "disjoint_union",
    "substitute_region",
    "resolve_chains",
]


class NetParseError(ValueError):
    """Malformed NET input."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class PlanarityError(ValueError):
    """The rotation system does not describe a diagram on the sphere."""


@dataclass(frozen=True)
class Node:
    kind: str  # "X" or "V"
    darts: Tuple[int, ...]

    def __post_init__(self):
        k = len(self.darts)
        if self.kind == "X":
            if k != 4:
                raise ValueError("a crossing has four darts")
            d = self.darts
            # rotation by two slots keeps the over-strand on slots 0, 2
            if d[2] < d[0]:
                object.__setattr__(self, "darts", (d[2], d[3], d[0], d[1]))
        elif self.kind == "V":
            if k != 3:
                raise ValueError("a trivalent vertex has three darts")
            i = self.darts.index(min(self.darts))
            object.__setattr__(self, "darts", self.darts[i:] + self.darts[:i])
        else:
            raise ValueError(f"unknown node kind {self.kind!r}")

    @property
    def is_crossing(self) -> bool:
        return self.kind == "X"


class Diagram:
    """Immutable closed 3-net diagram.

    ``partner`` maps every dart to the other end of its edge.  Darts are
    arbitrary integers; only the rotation system and the matching matter.
    """

    __slots__ = ("nodes", "partner", "free_loops", "pos", "_code", "_faces")

    def __init__(self, nodes: Iterable[Node] = (), partner: Mapping[int, int] | None = None,
                 free_loops: int = 0, *, check: bool = True):
        self.nodes: Tuple[Node, ...] = tuple(nodes)
        self.partner: Dict[int, int] = dict(partner or {})
        self.free_loops = int(free_loops)
        self.pos: Dict[int, Tuple[int, int]] = {}
        for n, node in enumerate(self.nodes):
            for s, d in enumerate(node.darts):
                if d in self.pos:
                    raise ValueError(f"dart {d} appears in two node slots")
                self.pos[d] = (n, s)
        self._code = None
        self._faces = None
        if check:
            self._check_matching()

    def _check_matching(self):
        if self.free_loops < 0:
            raise ValueError("negative free-loop count")
        if set(self.partner) != set(self.pos):
            raise ValueError("edge pairing does not cover exactly the node darts")
        for a, b in self.partner.items():
            if a == b or self.partner.get(b) != a:
                raise ValueError(f"dart {a} is not properly paired")

    # -- basic queries ---------------------------------------------------------
    @property
    def num_darts(self) -> int:
        return len(self.pos)

    @property
    def num_edges(self) -> int:
        return len(self.pos) // 2

    def crossings(self) -> List[int]:
        return [i for i, n in enumerate(self.nodes) if n.kind == "X"]

    def num_crossings(self) -> int:
        return sum(1 for n in self.nodes if n.kind == "X")

    def num_trivalent(self) -> int:
        return sum(1 for n in self.nodes if n.kind == "V")

    def is_planar_net(self) -> bool:
        """True when the diagram has no crossings."""
        return all(n.kind == "V" for n in self.nodes)

    def is_empty(self) -> bool:
        return not self.nodes and self.free_loops == 0

    def node_of(self, dart: int) -> int:
        return self.pos[dart][0]

    def rot_next(self, dart: int) -> int:
        n, s = self.pos[dart]
        darts = self.nodes[n].darts
        return darts[(s + 1) % len(darts)]

    def rot_prev(self, dart: int) -> int:
        n, s = self.pos[dart]
        darts = self.nodes[n].darts
        return darts[s - 1]

    def face_next(self, dart: int) -> int:
        return self.rot_prev(self.partner[dart])

    def max_dart(self) -> int:
        return max(self.pos, default=0)

    def edges(self) -> List[Tuple[int, int]]:
        return sorted((a, b) for a, b in self.partner.items() if a < b)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Diagram):
            return NotImplemented
        return (self.free_loops == other.free_loops and self.partner == other.partner
                and sorted(self.nodes, key=_node_key) == sorted(other.nodes, key=_node_key))

    def __hash__(self):
        return hash(canonical_code(self))

    def __repr__(self) -> str:
        return (f"Diagram(crossings={self.num_crossings()}, trivalent={self.num_trivalent()}, "
                f"free_loops={self.free_loops})")

    def validate(self) -> "Diagram":
        """Check the genus-0 condition on every component; returns self."""
        for comp in components(self)[0]:
            f = len(faces(comp))
            euler = len(comp.nodes) - comp.num_edges + f
            if euler != 2:
                genus = (2 - euler) // 2
                raise PlanarityError(
                    f"not a planar diagram: component with {len(comp.nodes)} nodes, "
                    f"{comp.num_edges} edges, {f} faces has genus {genus}")
        return self


def _node_key(node: Node):
    return (node.kind, node.darts)


# ---------------------------------------------------------------------------
# NET text format
# ---------------------------------------------------------------------------

def parse(text: str, *, validate: bool = True) -> Diagram:
    """Parse NET text into a validated :class:`Diagram`.

    >>> parse("O").free_loops
    1
    >>> len(faces(parse("V 1 2 3\\nV 3 2 1")))
    3
    """
    nodes: List[Node] = []
    loops = 0
    seen: Dict[int, List[Tuple[int, int]]] = {}
    dart = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tag, *rest = line.split()
        if tag == "O":
            if rest:
                raise NetParseError("'O' takes no labels", lineno)
            loops += 1
            continue
        arity = {"X": 4, "V": 3}.get(tag)
        if arity is None:
            raise NetParseError(f"unknown node tag {tag!r}", lineno)
        if len(rest) != arity:
            raise NetParseError(f"'{tag}' expects {arity} labels, got {len(rest)}", lineno)
        darts = []
        for tok in rest:
            try:
                label = int(tok)
            except ValueError:
                raise NetParseError(f"edge label {tok!r} is not an integer", lineno) from None
            if label <= 0:
                raise NetParseError(f"edge label {label} is not positive", lineno)
            dart += 1
            darts.append(dart)
            seen.setdefault(label, []).append((dart, lineno))
        nodes.append(Node(tag, tuple(darts)))
    partner: Dict[int, int] = {}
    for label, uses in seen.items():
        if len(uses) != 2:
            raise NetParseError(f"edge label {label} appears {len(uses)} times (expected 2)", uses[-1][1])
        (a, _), (b, _) = uses
        partner[a] = b
        partner[b] = a
    d = Diagram(nodes, partner, loops)
    if validate:
        d.validate()
    return d


def to_net(d: Diagram, comment: str | None = None) -> str:
    """Render ``d`` in NET format with edge labels 1, 2, ... in order of use."""
    labels: Dict[int, int] = {}
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    for node in d.nodes:
        toks = []
        for dart in node.darts:
            if dart not in labels:
                labels[dart] = labels[d.partner[dart]] = len(labels) // 2 + 1
            toks.append(str(labels[dart]))
        lines.append(f"{node.kind} " + " ".join(toks))
    lines.extend("O" for _ in range(d.free_loops))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Faces, components, bridges
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Face:
    """A face orbit.  ``darts[k]`` leaves node ``nodes[k]`` along the boundary."""

    darts: Tuple[int, ...]
    nodes: Tuple[int, ...]
    trivalent_count: int
    crossing_count: int
    is_simple: bool

    def __len__(self) -> int:
        return len(self.darts)


def faces(d: Diagram) -> List[Face]:
    if d._faces is not None:
        return d._faces
    out: List[Face] = []
    seen = set()
    for start in sorted(d.pos):
        if start in seen:
            continue
        orbit = []
        x = start
        while x not in seen:
            seen.add(x)
            orbit.append(x)
            x = d.face_next(x)
        node_ids = tuple(d.pos[x][0] for x in orbit)
        distinct = set(node_ids)
        edges = {min(x, d.partner[x]) for x in orbit}
        simple = len(distinct) == len(orbit) and len(edges) == len(orbit)
        tri = sum(1 for n in distinct if d.nodes[n].kind == "V")
        out.append(Face(tuple(orbit), node_ids, tri, len(distinct) - tri, simple))
    d._faces = out
    return out


def components(d: Diagram) -> Tuple[List[Diagram], int]:
    """Connected components carrying nodes, and the number of free loops."""
    parent = list(range(len(d.nodes)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a, b in d.partner.items():
        ra, rb = find(d.pos[a][0]), find(d.pos[b][0])
        if ra != rb:
            parent[ra] = rb
    groups: Dict[int, List[int]] = {}
    for i in range(len(d.nodes)):
        groups.setdefault(find(i), []).append(i)
    if len(groups) <= 1 and d.free_loops == 0:
        return ([d] if d.nodes else []), 0
    comps = []
    for members in groups.values():
        nodes = [d.nodes[i] for i in members]
        partner = {x: d.partner[x] for node in nodes for x in node.darts}
        comps.append(Diagram(nodes, partner, 0, check=False))
    return comps, d.free_loops


def bridges(d: Diagram) -> List[Tuple[int, int]]:
    """Edges (as dart pairs) whose removal disconnects their component."""
    n = len(d.nodes)
    adj: List[List[Tuple[int, int]]] = [[] for _ in range(n)]
    for a, b in d.partner.items():
        if a < b:
            u, v = d.pos[a][0], d.pos[b][0]
            if u != v:
                adj[u].append((v, a))
                adj[v].append((u, a))
    disc = [-1] * n
    low = [0] * n
    out = []
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, None, iter(adj[root]))]
        while stack:
            u, via, it = stack[-1]
            advanced = False
            for v, eid in it:
                if eid == via:
                    continue
                if disc[v] == -1:
                    disc[v] = low[v] = timer
                    timer += 1
                    stack.append((v, eid, iter(adj[v])))
                    advanced = True
                    break
                low[u] = min(low[u], disc[v])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[u])
                if low[u] > disc[p]:
                    out.append((via, d.partner[via]))
    return out


# ---------------------------------------------------------------------------
# Canonical codes
# ---------------------------------------------------------------------------

def _dart_tag(d: Diagram, dart: int) -> int:
    n, s = d.pos[dart]
    if d.nodes[n].kind == "V":
        return 0
    return 1 if s % 2 == 0 else 2


def _code_from(d: Diagram, start: int) -> Tuple[int, ...]:
    pos, nodes, partner = d.pos, d.nodes, d.partner
    entry = [start]
    index = {pos[start][0]: 0}
    out: List[int] = []
    i = 0
    while i < len(entry):
        e = entry[i]
        n, s = pos[e]
        darts = nodes[n].darts
        k = len(darts)
        out.append(0 if k == 3 else (1 if s % 2 == 0 else 2))
        for j in range(k):
            p = partner[darts[(s + j) % k]]
            pn, ps = pos[p]
            idx = index.get(pn)
            if idx is None:
                idx = index[pn] = len(entry)
                entry.append(p)
            es = pos[entry[idx]][1]
            out.append(idx)
            out.append((ps - es) % len(nodes[pn].darts))
        i += 1
    return tuple(out)


def _component_code(d: Diagram) -> Tuple[int, ...]:
    # restrict roots to the darts with the smallest isomorphism-invariant signature
    size = {}
    for f in faces(d):
        for x in f.darts:
            size[x] = len(f)
    sig = {x: (_dart_tag(d, x), size[x], size[d.rot_next(x)], size[d.partner[x]]) for x in d.pos}
    best = min(sig.values())
    return min(_code_from(d, x) for x in d.pos if sig[x] == best)


def canonical_code(d: Diagram) -> bytes:
    """Relabeling-invariant code; mirror images generally get different codes.

    >>> canonical_code(parse("V 1 2 3\\nV 3 2 1")) == canonical_code(parse("V 7 5 9\\nV 9 5 7"))
    True
    """
    if d._code is not None:
        return d._code
    comps, loops = components(d)
    if len(comps) == 1 and loops == 0:
        codes = [_component_code(comps[0])]
    else:
        codes = sorted(_component_code(c) for c in comps)
    code = repr((loops, tuple(codes))).encode("ascii")
    d._code = code
    return code


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------

def mirror(d: Diagram) -> Diagram:
    """Swap over- and under-strand at every crossing."""
    nodes = [Node("X", n.darts[1:] + n.darts[:1]) if n.kind == "X" else n for n in d.nodes]
    return Diagram(nodes, d.partner, d.free_loops, check=False)


def disjoint_union(*diagrams: Diagram) -> Diagram:
    nodes: List[Node] = []
    partner: Dict[int, int] = {}
    loops = 0
    offset = 0
    for d in diagrams:
        base = offset - min(d.pos, default=0) + 1
        for node in d.nodes:
            nodes.append(Node(node.kind, tuple(x + base for x in node.darts)))
        for a, b in d.partner.items():
            partner[a + base] = b + base
        loops += d.free_loops
        offset = max(partner, default=offset)
    return Diagram(nodes, partner, loops, check=False)


def substitute_region(d: Diagram, removed: Iterable[int], ports: Sequence[int],
                      arcs: Sequence[Tuple[int, int]] = (),
                      new_nodes: Sequence[Tuple[str, Sequence]] = (),
                      *, next_dart: int | None = None) -> Diagram:
    """Cut out the nodes ``removed`` and glue in a planar piece.

    ``ports`` are the darts of removed nodes that lead out of the region, in
    counterclockwise order around it; every other dart of a removed node must
    be paired inside the region and disappears.  The piece joins ports
    directly (``arcs``, pairs of port indices) or through new nodes given as
    ``(kind, terminals)``, darts counterclockwise, where a terminal is a port
    index (int) or an internal edge label (str, used exactly twice).
    Closed circles created by the gluing are added to ``free_loops``.
    """
    removed = set(removed)
    port_set = set(ports)
    if len(port_set) != len(ports):
        raise ValueError("repeated port")
    keep_nodes = [node for i, node in enumerate(d.nodes) if i not in removed]
    partner: Dict[int, int] = {}
    link: Dict[int, List[int]] = {p: [] for p in ports}

    for i in removed:
        for x in d.nodes[i].darts:
            y = d.partner[x]
            if x in port_set:
                if y in port_set:
                    if x < y:
                        link[x].append(y)
                        link[y].append(x)
                elif d.pos[y][0] in removed:
                    raise ValueError(f"port {x} leads to an interior dart")
                else:
                    link[x].append(y)
            elif d.pos[y][0] not in removed:
                raise ValueError(f"dart {x} leaves the region but is not a port")
    for node in keep_nodes:
        for x in node.darts:
            y = d.partner[x]
            if y not in port_set:
                partner[x] = y

    for i, j in arcs:
        a, b = ports[i], ports[j]
        link[a].append(b)
        link[b].append(a)

    nxt = (d.max_dart() if next_dart is None else next_dart) + 1
    internal: Dict[str, int] = {}
    for kind, terminals in new_nodes:
        darts = []
        for t in terminals:
            x = nxt
            nxt += 1
            darts.append(x)
            if isinstance(t, str):
                if t in internal:
                    y = internal.pop(t)
                    partner[x] = y
                    partner[y] = x
                else:
                    internal[t] = x
            else:
                p = ports[t]
                link[p].append(x)
                partner[x] = p  # provisional, resolved below
        keep_nodes.append(Node(kind, tuple(darts)))
    if internal:
        raise ValueError(f"unmatched internal labels {sorted(internal)}")
    for p, nb in link.items():
        if len(nb) != 2:
            raise ValueError(f"port {p} is glued {len(nb) - 1} times")

    loops = d.free_loops + resolve_chains(link, port_set, partner)
    return Diagram(keep_nodes, partner, loops, check=False)


def resolve_chains(link: Mapping[int, Sequence[int]], virtual, partner: Dict[int, int]) -> int:
    """Pair real darts joined through chains of virtual points.

    Every virtual point has exactly two neighbours in ``link``, every real
    dart that touches a virtual point has one.  Chains ending in two real
    darts become edges in ``partner``; chains that close up are counted and
    the count of such circles is returned.
    """
    loops = 0
    visited = set()
    for p in link:
        if p not in virtual or p in visited:
            continue
        visited.add(p)
        ends = []
        closed = False
        for first in link[p]:
            prev, cur = p, first
            while cur in virtual:
                if cur == p:
                    closed = True
                    break
                visited.add(cur)
                a, b = link[cur]
                prev, cur = cur, (b if a == prev else a)
            if closed:
                break
            ends.append(cur)
        if closed:
            loops += 1
            continue
        partner[ends[0]] = ends[1]
        partner[ends[1]] = ends[0]
    return loops
