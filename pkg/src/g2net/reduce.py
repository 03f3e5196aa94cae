"""Evaluation of closed 3-nets by recursive mesh elimination.

A crossing-free connected net is reduced by cutting out a face bounded by
at most five trivalent vertices and replacing it by a combination of
smaller pieces.  Nets containing crossings are handled by the same loop: a
small crossing-free face is removed whenever one exists, otherwise a
crossing is resolved by the skein relation.  Values are memoized per
connected component under its canonical code.

A net with a bridge evaluates to zero: cutting the bridge exhibits the
value as an invariant vector of V, and there are none.  Removing bridges
first also guarantees that every face of a crossing-free net is a simple
cycle, so a mesh of size <= 5 always exists.
"""
from __future__ import annotations

import threading
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from .coeffs import CoefficientTable, build_table
from .net import (Diagram, Face, Node, bridges, canonical_code, components, faces,
                  resolve_chains, substitute_region)
from .ring import ONE, R, ZERO, FieldValue
from .skein import CALIBRATED_CONVENTION, LinearCombination, convention_coefficients, expand, smooth

__all__ = [
    "MemoCache",
    "MeshMatch",
    "Stats",
    "StuckError",
    "Evaluator",
    "PENTAGON_SHAPES",
    "mesh_rule_terms",
    "find_mesh",
    "apply_mesh_rule",
    "mesh_count",
    "invariant",
    "reduce_closed_planar",
    "verify_rule_closures",
    "ClosureCheck",
    "glue",
]

KINDS = {1: "tadpole1", 2: "bigon2", 3: "triangle3", 4: "square4", 5: "pentagon5"}

# Coefficient attached to each family of pentagon replacements: "d" -> -d,
# "d2" -> -d^2.  Scaling every trivalent vertex by s scales r by s^2, so a
# piece with k fewer vertices than the pentagon needs a coefficient of
# degree k/2 in r; the closure oracle confirms this assignment.
PENTAGON_SHAPES = {"tree": "d", "arc_y": "d2"}


class StuckError(RuntimeError):
    """No reducible mesh in a connected bridgeless crossing-free net."""


class MemoCache:
    """Canonical code -> value; a bound key is never rebound to another value."""

    def __init__(self):
        self._data: Dict[bytes, FieldValue] = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def get(self, key: bytes):
        v = self._data.get(key)
        if v is None:
            self.misses += 1
        else:
            self.hits += 1
        return v

    def put(self, key: bytes, value: FieldValue) -> FieldValue:
        with self._lock:
            old = self._data.setdefault(key, value)
        if old is not value and old != value:
            raise AssertionError(f"memo cache conflict: {old} != {value}")
        return old

    def __len__(self) -> int:
        return len(self._data)

    def __contains__(self, key) -> bool:
        return key in self._data


@dataclass
class Stats:
    rules: Counter = field(default_factory=Counter)
    crossings_resolved: int = 0
    bridges: int = 0
    cache_hits: int = 0
    cache_misses: int = 0
    peak_terms: int = 0

    def as_dict(self) -> dict:
        return {
            "rules": {KINDS.get(k, str(k)): v for k, v in sorted(self.rules.items())},
            "crossings_resolved": self.crossings_resolved,
            "bridge_shortcuts": self.bridges,
            "cache_hits": self.cache_hits,
            "cache_misses": self.cache_misses,
            "peak_terms": self.peak_terms,
        }


@dataclass(frozen=True)
class MeshMatch:
    face: Face
    kind: int
    ports: Tuple[int, ...]  # external darts, counterclockwise around the face

    @property
    def name(self) -> str:
        return KINDS[self.kind]


def mesh_count(d: Diagram) -> int:
    """Number of complementary regions of the diagram in the plane."""
    comps, loops = components(d)
    return 1 + loops + sum(len(faces(c)) - 1 for c in comps)


def find_mesh(d: Diagram, max_kind: int = 5) -> MeshMatch | None:
    """Smallest simple face bounded only by trivalent vertices, or None."""
    best = None
    for f in faces(d):
        n = len(f)
        if n > max_kind or f.crossing_count or not f.is_simple:
            continue
        key = (n, min(f.darts))
        if best is None or key < best[0]:
            best = (key, f)
    if best is None:
        return None
    f = best[1]
    ports = tuple(d.rot_prev(x) for x in f.darts)
    return MeshMatch(f, len(f), ports)


def mesh_rule_terms(kind: int, table: CoefficientTable | None = None,
                    pentagon: Dict[str, str] | None = None):
    """Replacement pieces for a mesh: list of (coeff, arcs, new_nodes) on ports."""
    c = table or build_table()
    if kind == 1:
        return []
    if kind == 2:
        return [(R, [(0, 1)], [])]
    if kind == 3:
        return [(c.t, [], [("V", (0, 1, 2))])]
    if kind == 4:
        return [
            (c.square_arc, [(0, 1), (2, 3)], []),
            (c.square_arc, [(1, 2), (3, 0)], []),
            (c.square_tree, [], [("V", (0, 1, "e")), ("V", (2, 3, "e"))]),
            (c.square_tree, [], [("V", (1, 2, "e")), ("V", (3, 0, "e"))]),
        ]
    if kind == 5:
        shapes = pentagon or PENTAGON_SHAPES
        coeff = {"d": -c.d, "d2": -c.d * c.d}
        out = []
        for i in range(5):
            a, b, e, f, g = [(i + k) % 5 for k in range(5)]
            out.append((coeff[shapes["arc_y"]], [(a, b)], [("V", (e, f, g))]))
        for i in range(5):
            a, b, e, f, g = [(i + k) % 5 for k in range(5)]
            # leaf a, cherries on (b, e) and (f, g)
            out.append((coeff[shapes["tree"]], [],
                        [("V", (b, e, "u")), ("V", (f, g, "w")), ("V", (a, "u", "w"))]))
        return out
    raise ValueError(f"no mesh rule for {kind} vertices")


def _rule_pieces(d: Diagram, m: MeshMatch, terms) -> List[Tuple[Diagram, FieldValue]]:
    removed = set(m.face.nodes)
    return [(substitute_region(d, removed, m.ports, arcs, nodes), coeff)
            for coeff, arcs, nodes in terms]


def apply_mesh_rule(d: Diagram, m: MeshMatch, table: CoefficientTable | None = None,
                    pentagon: Dict[str, str] | None = None) -> LinearCombination:
    """Replace the mesh ``m`` of ``d`` by its combination of smaller pieces."""
    return LinearCombination(_rule_pieces(d, m, mesh_rule_terms(m.kind, table, pentagon)))


def _crossing_by_face(d: Diagram) -> int:
    """A crossing on a smallest face; resolving it tends to open up small meshes."""
    best = None
    for f in faces(d):
        if not f.crossing_count:
            continue
        key = (len(f), f.trivalent_count == 0)
        if best is None or key < best[0]:
            best = (key, f)
    f = best[1]
    return min(n for n in f.nodes if d.nodes[n].kind == "X")


class Evaluator:
    """Memoized evaluator of framed links and 3-nets.

    ``max_kind`` caps the mesh rules that may be used (rules for larger
    meshes are never applied); ``bridge_shortcut`` sends any component with
    a bridge straight to zero.  With ``check`` every rewrite is validated
    and the mesh count is asserted to drop.
    """

    def __init__(self, table: CoefficientTable | None = None,
                 convention: str = CALIBRATED_CONVENTION, *,
                 cache: MemoCache | None = None, memo: bool = True, max_kind: int = 5,
                 pentagon: Dict[str, str] | None = None, bridge_shortcut: bool = True,
                 check: bool = False):
        self.table = table or build_table()
        self.convention = convention
        self.crossing_coeffs = convention_coefficients(convention, self.table)
        self.cache = (cache if cache is not None else MemoCache()) if memo else None
        self.max_kind = max_kind
        self.bridge_shortcut = bridge_shortcut
        self.check = check
        self.rules = {k: mesh_rule_terms(k, self.table, pentagon) for k in range(1, max_kind + 1)}
        self.stats = Stats()

    def __call__(self, d: Diagram) -> FieldValue:
        return self.evaluate(d)

    def evaluate(self, d: Diagram) -> FieldValue:
        comps, loops = components(d)
        value = self.table.sevenC ** loops if loops else ONE
        for comp in comps:
            v = self._connected(comp)
            if v.is_zero():
                return ZERO
            value = value * v
        return value

    def _connected(self, d: Diagram) -> FieldValue:
        key = None
        if self.cache is not None:
            key = canonical_code(d)
            hit = self.cache.get(key)
            if hit is not None:
                self.stats.cache_hits += 1
                return hit
            self.stats.cache_misses += 1
        value = self._reduce(d)
        if key is not None:
            value = self.cache.put(key, value)
        return value

    def _reduce(self, d: Diagram) -> FieldValue:
        if self.bridge_shortcut and bridges(d):
            self.stats.bridges += 1
            return ZERO
        m = find_mesh(d, self.max_kind)
        if m is not None:
            self.stats.rules[m.kind] += 1
            terms = _rule_pieces(d, m, self.rules[m.kind])
        elif d.num_crossings():
            x = _crossing_by_face(d)
            self.stats.crossings_resolved += 1
            terms = [(smooth(d, x, k), self.crossing_coeffs[k]) for k in ("P1", "P2", "T1", "T2")]
        else:
            raise StuckError(f"no mesh of at most {self.max_kind} vertices in {d!r}")
        self.stats.peak_terms = max(self.stats.peak_terms, len(terms))
        if self.check:
            before = mesh_count(d) if m is not None else None
            for t, _ in terms:
                t.validate()
                if before is not None and mesh_count(t) >= before:
                    raise AssertionError("mesh rule did not lower the mesh count")
        total = ZERO
        for t, coeff in terms:
            total = total + coeff * self.evaluate(t)
        return total


_DEFAULT: Dict[str, Evaluator] = {}


def invariant(d: Diagram, *, convention: str = CALIBRATED_CONVENTION, memo: bool = True,
              method: str = "recursive", evaluator: Evaluator | None = None) -> FieldValue:
    """The invariant of a framed link diagram or closed 3-net.

    ``method="recursive"`` interleaves mesh rules and crossing resolution;
    ``method="expand"`` first expands every crossing and then reduces each
    planar term, an independent route to the same value.
    """
    if evaluator is None:
        if memo:
            evaluator = _DEFAULT.get(convention)
            if evaluator is None:
                evaluator = _DEFAULT[convention] = Evaluator(convention=convention)
        else:
            evaluator = Evaluator(convention=convention, memo=False)
    if method == "recursive":
        return evaluator.evaluate(d)
    if method == "expand":
        total = ZERO
        for term, coeff in expand(d, convention, evaluator.table):
            total = total + coeff * evaluator.evaluate(term)
        return total
    raise ValueError(f"unknown method {method!r}")


def reduce_closed_planar(d: Diagram, cache: MemoCache | None = None) -> FieldValue:
    """Value of a crossing-free closed net by mesh elimination alone."""
    if d.num_crossings():
        raise ValueError("diagram has crossings")
    return Evaluator(cache=cache).evaluate(d)


# ---------------------------------------------------------------------------
# Closure oracle for the square and pentagon rules
# ---------------------------------------------------------------------------

def _mesh_piece(k: int):
    """A k-gon of trivalent vertices with one leg per vertex, as a piece on k ports."""
    return [], [("V", (i, f"s{i}", f"s{(i - 1) % k}")) for i in range(k)]


def glue(inner, outer, k: int) -> Diagram:
    """Close a piece inside a disk with a second piece outside it.

    Both pieces are (arcs, nodes) on ports 0..k-1 numbered counterclockwise
    around the disk; the outer piece is described as if it sat inside the
    disk and is reflected into the outside.
    """
    link: Dict[int, List[int]] = {-(i + 1): [] for i in range(k)}
    partner: Dict[int, int] = {}
    nodes = []
    counter = [0]

    def add(piece, side: str, reverse: bool):
        arcs, new_nodes = piece
        for i, j in arcs:
            link[-(i + 1)].append(-(j + 1))
            link[-(j + 1)].append(-(i + 1))
        internal = {}
        for kind, terminals in new_nodes:
            darts = []
            for t in terminals:
                counter[0] += 1
                x = counter[0]
                darts.append(x)
                if isinstance(t, str):
                    label = side + t
                    if label in internal:
                        y = internal.pop(label)
                        partner[x], partner[y] = y, x
                    else:
                        internal[label] = x
                else:
                    link[-(t + 1)].append(x)
                    link[x] = [-(t + 1)]
            nodes.append(Node(kind, tuple(reversed(darts)) if reverse else tuple(darts)))
        if internal:
            raise ValueError(f"unmatched internal labels {sorted(internal)}")

    add(inner, "i", False)
    add(outer, "o", True)
    loops = resolve_chains(link, {v for v in link if v < 0}, partner)
    return Diagram(nodes, partner, loops)


@dataclass
class ClosureCheck:
    name: str
    left: FieldValue | None
    right: FieldValue | None

    @property
    def ok(self) -> bool:
        return self.left is not None and self.left == self.right


def verify_rule_closures(table: CoefficientTable | None = None,
                         pentagon: Dict[str, str] | None = None) -> List[ClosureCheck]:
    """Cap the square and pentagon in every way allowed by their rules.

    For a capping piece P the closed net (k-gon | P) is evaluated using only
    rules for smaller meshes and compared with the rule's right-hand side,
    each replacement piece glued to P.  Also checks that a tadpole net is
    zero both through the bridge shortcut and through the tadpole rule.
    """
    table = table or build_table()
    out: List[ClosureCheck] = []
    for k in (4, 5):
        ev = Evaluator(table, max_kind=k - 1, pentagon=pentagon)
        rule = mesh_rule_terms(k, table, pentagon)
        for idx, (_, arcs, nodes) in enumerate(rule):
            cap = (arcs, nodes)
            try:
                left = ev.evaluate(glue(_mesh_piece(k), cap, k))
                right = ZERO
                for coeff, a2, n2 in rule:
                    right = right + coeff * ev.evaluate(glue((a2, n2), cap, k))
            except StuckError:
                left = right = None
            out.append(ClosureCheck(f"{KINDS[k]}/cap{idx}", left, right))
    tadpole = _tadpole()
    with_bridge = Evaluator(table).evaluate(tadpole)
    without = Evaluator(table, bridge_shortcut=False).evaluate(tadpole)
    out.append(ClosureCheck("tadpole1/bridge", with_bridge, ZERO))
    out.append(ClosureCheck("tadpole1/rule", without, ZERO))
    return out


def _tadpole() -> Diagram:
    """Two vertices with a self-loop each, joined by one edge."""
    return Diagram([Node("V", (1, 2, 5)), Node("V", (6, 3, 4))],
                   {1: 2, 2: 1, 3: 4, 4: 3, 5: 6, 6: 5}, 0)
