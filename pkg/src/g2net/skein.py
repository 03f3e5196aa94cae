"""Crossing elimination.

Label a crossing ``X(d1, d2, d3, d4)`` (counterclockwise, d1--d3 over).
Its four planar smoothings are

* ``P1``: arcs d1--d2 and d3--d4,
* ``P2``: arcs d2--d3 and d4--d1,
* ``T1``: two vertices joined by a new edge, one on {d1, d2}, one on {d3, d4},
* ``T2``: the same with {d2, d3} and {d4, d1}.

A tree term groups its legs exactly like one of the arc terms, so a
convention fixes which arc term is the "identity" smoothing of a positive
crossing; the compatible tree then carries ``sigma`` and the other tree
``rho``::

    convention A:  lam*P1 + mu*P2 + sigma*T1 + rho*T2
    convention B:  mu*P1 + lam*P2 + rho*T1 + sigma*T2

B on a diagram is A on its mirror image.  :data:`CALIBRATED_CONVENTION`
is the one for which the curl ``X 1 2 2 1`` picks up ``q^6`` and the
bundled trefoil gives its known polynomial.
"""
from __future__ import annotations

from typing import Callable, Dict, Iterator, List, Tuple

from .coeffs import CoefficientTable, build_table
from .net import Diagram, Node, canonical_code, substitute_region
from .ring import FieldValue

__all__ = [
    "LinearCombination",
    "SMOOTHINGS",
    "CALIBRATED_CONVENTION",
    "convention_coefficients",
    "smoothing_roles",
    "smooth",
    "flip_crossing",
    "resolve_crossing",
    "expand",
    "crossing_change_residual",
]

CALIBRATED_CONVENTION = "B"

# (arcs, new nodes) on ports 0..3 = d1..d4
SMOOTHINGS = {
    "P1": ([(0, 1), (2, 3)], []),
    "P2": ([(1, 2), (3, 0)], []),
    "T1": ([], [("V", (0, 1, "e")), ("V", (2, 3, "e"))]),
    "T2": ([], [("V", (1, 2, "e")), ("V", (3, 0, "e"))]),
}


class LinearCombination:
    """Formal sum of diagrams, merged by canonical code."""

    def __init__(self, terms=()):
        self.terms: Dict[bytes, List] = {}
        for diagram, coeff in terms:
            self.add(diagram, coeff)

    def add(self, diagram: Diagram, coeff) -> None:
        coeff = FieldValue.coerce(coeff)
        if coeff.is_zero():
            return
        key = canonical_code(diagram)
        slot = self.terms.get(key)
        if slot is None:
            self.terms[key] = [diagram, coeff]
            return
        total = slot[1] + coeff
        if total.is_zero():
            del self.terms[key]
        else:
            slot[1] = total

    def __iter__(self) -> Iterator[Tuple[Diagram, FieldValue]]:
        for diagram, coeff in self.terms.values():
            yield diagram, coeff

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearCombination):
            return NotImplemented
        if self.terms.keys() != other.terms.keys():
            return False
        return all(self.terms[k][1] == other.terms[k][1] for k in self.terms)

    def coefficients(self) -> Dict[bytes, FieldValue]:
        return {k: v[1] for k, v in self.terms.items()}

    def __repr__(self) -> str:
        return f"LinearCombination({len(self)} terms)"


def convention_coefficients(convention: str = CALIBRATED_CONVENTION,
                            table: CoefficientTable | None = None) -> Dict[str, FieldValue]:
    c = table or build_table()
    if convention == "A":
        return {"P1": c.lam, "P2": c.mu, "T1": c.sigma, "T2": c.rho}
    if convention == "B":
        return {"P1": c.mu, "P2": c.lam, "T1": c.rho, "T2": c.sigma}
    raise ValueError(f"unknown convention {convention!r}")


def smoothing_roles(convention: str = CALIBRATED_CONVENTION) -> Dict[str, str]:
    """Which smoothing plays identity / cup-cap / H / I for a positive crossing."""
    if convention == "A":
        return {"id": "P1", "cupcap": "P2", "H": "T2", "I": "T1"}
    if convention == "B":
        return {"id": "P2", "cupcap": "P1", "H": "T1", "I": "T2"}
    raise ValueError(f"unknown convention {convention!r}")


def _crossing_node(d: Diagram, c: int) -> Node:
    if not 0 <= c < len(d.nodes) or d.nodes[c].kind != "X":
        raise ValueError(f"node {c} is not a crossing")
    return d.nodes[c]


def smooth(d: Diagram, c: int, which: str, *, next_dart: int | None = None) -> Diagram:
    """Replace crossing ``c`` by one of the smoothings P1, P2, T1, T2."""
    node = _crossing_node(d, c)
    arcs, new_nodes = SMOOTHINGS[which]
    return substitute_region(d, [c], node.darts, arcs, new_nodes, next_dart=next_dart)


def flip_crossing(d: Diagram, c: int) -> Diagram:
    """Change crossing ``c`` (swap its over- and under-strand)."""
    node = _crossing_node(d, c)
    nodes = list(d.nodes)
    nodes[c] = Node("X", node.darts[1:] + node.darts[:1])
    return Diagram(nodes, d.partner, d.free_loops, check=False)


def resolve_crossing(d: Diagram, c: int, convention: str = CALIBRATED_CONVENTION,
                     table: CoefficientTable | None = None) -> LinearCombination:
    coeffs = convention_coefficients(convention, table)
    return LinearCombination((smooth(d, c, k), coeffs[k]) for k in ("P1", "P2", "T1", "T2"))


def _first_crossing(d: Diagram) -> int:
    return d.crossings()[0]


def expand(d: Diagram, convention: str = CALIBRATED_CONVENTION,
           table: CoefficientTable | None = None,
           choose: Callable[[Diagram], int] = _first_crossing) -> LinearCombination:
    """Expand all crossings into a combination of crossing-free diagrams.

    ``choose`` picks the crossing to resolve in each term; the result does
    not depend on it.
    """
    coeffs = convention_coefficients(convention, table)
    current = LinearCombination([(d, 1)])
    while True:
        pending = [(t, c) for t, c in current if t.num_crossings()]
        if not pending:
            return current
        nxt = LinearCombination((t, c) for t, c in current if not t.num_crossings())
        for term, coeff in pending:
            x = choose(term)
            for k in ("P1", "P2", "T1", "T2"):
                nxt.add(smooth(term, x, k), coeff * coeffs[k])
        current = nxt


def crossing_change_residual(d: Diagram, c: int, evaluate: Callable[[Diagram], FieldValue] | None = None,
                      convention: str = CALIBRATED_CONVENTION,
                      table: CoefficientTable | None = None) -> FieldValue:
    """``I(d) - (alpha I(flip) + beta I(id) + gamma I(cupcap) + delta I(H))`` at crossing c.

    The crossing is read as positive by the given convention; the result
    vanishes exactly when the crossing-change relation holds.
    """
    if evaluate is None:
        from .reduce import invariant
        evaluate = invariant
    t = table or build_table()
    roles = smoothing_roles(convention)
    _crossing_node(d, c)
    total = evaluate(d)
    total = total - t.alpha * evaluate(flip_crossing(d, c))
    total = total - t.beta * evaluate(smooth(d, c, roles["id"]))
    total = total - t.gamma * evaluate(smooth(d, c, roles["cupcap"]))
    total = total - t.delta * evaluate(smooth(d, c, roles["H"]))
    return total
