"""
Cover graph system for pfrees.
The bipartite graph whose vertex cover ideal is the maximal Pfaffian ideal of
the tridiagonal matrix: construction, minimal vertex covers, unmixedness and
the cover ideal.
"""
import json
import logging
import re
from collections import Counter
from typing import Any, Dict, List, Optional, Sequence, Tuple

import networkx as nx

from .error_handler import ParseError, SearchSpaceExceededError, ValidationError, error_handler
from .groebner import IdealHandle
from .matalg import entry_name, skew_tridiagonal
from .pfideal import tridiagonal_generators_closed_form
from .polyring import Polynomial, RingDescriptor
from .validation import Validator

logger = logging.getLogger("pfrees.covergraph")

MAX_COVER_VERTICES = 24
LEFT = "left"
RIGHT = "right"

Label = Tuple[int, int]
Cover = Tuple[Label, ...]

_EDGE_LINE = re.compile(r"^\s*\(\s*(\d+)\s+(\d+)\s*\)\s*--\s*\(\s*(\d+)\s+(\d+)\s*\)\s*$")


class LabeledGraph:
    """Bipartite graph on labels (i, i+1), backed by a networkx graph with a ``side`` node attribute."""

    def __init__(self, graph: nx.Graph):
        self.graph = graph
        for u, v in graph.edges:
            if u == v:
                raise ValidationError(f"self-loop at {u}")
            if graph.nodes[u].get("side") == graph.nodes[v].get("side"):
                raise ValidationError(f"edge {u} -- {v} joins two vertices on one side")

    @classmethod
    def from_edges(cls, left: Sequence[Label], right: Sequence[Label],
                   edges: Sequence[Tuple[Label, Label]]) -> "LabeledGraph":
        G = nx.Graph()
        G.add_nodes_from(left, side=LEFT)
        G.add_nodes_from(right, side=RIGHT)
        G.add_edges_from(edges)
        return cls(G)

    @property
    def vertices(self) -> List[Label]:
        return sorted(self.graph.nodes)

    @property
    def edges(self) -> List[Tuple[Label, Label]]:
        return sorted(tuple(sorted(e)) for e in self.graph.edges)

    def side(self, v: Label) -> str:
        return self.graph.nodes[v]["side"]

    def to_text(self) -> str:
        return "\n".join(f"({a[0]} {a[1]}) -- ({b[0]} {b[1]})" for a, b in self.edges)

    def to_json(self) -> Dict[str, Any]:
        return {
            "left": [list(v) for v in self.vertices if self.side(v) == LEFT],
            "right": [list(v) for v in self.vertices if self.side(v) == RIGHT],
            "edges": [[list(a), list(b)] for a, b in self.edges],
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "LabeledGraph":
        try:
            left = [tuple(v) for v in data["left"]]
            right = [tuple(v) for v in data["right"]]
            edges = [(tuple(a), tuple(b)) for a, b in data["edges"]]
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"malformed graph JSON: {e}") from None
        return cls.from_edges(left, right, edges)

    @classmethod
    def from_text(cls, text: str) -> "LabeledGraph":
        """Parse ``(1 2) -- (2 3)`` lines; the side of a label is the parity of its first index."""
        edges = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            m = _EDGE_LINE.match(line)
            if m is None:
                raise ParseError(f"line {lineno}: expected '(i j) -- (k l)'")
            a, b, c, d = (int(g) for g in m.groups())
            edges.append(((a, b), (c, d)))
        labels = {v for e in edges for v in e}
        left = sorted(v for v in labels if v[0] % 2 == 1)
        right = sorted(v for v in labels if v[0] % 2 == 0)
        return cls.from_edges(left, right, edges)


def build_G(n: int) -> LabeledGraph:
    """Left vertices (2k-1, 2k), right vertices (2l, 2l+1), an edge iff l >= k.

    Raises:
        ValidationError: If n is even or below 3
    """
    Validator.validate_odd(n, "n", 3)
    r = (n - 1) // 2
    left = [(2 * k - 1, 2 * k) for k in range(1, r + 1)]
    right = [(2 * l, 2 * l + 1) for l in range(1, r + 1)]
    edges = [(left[k - 1], right[l - 1]) for k in range(1, r + 1) for l in range(k, r + 1)]
    return LabeledGraph.from_edges(left, right, edges)


def _is_cover(cover: Sequence[Label], edges: Sequence[Tuple[Label, Label]]) -> bool:
    chosen = set(cover)
    return all(a in chosen or b in chosen for a, b in edges)


def minimal_vertex_covers(G: LabeledGraph) -> List[Cover]:
    """All inclusion-minimal vertex covers, by branching on an uncovered edge.

    Raises:
        SearchSpaceExceededError: If G has more than 24 vertices
    """
    if G.graph.number_of_nodes() > MAX_COVER_VERTICES:
        raise SearchSpaceExceededError(
            f"cover enumeration over {G.graph.number_of_nodes()} vertices exceeds {MAX_COVER_VERTICES}")
    edges = G.edges
    found = set()

    def branch(chosen: frozenset, pending: List[Tuple[Label, Label]]) -> None:
        pending = [e for e in pending if e[0] not in chosen and e[1] not in chosen]
        if not pending:
            if all(not _is_cover(chosen - {v}, edges) for v in chosen):
                found.add(tuple(sorted(chosen)))
            return
        a, b = pending[0]
        branch(chosen | {a}, pending)
        branch(chosen | {b}, pending)

    branch(frozenset(), edges)
    return sorted(found, key=lambda c: (len(c), c))


def networkx_minimal_covers(G: LabeledGraph) -> List[Cover]:
    """Complements of the maximal independent sets, found as maximal cliques of the complement graph."""
    nodes = set(G.graph.nodes)
    covers = {tuple(sorted(nodes - set(clique))) for clique in nx.find_cliques(nx.complement(G.graph))}
    return sorted(covers, key=lambda c: (len(c), c))


def cover_census(covers: Sequence[Cover]) -> Dict[int, int]:
    return dict(sorted(Counter(len(c) for c in covers).items()))


def is_unmixed(covers: Sequence[Cover]) -> bool:
    return len({len(c) for c in covers}) <= 1


def _label_ring(G: LabeledGraph, ring: Optional[RingDescriptor]) -> RingDescriptor:
    if ring is not None:
        return ring
    n = max(v[1] for v in G.vertices)
    return skew_tridiagonal(n).ring


def cover_ideal(G: LabeledGraph, ring: Optional[RingDescriptor] = None) -> IdealHandle:
    """Ideal of the squarefree monomials prod_{v in C} x_v over minimal covers C."""
    ring = _label_ring(G, ring)
    gens = []
    for cover in minimal_vertex_covers(G):
        m = Polynomial.one(ring)
        for i, j in cover:
            m = m * ring.var(entry_name(i, j))
        gens.append(m)
    return IdealHandle(ring, gens)


def check_cover_census(n: int) -> bool:
    """Compare the covers of build_G(n) with the supports of the closed-form tridiagonal generators."""
    G = build_G(n)
    covers = minimal_vertex_covers(G)
    closed = tridiagonal_generators_closed_form((n - 1) // 2)
    ring = closed[0].ring
    supports = set()
    for p in closed:
        labels = []
        for v in p.variables():
            a, b = ring.vars[v][1:].split("_")
            labels.append((int(a), int(b)))
        supports.add(tuple(sorted(labels)))
    agree = supports == set(covers)
    if not agree:
        error_handler.log_warning("cover census mismatch", {
            "n": n, "covers": [list(map(list, c)) for c in covers],
            "supports": [list(map(list, s)) for s in sorted(supports)]})
    logger.info(json.dumps({"event": "cover_census", "n": n, "census": cover_census(covers),
                            "unmixed": is_unmixed(covers), "agrees": agree}))
    return agree
