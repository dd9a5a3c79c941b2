"""Loopless mixed graphs and their structural queries.

A mixed graph carries three edge types between labelled nodes:

* ``LINE``  -- an undirected edge ``i -- j``
* ``ARROW`` -- a directed edge ``i -> j`` (arrowhead at ``j``)
* ``ARC``   -- a bidirected edge ``i <-> j`` (arrowheads at both ends)

Loops are rejected; multiple edges of *different* types between the same
pair are allowed, duplicates of the same type collapse.  Graphs are
immutable values: every transformation returns a new graph, and equality
is structural (same node set, same typed edge set).

The classifier recognises the nested families used throughout the
package: undirected graphs (UG), DAGs, chain graphs (CG, lines+arrows
with no semi-directed cycle containing an arrow), chain mixed graphs
(CMG, all three edge types under the same cycle condition), and anterial
graphs (AnG, simple CMGs in which no arc joins a node to one of its
anteriors).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .errors import (
    BlockedStartError,
    LoopEdgeError,
    NotAChainGraphError,
    UnknownNodeError,
)

LINE = "--"
ARROW = "->"
ARC = "<->"

EDGE_TYPES = (LINE, ARROW, ARC)

#: Canonical display order for class flags.
UG = "UG"
DAG = "DAG"
CG = "CG"
CMG = "CMG"
ANG = "AnG"
CLASS_ORDER = (UG, DAG, CG, CMG, ANG)

Edge = tuple[str, str, str]  # (kind, x, y); ordered (tail, head) for arrows


def _canonical_edge(x: str, y: str, kind: str) -> Edge:
    if kind not in EDGE_TYPES:
        raise ValueError(f"unknown edge type {kind!r}")
    if x == y:
        raise LoopEdgeError(x)
    if kind == ARROW:
        return (kind, x, y)
    a, b = sorted((x, y))
    return (kind, a, b)


@dataclass(frozen=True)
class MixedGraph:
    """Immutable loopless mixed graph over string-labelled nodes."""

    nodes: tuple[str, ...]
    edges: frozenset[Edge]

    def __post_init__(self):
        if len(set(self.nodes)) != len(self.nodes):
            raise ValueError("duplicate node labels")

    # -- adjacency indexes ------------------------------------------------

    @cached_property
    def node_set(self) -> frozenset[str]:
        return frozenset(self.nodes)

    @cached_property
    def neighbours(self) -> Mapping[str, frozenset[str]]:
        """Line neighbours per node."""
        return self._index(LINE)

    @cached_property
    def parents(self) -> Mapping[str, frozenset[str]]:
        """Arrow tails per head: ``x in parents[v]`` iff ``x -> v``."""
        out = {v: set() for v in self.nodes}
        for kind, x, y in self.edges:
            if kind == ARROW:
                out[y].add(x)
        return {v: frozenset(s) for v, s in out.items()}

    @cached_property
    def children(self) -> Mapping[str, frozenset[str]]:
        out = {v: set() for v in self.nodes}
        for kind, x, y in self.edges:
            if kind == ARROW:
                out[x].add(y)
        return {v: frozenset(s) for v, s in out.items()}

    @cached_property
    def spouses(self) -> Mapping[str, frozenset[str]]:
        """Arc partners per node."""
        return self._index(ARC)

    def _index(self, kind: str) -> Mapping[str, frozenset[str]]:
        out = {v: set() for v in self.nodes}
        for k, x, y in self.edges:
            if k == kind:
                out[x].add(y)
                out[y].add(x)
        return {v: frozenset(s) for v, s in out.items()}

    # -- basic queries -----------------------------------------------------

    def has_node(self, v: str) -> bool:
        return v in self.node_set

    def require_nodes(self, labels: Iterable[str]) -> None:
        for v in labels:
            if v not in self.node_set:
                raise UnknownNodeError(v)

    def has_edge(self, x: str, y: str, kind: str) -> bool:
        return _canonical_edge(x, y, kind) in self.edges

    def adjacent(self, x: str, y: str) -> bool:
        if x == y:
            return False
        pair = frozenset((x, y))
        return any(frozenset((a, b)) == pair for _, a, b in self.edges)

    @cached_property
    def is_simple(self) -> bool:
        pairs = [frozenset((a, b)) for _, a, b in self.edges]
        return len(pairs) == len(set(pairs))

    def edge_list(self) -> list[Edge]:
        """Edges in canonical order: lines, then arrows, then arcs."""
        rank = {LINE: 0, ARROW: 1, ARC: 2}
        return sorted(self.edges, key=lambda e: (rank[e[0]], e[1], e[2]))

    def edges_as_triples(self) -> list[tuple[str, str, str]]:
        """Edges as (x, y, kind) triples accepted by :func:`build_graph`."""
        return [(x, y, kind) for kind, x, y in self.edge_list()]

    # -- reachability ------------------------------------------------------

    def line_reachable(self, v: str, blocked: Iterable[str] = ()) -> frozenset[str]:
        """Nodes reachable from ``v`` along lines avoiding ``blocked``.

        ``v`` itself is included.  Raises :class:`BlockedStartError` if
        ``v`` is blocked.
        """
        self.require_nodes([v])
        blocked = frozenset(blocked)
        if v in blocked:
            raise BlockedStartError(f"start node {v!r} is blocked")
        reach = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            for w in self.neighbours[u]:
                if w not in reach and w not in blocked:
                    reach.add(w)
                    stack.append(w)
        return frozenset(reach)

    def line_component(self, v: str) -> frozenset[str]:
        return self.line_reachable(v)

    def induced_subgraph(self, keep: Iterable[str]) -> "MixedGraph":
        keep = frozenset(keep)
        self.require_nodes(keep)
        edges = frozenset(e for e in self.edges if e[1] in keep and e[2] in keep)
        return MixedGraph(tuple(sorted(keep)), edges)


def build_graph(
    nodes: Iterable[str], edges: Iterable[tuple[str, str, str]] = ()
) -> MixedGraph:
    """Build a graph from node labels and ``(x, y, kind)`` triples.

    Rejects loops and empty labels; edges mentioning labels outside
    ``nodes`` raise :class:`UnknownNodeError`.  Duplicate edges of the
    same type between the same pair collapse to one.
    """
    node_tuple = tuple(sorted(set(nodes)))
    if any(not n for n in node_tuple):
        raise ValueError("node labels must be non-empty")
    node_set = set(node_tuple)
    canonical = set()
    for x, y, kind in edges:
        if x not in node_set:
            raise UnknownNodeError(x)
        if y not in node_set:
            raise UnknownNodeError(y)
        canonical.add(_canonical_edge(x, y, kind))
    return MixedGraph(node_tuple, frozenset(canonical))


# -- walks over lines and arrows ------------------------------------------


def _semidirected_successors(g: MixedGraph, v: str) -> frozenset[str]:
    return g.neighbours[v] | g.children[v]


def _semidirected_reach(g: MixedGraph, start: Iterable[str]) -> set[str]:
    reach = set(start)
    stack = list(reach)
    while stack:
        u = stack.pop()
        for w in _semidirected_successors(g, u):
            if w not in reach:
                reach.add(w)
                stack.append(w)
    return reach


def has_semidirected_cycle_with_arrow(g: MixedGraph) -> bool:
    """True iff some cycle of lines/arrows, arrows all forward, has an arrow.

    Equivalent test: an arrow ``u -> v`` whose head semi-directed-reaches
    its tail closes such a cycle, and conversely every such cycle contains
    an arrow of this kind.
    """
    for kind, u, v in g.edges:
        if kind == ARROW and u in _semidirected_reach(g, [v]):
            return True
    return False


def anteriors(g: MixedGraph, a: Iterable[str]) -> frozenset[str]:
    """All nodes with a semi-directed walk into a member of ``a``.

    Walks consist of lines and forward arrows only; arcs never
    contribute.  Members of ``a`` are excluded from the result, and a
    node is never its own anterior.
    """
    a = frozenset(a)
    g.require_nodes(a)
    reach = set(a)
    stack = list(a)
    while stack:
        u = stack.pop()
        for w in g.neighbours[u] | g.parents[u]:
            if w not in reach:
                reach.add(w)
                stack.append(w)
    return frozenset(reach - a)


def ancestors(g: MixedGraph, i: str) -> frozenset[str]:
    """All nodes with a directed (all-arrow) walk to ``i``, excluding ``i``."""
    g.require_nodes([i])
    reach: set[str] = set()
    stack = list(g.parents[i])
    while stack:
        u = stack.pop()
        if u not in reach:
            reach.add(u)
            stack.extend(g.parents[u])
    return frozenset(reach - {i})


def classify(g: MixedGraph) -> frozenset[str]:
    """Class flags for ``g``: subset of {UG, DAG, CG, CMG, AnG}."""
    has_line = any(k == LINE for k, _, _ in g.edges)
    has_arrow = any(k == ARROW for k, _, _ in g.edges)
    has_arc = any(k == ARC for k, _, _ in g.edges)
    flags = set()
    if not has_arrow and not has_arc:
        flags.add(UG)
    cmg = not has_semidirected_cycle_with_arrow(g)
    if cmg:
        flags.add(CMG)
        if not has_arc:
            flags.add(CG)
            if not has_line:
                flags.add(DAG)
        if g.is_simple and _arcs_respect_anteriority(g):
            flags.add(ANG)
    return frozenset(flags)


def _arcs_respect_anteriority(g: MixedGraph) -> bool:
    for kind, x, y in g.edges:
        if kind == ARC:
            if x in anteriors(g, [y]) or y in anteriors(g, [x]):
                return False
    return True


def format_classes(flags: frozenset[str]) -> str:
    return " ".join(f for f in CLASS_ORDER if f in flags)


def chain_components(g: MixedGraph) -> list[tuple[str, ...]]:
    """Connected components of the line-only subgraph of a chain graph."""
    if CG not in classify(g):
        raise NotAChainGraphError("chain components require a chain graph")
    seen: set[str] = set()
    comps = []
    for v in g.nodes:
        if v not in seen:
            comp = g.line_component(v)
            seen |= comp
            comps.append(tuple(sorted(comp)))
    return sorted(comps)


def moral_graph(g: MixedGraph) -> MixedGraph:
    """All-line graph joining adjacent nodes and co-parents of a chain component."""
    if CG not in classify(g):
        raise NotAChainGraphError("moralization requires a chain graph")
    lines = {_canonical_edge(x, y, LINE) for _, x, y in g.edges}
    for comp in chain_components(g):
        comp_parents = sorted(set().union(*(g.parents[t] for t in comp)))
        for i, x in enumerate(comp_parents):
            for y in comp_parents[i + 1 :]:
                lines.add(_canonical_edge(x, y, LINE))
    return MixedGraph(g.nodes, frozenset(lines))
