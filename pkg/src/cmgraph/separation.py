"""c-separation for chain mixed graphs and the moralization criterion.

A walk is *c-connecting* given C when every collider section meets C and
every non-collider section avoids C; two node sets are c-separated given
C when no c-connecting walk joins them.  Because walks may repeat nodes
there are infinitely many of them, so :func:`c_separated` decides the
criterion by reachability over the finite space of (section entry node,
entry mark) states; :func:`bounded_walk_oracle` is an independent
ground-truth check that simulates walks edge by edge, and
:func:`moral_separated` implements the moralization criterion for chain
graphs.  All three must agree on their common domain.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

from . import kernel
from .errors import (
    BoundTooSmallError,
    GroundSetMismatchError,
    MalformedQueryError,
    NotACMGError,
    NotAChainGraphError,
    TooLargeError,
)
from .graph import (
    ARC,
    ARROW,
    CG,
    LINE,
    MixedGraph,
    anteriors,
    classify,
    has_semidirected_cycle_with_arrow,
    moral_graph,
)
from .walks import Walk, head_at

DEFAULT_ENUMERATION_CAP = 8

MODE_WALKS = "walks-in-C"
MODE_PATHS = "paths-in-antC"


@dataclass(frozen=True)
class SeparationQuery:
    """Disjoint node sets (a, b, given); empty a or b reads as separated."""

    a: frozenset[str]
    b: frozenset[str]
    given: frozenset[str]

    @classmethod
    def of(
        cls,
        a: Iterable[str],
        b: Iterable[str],
        given: Iterable[str] = (),
    ) -> "SeparationQuery":
        a, b, given = frozenset(a), frozenset(b), frozenset(given)
        if a & b or a & given or b & given:
            raise MalformedQueryError("query sets must be pairwise disjoint")
        return cls(a, b, given)


def _require_cmg(g: MixedGraph) -> None:
    if has_semidirected_cycle_with_arrow(g):
        raise NotACMGError("graph has a semi-directed cycle with an arrow")


def _check_query(g: MixedGraph, q: SeparationQuery) -> None:
    for v in q.a | q.b | q.given:
        if not g.has_node(v):
            raise MalformedQueryError(f"query mentions unknown node {v!r}")


@lru_cache(maxsize=512)
def _mask_tables(g: MixedGraph):
    index = {v: i for i, v in enumerate(g.nodes)}
    n = len(g.nodes)
    ln = [0] * n
    pa = [0] * n
    ch = [0] * n
    sp = [0] * n
    for kind, x, y in g.edges:
        xi, yi = index[x], index[y]
        if kind == LINE:
            ln[xi] |= 1 << yi
            ln[yi] |= 1 << xi
        elif kind == ARROW:
            ch[xi] |= 1 << yi
            pa[yi] |= 1 << xi
        else:
            sp[xi] |= 1 << yi
            sp[yi] |= 1 << xi
    return index, ln, pa, ch, sp


def _mask_of(index, labels) -> int:
    m = 0
    for v in labels:
        m |= 1 << index[v]
    return m


def c_separated(
    g: MixedGraph,
    a: Iterable[str],
    b: Iterable[str],
    given: Iterable[str] = (),
) -> bool:
    """Decide whether ``a`` and ``b`` are c-separated given ``given``."""
    q = SeparationQuery.of(a, b, given)
    _require_cmg(g)
    _check_query(g, q)
    if not q.a or not q.b:
        return True
    index, ln, pa, ch, sp = _mask_tables(g)
    return kernel.separated(
        len(g.nodes),
        ln,
        pa,
        ch,
        sp,
        _mask_of(index, q.a),
        _mask_of(index, q.b),
        _mask_of(index, q.given),
    )


# -- edge-stepping simulation (oracle and witness construction) -----------


def _steps(g: MixedGraph):
    """Per-node traversal steps: (other, head_here, head_there, edge)."""
    out: dict[str, list[tuple[str, bool, bool, tuple]]] = {v: [] for v in g.nodes}
    for edge in g.edge_list():
        kind, x, y = edge
        out[x].append((y, head_at(edge, x), head_at(edge, y), edge))
        out[y].append((x, head_at(edge, y), head_at(edge, x), edge))
    return out


def bounded_walk_oracle(
    g: MixedGraph,
    a: Iterable[str],
    b: Iterable[str],
    given: Iterable[str] = (),
    *,
    maxlen: Optional[int] = None,
    mode: str = MODE_WALKS,
) -> bool:
    """Ground-truth separation check by walk simulation up to ``maxlen`` edges.

    ``mode=walks-in-C`` applies the connecting-walk criterion literally:
    collider sections must meet the conditioning set, non-collider
    sections must avoid it.  ``mode=paths-in-antC`` checks the
    normalized variant in which collider sections must lie entirely
    inside C together with its anteriors.  Any connecting walk
    normalizes to one of at most ``2|V|^2`` edges, so the default bound
    of ``4|V|^2`` is exhaustive; smaller bounds than ``2|V|^2`` raise
    :class:`BoundTooSmallError`.
    """
    q = SeparationQuery.of(a, b, given)
    _require_cmg(g)
    _check_query(g, q)
    if not q.a or not q.b:
        return True
    n = len(g.nodes)
    floor = 2 * n * n
    if maxlen is None:
        maxlen = 4 * n * n
    if maxlen < floor:
        raise BoundTooSmallError(f"maxlen {maxlen} below sufficiency bound {floor}")
    if mode == MODE_WALKS:
        in_bad = q.given  # non-collider sections must avoid this
        collider_ok = lambda all_good, touched: touched  # noqa: E731
        in_good = q.given  # collider sections must touch this
    elif mode == MODE_PATHS:
        s = q.given | anteriors(g, q.given)
        in_bad = q.given
        in_good = s
        collider_ok = lambda all_good, touched: all_good  # noqa: E731
    else:
        raise ValueError(f"unknown oracle mode {mode!r}")

    steps = _steps(g)
    # state: (node, entered-with-head, section-all-in-good, section-clean-of-bad)
    start = [(v, False, v in in_good, v not in in_bad) for v in sorted(q.a)]
    seen = set(start)
    frontier = list(start)
    for _ in range(maxlen):
        if not frontier:
            break
        nxt = []
        for v, head, all_good, clean in frontier:
            if v in q.b and clean:
                return False  # endpoint section is a non-collider
            for w, head_here, head_there, edge in steps[v]:
                if edge[0] == LINE:
                    state = (w, head, all_good and w in in_good, clean and w not in in_bad)
                else:
                    collider = head and head_here
                    if collider:
                        if not collider_ok(all_good, not clean):
                            continue
                    elif not clean:
                        continue
                    state = (w, head_there, w in in_good, w not in in_bad)
                if state not in seen:
                    seen.add(state)
                    nxt.append(state)
        frontier = nxt
    # drain any remaining acceptance checks on the last frontier
    for v, head, all_good, clean in frontier:
        if v in q.b and clean:
            return False
    return True


def c_connecting_witness(
    g: MixedGraph,
    a: Iterable[str],
    b: Iterable[str],
    given: Iterable[str] = (),
) -> Optional[Walk]:
    """A c-connecting walk between ``a`` and ``b`` given ``given``, or None."""
    q = SeparationQuery.of(a, b, given)
    _require_cmg(g)
    _check_query(g, q)
    if not q.a or not q.b:
        return None
    steps = _steps(g)
    c = q.given
    start = [(v, False, v in c) for v in sorted(q.a)]
    parent: dict[tuple, tuple | None] = {s: None for s in start}
    frontier = list(start)
    goal = None
    while frontier and goal is None:
        nxt = []
        for state in frontier:
            v, head, touched = state
            if v in q.b and not touched:
                goal = state
                break
            for w, head_here, head_there, edge in steps[v]:
                if edge[0] == LINE:
                    new = (w, head, touched or w in c)
                else:
                    collider = head and head_here
                    if collider != touched:
                        continue  # collider needs C, non-collider forbids it
                    new = (w, head_there, w in c)
                if new not in parent:
                    parent[new] = (state, edge)
                    nxt.append(new)
        frontier = nxt
    if goal is None:
        return None
    nodes = [goal[0]]
    edges = []
    cur = goal
    while parent[cur] is not None:
        prev, edge = parent[cur]
        edges.append(edge)
        nodes.append(prev[0])
        cur = prev
    nodes.reverse()
    edges.reverse()
    return Walk(tuple(nodes), tuple(edges))


def moral_separated(
    g: MixedGraph,
    a: Iterable[str],
    b: Iterable[str],
    given: Iterable[str] = (),
) -> bool:
    """Moralization criterion for chain graphs.

    Separated iff in the moral graph of the subgraph induced by the
    query nodes and their anteriors, every path between ``a`` and ``b``
    passes through ``given``.
    """
    q = SeparationQuery.of(a, b, given)
    if CG not in classify(g):
        raise NotAChainGraphError("moral separation requires a chain graph")
    _check_query(g, q)
    if not q.a or not q.b:
        return True
    base = q.a | q.b | q.given
    keep = base | anteriors(g, base)
    moral = moral_graph(g.induced_subgraph(keep))
    reach = set(q.a)
    stack = list(q.a)
    while stack:
        u = stack.pop()
        if u in q.given:
            continue  # blocked: paths may not pass through the conditioning set
        for w in moral.neighbours[u]:
            if w not in reach:
                if w in q.b:
                    return False
                reach.add(w)
                stack.append(w)
    return True


# -- independence models ---------------------------------------------------

Statement = tuple[str, str, frozenset[str]]


@dataclass(frozen=True)
class IndependenceModel:
    """All pairwise separation statements a graph induces."""

    ground: frozenset[str]
    statements: frozenset[Statement]

    def holds(self, a: Iterable[str], b: Iterable[str], given: Iterable[str]) -> bool:
        """Set-level statement: every cross pair must be separated."""
        a, b, c = frozenset(a), frozenset(b), frozenset(given)
        if not a or not b:
            return True
        return all(
            (min(x, y), max(x, y), c) in self.statements for x in a for y in b
        )

    def sorted_statements(self) -> list[Statement]:
        return sorted(
            self.statements, key=lambda s: (s[0], s[1], len(s[2]), sorted(s[2]))
        )


def pairwise_model(
    g: MixedGraph, *, cap: int = DEFAULT_ENUMERATION_CAP
) -> IndependenceModel:
    """Enumerate every (i, j, C) with i, j singleton-separated given C."""
    _require_cmg(g)
    if len(g.nodes) > cap:
        raise TooLargeError(f"{len(g.nodes)} nodes exceeds enumeration cap {cap}")
    index, ln, pa, ch, sp = _mask_tables(g)
    n = len(g.nodes)
    stmts = set()
    for i, j, cmask in kernel.all_pair_separations(n, ln, pa, ch, sp):
        cset = frozenset(g.nodes[k] for k in range(n) if cmask >> k & 1)
        x, y = g.nodes[i], g.nodes[j]
        stmts.add((min(x, y), max(x, y), cset))
    return IndependenceModel(g.node_set, frozenset(stmts))


def models_equal(m1: IndependenceModel, m2: IndependenceModel) -> bool:
    if m1.ground != m2.ground:
        raise GroundSetMismatchError("models are over different node sets")
    return m1.statements == m2.statements


def is_maximal(g: MixedGraph, *, cap: int = DEFAULT_ENUMERATION_CAP) -> bool:
    """True iff every non-adjacent pair carries some separation statement."""
    _require_cmg(g)
    if len(g.nodes) > cap:
        raise TooLargeError(f"{len(g.nodes)} nodes exceeds enumeration cap {cap}")
    index, ln, pa, ch, sp = _mask_tables(g)
    n = len(g.nodes)
    for i in range(n):
        for j in range(i + 1, n):
            if g.adjacent(g.nodes[i], g.nodes[j]):
                continue
            if kernel.exists_separator(n, ln, pa, ch, sp, i, j) < 0:
                return False
    return True


@dataclass(frozen=True)
class TrislideWitness:
    """Collider trislide certifying non-maximality.

    ``endpoints`` are non-adjacent, both flanking edges point into the
    all-line ``section``, and ``arrow`` runs from a section node to one
    of the endpoints.  Any conditioning set then leaves the endpoints
    connected.
    """

    endpoints: tuple[str, str]
    section: tuple[str, ...]
    flanks: tuple[tuple, tuple]
    arrow: tuple[str, str]


def _simple_line_paths(g: MixedGraph, u: str, w: str, avoid: frozenset[str]):
    """All simple line paths from u to w avoiding ``avoid``."""
    path = [u]
    on_path = {u}

    def rec(cur):
        if cur == w:
            yield tuple(path)
            return
        for nxt in sorted(g.neighbours[cur]):
            if nxt in on_path or nxt in avoid:
                continue
            path.append(nxt)
            on_path.add(nxt)
            yield from rec(nxt)
            path.pop()
            on_path.remove(nxt)

    yield from rec(u)


def _head_flank_edges(g: MixedGraph, v: str):
    """Edges with an arrowhead at ``v``, with the far endpoint."""
    for x in sorted(g.parents[v]):
        yield x, (ARROW, x, v)
    for x in sorted(g.spouses[v]):
        yield x, (ARC, min(x, v), max(x, v))


def non_maximality_witness(g: MixedGraph) -> Optional[TrislideWitness]:
    """Search for a collider trislide with an inner-to-endpoint arrow.

    Sufficient condition only: a witness implies the graph is not
    maximal, absence implies nothing.
    """
    _require_cmg(g)
    for u in g.nodes:
        for i, flank_i in _head_flank_edges(g, u):
            for w in sorted(g.line_component(u)):
                for j, flank_j in _head_flank_edges(g, w):
                    if j == i or i in (u, w) or j in (u, w):
                        continue
                    if g.adjacent(i, j):
                        continue
                    for path in _simple_line_paths(g, u, w, frozenset((i, j))):
                        for x in path:
                            for target in (i, j):
                                if g.has_edge(x, target, ARROW) and x != target:
                                    return TrislideWitness(
                                        (i, j), path, (flank_i, flank_j), (x, target)
                                    )
    return None
