"""Latent projection, conditioning, and anterial closure for CMGs.

Marginalization rewrites a chain mixed graph so that the surviving nodes
induce the same independence model with the marginalized nodes removed;
conditioning does the same for nodes fixed by observation.  Both work by
generating endpoint-identical edges across tripaths and trislides until
a fixpoint, then deleting (or de-arrowing) the affected nodes.  The
anterial closure turns the result into an anterial graph with the same
model.

Edge-generation rules, written with ``m`` a marginalized node, ``s`` a
node of S = C together with its anteriors, and sections drawn as
``--..--``:

marginalize, collider-flank stage (arrows out of ``m`` into a section)::

    m -> i --..-- o <- j   =>   j -> i
    m -> i --..-- o <-> j  =>   i <-> j

marginalize, tripath stage (inner node ``m``)::

    i <- m <- j   =>  i <- j        i <- m -> j   =>  i <-> j
    i <- m -- j   =>  i <- j        i <- m <-> j  =>  i <-> j
    i <-> m -- j  =>  i <-> j       i -- m <- j   =>  i <- j
    i -- m -- j   =>  i -- j

condition, arc-flank stage (arc out of ``s`` into a section)::

    s <-> i --..-- o <- j   =>  j -> i
    s <-> i --..-- o <-> j  =>  i <-> j

condition, collider stage (inner section inside S)::

    i -> s --..-- s <- j    =>  i -- j
    i <-> s --..-- s <- j   =>  j -> i
    i <-> s --..-- s <-> j  =>  i <-> j

The collider stage never uses lines it generated itself to build new
sections.  Afterwards every arrowhead pointing at S is removed (arrows
into S become lines, arcs at S lose that head) and the conditioned nodes
are deleted.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable

from .errors import (
    NotACMGError,
    NotAnAnGError,
    TransformSpecError,
    UnknownNodeError,
)
from .graph import (
    ANG,
    ARC,
    ARROW,
    LINE,
    MixedGraph,
    anteriors,
    build_graph,
    classify,
    has_semidirected_cycle_with_arrow,
)


@dataclass(frozen=True)
class TransformSpec:
    """Disjoint marginalization and conditioning sets."""

    m: frozenset[str]
    c: frozenset[str]

    @classmethod
    def of(cls, m: Iterable[str] = (), c: Iterable[str] = ()) -> "TransformSpec":
        m, c = frozenset(m), frozenset(c)
        if m & c:
            raise TransformSpecError("marginalization and conditioning sets overlap")
        return cls(m, c)


def _require_cmg(g: MixedGraph) -> None:
    if has_semidirected_cycle_with_arrow(g):
        raise NotACMGError("transform input has a semi-directed cycle with an arrow")


class _Work:
    """Mutable edge store used by the rule engines."""

    def __init__(self, g: MixedGraph):
        self.nodes: set[str] = set(g.nodes)
        self.lines: set[tuple[str, str]] = set()
        self.arrows: set[tuple[str, str]] = set()
        self.arcs: set[tuple[str, str]] = set()
        self.ne: dict[str, set[str]] = defaultdict(set)
        self.pa: dict[str, set[str]] = defaultdict(set)
        self.ch: dict[str, set[str]] = defaultdict(set)
        self.sp: dict[str, set[str]] = defaultdict(set)
        for kind, x, y in g.edges:
            if kind == LINE:
                self.add_line(x, y)
            elif kind == ARROW:
                self.add_arrow(x, y)
            else:
                self.add_arc(x, y)

    def add_line(self, x: str, y: str) -> bool:
        pair = (min(x, y), max(x, y))
        if pair in self.lines:
            return False
        self.lines.add(pair)
        self.ne[x].add(y)
        self.ne[y].add(x)
        return True

    def add_arrow(self, tail: str, head: str) -> bool:
        if (tail, head) in self.arrows:
            return False
        self.arrows.add((tail, head))
        self.ch[tail].add(head)
        self.pa[head].add(tail)
        return True

    def add_arc(self, x: str, y: str) -> bool:
        pair = (min(x, y), max(x, y))
        if pair in self.arcs:
            return False
        self.arcs.add(pair)
        self.sp[x].add(y)
        self.sp[y].add(x)
        return True

    def remove_arrow(self, tail: str, head: str) -> None:
        self.arrows.discard((tail, head))
        self.ch[tail].discard(head)
        self.pa[head].discard(tail)

    def remove_arc(self, x: str, y: str) -> None:
        self.arcs.discard((min(x, y), max(x, y)))
        self.sp[x].discard(y)
        self.sp[y].discard(x)

    def delete_nodes(self, drop: Iterable[str]) -> None:
        drop = set(drop)
        self.nodes -= drop
        for store in (self.lines, self.arcs, self.arrows):
            dead = {e for e in store if e[0] in drop or e[1] in drop}
            store -= dead
        for adj in (self.ne, self.pa, self.ch, self.sp):
            for v in drop:
                adj.pop(v, None)
            for v, others in adj.items():
                others -= drop

    def line_reach(
        self,
        v: str,
        blocked: frozenset[str] = frozenset(),
        usable_lines: set[tuple[str, str]] | None = None,
    ) -> set[str]:
        if v in blocked:
            return set()
        if usable_lines is None:
            adj = self.ne
        else:
            adj = defaultdict(set)
            for x, y in usable_lines:
                adj[x].add(y)
                adj[y].add(x)
        reach = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in reach and w not in blocked:
                    reach.add(w)
                    stack.append(w)
        return reach

    def head_flanks(self, v: str) -> list[tuple[str, str]]:
        """(other, kind) for edges with an arrowhead at ``v``."""
        out = [(x, ARROW) for x in sorted(self.pa[v])]
        out += [(x, ARC) for x in sorted(self.sp[v])]
        return out

    def anterior_map(self) -> dict[str, set[str]]:
        """ant[v]: nodes with a semi-directed walk into v (v excluded)."""
        ant: dict[str, set[str]] = {}
        for v in self.nodes:
            reach = {v}
            stack = [v]
            while stack:
                u = stack.pop()
                for w in self.ne[u] | self.pa[u]:
                    if w not in reach:
                        reach.add(w)
                        stack.append(w)
            ant[v] = reach - {v}
        return ant

    def to_graph(self) -> MixedGraph:
        edges = [(x, y, LINE) for x, y in self.lines]
        edges += [(t, h, ARROW) for t, h in self.arrows]
        edges += [(x, y, ARC) for x, y in self.arcs]
        return build_graph(sorted(self.nodes), edges)


def _marginalize_flank_stage(w: _Work, m_set: frozenset[str]) -> None:
    # m -> i --..-- o <- j  =>  j -> i ; with an arc flank the result is an arc
    changed = True
    while changed:
        changed = False
        for mm in sorted(m_set & w.nodes):
            for u in sorted(w.ch[mm]):
                for far in sorted(w.line_reach(u, frozenset((mm,)))):
                    for j, kind in w.head_flanks(far):
                        if j == mm or j == u:
                            continue
                        if far not in w.line_reach(u, frozenset((mm, j))):
                            continue
                        if kind == ARROW:
                            changed |= w.add_arrow(j, u)
                        else:
                            changed |= w.add_arc(u, j)


_TRIPATH_RULES = {
    # (role of i at m, role of j at m) -> generated edge shape
    ("child", "parent"): ARROW,  # i <- m <- j
    ("child", "nbr"): ARROW,  # i <- m -- j
    ("sp", "nbr"): ARC,  # i <-> m -- j
    ("child", "child"): ARC,  # i <- m -> j
    ("child", "sp"): ARC,  # i <- m <-> j
    ("nbr", "parent"): ARROW,  # i -- m <- j
    ("nbr", "nbr"): LINE,  # i -- m -- j
}


def _roles(w: _Work, mm: str) -> list[tuple[str, str]]:
    out = [(x, "child") for x in sorted(w.ch[mm])]
    out += [(x, "parent") for x in sorted(w.pa[mm])]
    out += [(x, "nbr") for x in sorted(w.ne[mm])]
    out += [(x, "sp") for x in sorted(w.sp[mm])]
    return out


def _marginalize_tripath_stage(w: _Work, m_set: frozenset[str]) -> None:
    changed = True
    while changed:
        changed = False
        for mm in sorted(m_set & w.nodes):
            roles = _roles(w, mm)
            for i, ri in roles:
                for j, rj in roles:
                    if i == j:
                        continue
                    shape = _TRIPATH_RULES.get((ri, rj))
                    if shape is None:
                        continue
                    if shape == ARROW:
                        changed |= w.add_arrow(j, i)
                    elif shape == ARC:
                        changed |= w.add_arc(i, j)
                    else:
                        changed |= w.add_line(i, j)


def marginalize(g: MixedGraph, m: Iterable[str]) -> MixedGraph:
    """Project the marginalized nodes out of a chain mixed graph."""
    m = frozenset(m)
    _require_cmg(g)
    g.require_nodes(m)
    w = _Work(g)
    _marginalize_flank_stage(w, m)
    _marginalize_tripath_stage(w, m)
    w.delete_nodes(m)
    return w.to_graph()


def marginalize_flank_closure(g: MixedGraph, m: Iterable[str]) -> MixedGraph:
    """The intermediate graph after the collider-flank stage only.

    Exposed for the marginal edge oracle, which is stated over this
    graph rather than the input.
    """
    m = frozenset(m)
    _require_cmg(g)
    g.require_nodes(m)
    w = _Work(g)
    _marginalize_flank_stage(w, m)
    return w.to_graph()


def _condition_arc_flank_stage(w: _Work, s_set: frozenset[str]) -> None:
    # s <-> i --..-- o <- j  =>  j -> i ; arc far-flank gives i <-> j
    changed = True
    while changed:
        changed = False
        for x, y in sorted(w.arcs):
            for s, u in ((x, y), (y, x)):
                if s not in s_set:
                    continue
                for far in sorted(w.line_reach(u, frozenset((s,)))):
                    for j, kind in w.head_flanks(far):
                        if j == s or j == u:
                            continue
                        if far not in w.line_reach(u, frozenset((s, j))):
                            continue
                        if kind == ARROW:
                            changed |= w.add_arrow(j, u)
                        else:
                            changed |= w.add_arc(u, j)


def _condition_collider_stage(w: _Work, s_set: frozenset[str]) -> None:
    # i -> s --..-- s <- j   =>  i -- j        (both flanks arrows)
    # i <-> s --..-- s <- j  =>  j -> i        (arc flank wins the head)
    # i <-> s --..-- s <-> j =>  i <-> j
    usable = set(w.lines)  # lines generated below must not build sections
    changed = True
    while changed:
        changed = False
        for s1 in sorted(s_set & w.nodes):
            for i, kind_i in w.head_flanks(s1):
                for s2 in sorted(w.line_reach(s1, frozenset((i,)), usable)):
                    for j, kind_j in w.head_flanks(s2):
                        if j == i or i == s2 or j == s1:
                            continue
                        if s2 not in w.line_reach(s1, frozenset((i, j)), usable):
                            continue
                        if kind_i == ARROW and kind_j == ARROW:
                            changed |= w.add_line(i, j)
                        elif kind_i == ARC and kind_j == ARROW:
                            changed |= w.add_arrow(j, i)
                        elif kind_i == ARROW and kind_j == ARC:
                            changed |= w.add_arrow(i, j)
                        else:
                            changed |= w.add_arc(i, j)


def _condition_strip_heads(w: _Work, s_set: frozenset[str]) -> None:
    for tail, head in sorted(w.arrows):
        if head in s_set:
            w.remove_arrow(tail, head)
            w.add_line(tail, head)
    for x, y in sorted(w.arcs):
        in_s = (x in s_set, y in s_set)
        if in_s == (True, True):
            w.remove_arc(x, y)
            w.add_line(x, y)
        elif in_s == (True, False):
            w.remove_arc(x, y)
            w.add_arrow(x, y)
        elif in_s == (False, True):
            w.remove_arc(x, y)
            w.add_arrow(y, x)


def condition(g: MixedGraph, c: Iterable[str]) -> MixedGraph:
    """Condition a chain mixed graph on the nodes of ``c``."""
    c = frozenset(c)
    _require_cmg(g)
    g.require_nodes(c)
    s_set = c | anteriors(g, c)
    w = _Work(g)
    _condition_arc_flank_stage(w, s_set)
    _condition_collider_stage(w, s_set)
    _condition_strip_heads(w, s_set)
    w.delete_nodes(c)
    return w.to_graph()


def marginalize_and_condition(
    g: MixedGraph, spec: TransformSpec, *, order: str = "mc"
) -> MixedGraph:
    """Apply both operations; ``order`` picks which runs first.

    The canonical order marginalizes first.  On maximal results the two
    orders produce the same graph; they always produce the same model.
    """
    g.require_nodes(spec.m | spec.c)
    if order == "mc":
        return condition(marginalize(g, spec.m), spec.c)
    if order == "cm":
        return marginalize(condition(g, spec.c), spec.m)
    raise ValueError(f"unknown order {order!r}")


# -- anterial closure -------------------------------------------------------


class _RoleTracker:
    """Reuse scope for edges generated during the anterial closure.

    A generated edge stands in for a walk whose inner sections are
    anterior to the target it was generated for, so it may only feed a
    later match when that target lies inside the new target's anterior
    scope; chaining without this guard manufactures adjacencies the walk
    characterization excludes.  Edges of the input graph carry no
    restriction.  Widening an existing edge's scope re-arms the fixpoint.
    """

    def __init__(self, ant: dict[str, set[str]]):
        self.ant = ant
        self.roles: dict[tuple, set[str]] = {}

    def usable(self, key: tuple, target: str) -> bool:
        scope = self.roles.get(key)
        if scope is None:
            return True
        return any(r == target or r in self.ant[target] for r in scope)

    def note(self, key: tuple, target: str, added: bool) -> bool:
        if added:
            self.roles[key] = {target}
            return True
        scope = self.roles.get(key)
        if scope is not None and target not in scope and not self.usable(key, target):
            scope.add(target)
            return True
        return False


def _arrow_key(tail: str, head: str) -> tuple:
    return (ARROW, tail, head)


def _arc_key(x: str, y: str) -> tuple:
    return (ARC, min(x, y), max(x, y))


def _flank_key(v: str, other: str, kind: str) -> tuple:
    return _arrow_key(other, v) if kind == ARROW else _arc_key(other, v)


def _ang_generate(w: _Work, ant: dict[str, set[str]], tracker: _RoleTracker) -> None:
    # arc-at-section:    j -> o --..-- i <-> k   (k anterior of i)  =>  j -> i
    #                    j <-> o --..-- i <-> k  (k anterior of i)  =>  i <-> j
    # arc-beyond-section: j -> k1 --..-- km <-> i (section anterior of i) => j -> i
    #                     j <-> k1 --..-- km <-> i (same condition)       => j <-> i
    changed = True
    while changed:
        changed = False
        for x, y in sorted(w.arcs):
            for u, i in ((x, y), (y, x)):
                # u is the arc end inside/at the section, i the target
                arc_ok_at = tracker.usable(_arc_key(u, i), u)  # arc i <-> k, k=i role
                arc_ok_beyond = tracker.usable(_arc_key(u, i), i)
                for far in sorted(w.line_reach(u, frozenset((i,)))):
                    for j, kind in w.head_flanks(far):
                        if j == i or j == u:
                            continue
                        if far not in w.line_reach(u, frozenset((i, j))):
                            continue
                        # at-section form: section ends at u, arc runs to i
                        if arc_ok_at and i in ant[u] and tracker.usable(
                            _flank_key(far, j, kind), u
                        ):
                            if kind == ARROW:
                                added = w.add_arrow(j, u)
                                changed |= tracker.note(_arrow_key(j, u), u, added)
                            else:
                                added = w.add_arc(u, j)
                                changed |= tracker.note(_arc_key(u, j), u, added)
                        # beyond-section form: section anterior of i beyond the arc
                        if arc_ok_beyond and u in ant[i] and tracker.usable(
                            _flank_key(far, j, kind), i
                        ):
                            if kind == ARROW:
                                added = w.add_arrow(j, i)
                                changed |= tracker.note(_arrow_key(j, i), i, added)
                            else:
                                added = w.add_arc(j, i)
                                changed |= tracker.note(_arc_key(j, i), i, added)


def _ang_resolve_arcs(w: _Work, ant: dict[str, set[str]]) -> None:
    for x, y in sorted(w.arcs):
        x_ant_y = x in ant[y]
        y_ant_x = y in ant[x]
        if x_ant_y and y_ant_x:
            w.remove_arc(x, y)
            w.add_line(x, y)
        elif x_ant_y:
            w.remove_arc(x, y)
            w.add_arrow(x, y)
        elif y_ant_x:
            w.remove_arc(x, y)
            w.add_arrow(y, x)


def anterialize(h: MixedGraph) -> MixedGraph:
    """Close a chain mixed graph into an anterial graph with the same model.

    Anteriors are stable across all three stages, so the anterior map is
    computed once up front.
    """
    _require_cmg(h)
    w = _Work(h)
    ant = w.anterior_map()
    _ang_generate(w, ant, _RoleTracker(ant))
    _ang_resolve_arcs(w, ant)
    return w.to_graph()


def ang_transform(g: MixedGraph, spec: TransformSpec) -> MixedGraph:
    """Condition, marginalize, then take the anterial closure."""
    g.require_nodes(spec.m | spec.c)
    return anterialize(marginalize(condition(g, spec.c), spec.m))


# -- image classes ----------------------------------------------------------


def _collider_trislides(w: _Work):
    """Collider trislides with a multi-node section: (k, i, kind_i, j, l, kind_j)."""
    for i in sorted(w.nodes):
        for k, kind_i in w.head_flanks(i):
            for j in sorted(w.line_reach(i, frozenset((k,)))):
                if j == i:
                    continue
                for l, kind_j in w.head_flanks(j):
                    if l in (k, i, j) or k == j:
                        continue
                    if j not in w.line_reach(i, frozenset((k, l))):
                        continue
                    yield k, i, kind_i, j, l, kind_j


def in_cg_projection_class(g: MixedGraph) -> bool:
    """Membership in the image of chain graphs under projection.

    Violated by a collider trislide ``k <-> i --..-- j <- l`` without the
    arrow ``l -> i``, or ``k <-> i --..-- j <-> l`` without all three of
    the arcs ``k <-> j``, ``i <-> l``, ``i <-> j``.
    """
    _require_cmg(g)
    w = _Work(g)
    for k, i, kind_i, j, l, kind_j in _collider_trislides(w):
        if kind_i != ARC:
            continue
        if kind_j == ARROW:
            if (l, i) not in w.arrows:
                return False
        else:
            need = [(min(k, j), max(k, j)), (min(i, l), max(i, l)), (min(i, j), max(i, j))]
            if any(pair not in w.arcs for pair in need):
                return False
    return True


def in_ang_projection_class(g: MixedGraph) -> bool:
    """Membership in the image of chain graphs under the anterial pipeline.

    Same first pattern as :func:`in_cg_projection_class`; the double-arc
    trislide instead requires the ``j <-> k`` and ``i <-> l`` arcs plus a
    line ``i -- j``.
    """
    if ANG not in classify(g):
        raise NotAnAnGError("class test requires an anterial graph")
    w = _Work(g)
    for k, i, kind_i, j, l, kind_j in _collider_trislides(w):
        if kind_i != ARC:
            continue
        if kind_j == ARROW:
            if (l, i) not in w.arrows:
                return False
        else:
            if (min(k, j), max(k, j)) not in w.arcs:
                return False
            if (min(i, l), max(i, l)) not in w.arcs:
                return False
            if (min(i, j), max(i, j)) not in w.lines:
                return False
    return True


# -- edge-characterization oracles ------------------------------------------


def marginal_edge_oracle(g: MixedGraph, m: Iterable[str], i: str, j: str) -> bool:
    """Adjacency of i, j after marginalization, decided by walk search.

    True iff the post-flank-stage graph contains a walk from i to j whose
    inner nodes all lie in the marginalized set and whose inner sections
    are all non-colliders.  Must agree with :func:`marginalize`.
    """
    m = frozenset(m)
    g.require_nodes({i, j} | m)
    if i in m or j in m or i == j:
        raise UnknownNodeError(i if i in m else j)
    h = marginalize_flank_closure(g, m)
    w = _Work(h)

    def m_section(v: str) -> set[str]:
        # v plus line-reachable nodes staying inside the marginalized set
        reach = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            for nxt in w.ne[u]:
                if nxt in m and nxt not in reach:
                    reach.add(nxt)
                    stack.append(nxt)
        return reach

    def lands_on_j(section: set[str]) -> bool:
        return any(j in w.ne[u] for u in section) or j in section

    def exits(section: set[str]):
        for u in sorted(section):
            for x in sorted(w.ch[u]):
                yield x, False, True
            for x in sorted(w.pa[u]):
                yield x, True, False
            for x in sorted(w.sp[u]):
                yield x, True, True

    first = m_section(i)
    if lands_on_j(first):
        return True
    seen: set[tuple[str, bool]] = set()
    frontier: list[tuple[str, bool]] = []
    for x, head_here, head_there in exits(first):
        if x == j:
            return True
        if x in m and (x, head_there) not in seen:
            seen.add((x, head_there))
            frontier.append((x, head_there))
    while frontier:
        v, mark = frontier.pop()
        section = m_section(v)
        if lands_on_j(section):
            return True
        for x, head_here, head_there in exits(section):
            if mark and head_here:
                continue  # inner sections must be non-colliders
            if x == j:
                return True
            if x in m and (x, head_there) not in seen:
                seen.add((x, head_there))
                frontier.append((x, head_there))
    return False


def conditional_edge_oracle(g: MixedGraph, c: Iterable[str], i: str, j: str) -> bool:
    """Adjacency of i, j after conditioning, decided by walk search in ``g``.

    True iff g has a walk between i and j whose inner sections are all
    colliders inside S = C plus anteriors, with singleton endpoint
    sections unless the endpoint has an arc into S and the flanking edge
    points into its section.  Direct edges always survive.  Must agree
    with :func:`condition`.
    """
    c = frozenset(c)
    g.require_nodes({i, j} | c)
    if i in c or j in c or i == j:
        raise UnknownNodeError(i if i in c else j)
    if g.adjacent(i, j):
        return True
    s_set = c | anteriors(g, c)
    w = _Work(g)

    def arc_into_s(v: str) -> bool:
        return any(x in s_set for x in w.sp[v])

    def entries_from(v: str, wide: bool):
        # singleton start section, plus the widened section when allowed
        for x in sorted(w.ch[v]):
            yield x, True
        for x in sorted(w.pa[v]):
            yield x, False
        for x in sorted(w.sp[v]):
            yield x, True
        if wide:
            for far in sorted(w.line_reach(v)):
                if far == v:
                    continue
                for x in sorted(w.pa[far]):
                    yield x, False
                for x in sorted(w.sp[far]):
                    yield x, True

    seen: set[tuple[str, bool]] = set()
    frontier: list[tuple[str, bool]] = []
    for x, mark in entries_from(i, arc_into_s(i)):
        if (x, mark) not in seen:
            seen.add((x, mark))
            frontier.append((x, mark))
    j_wide = arc_into_s(j)
    while frontier:
        v, mark = frontier.pop()
        if v == j:
            return True
        if j_wide and mark and j in w.line_reach(v):
            return True
        if not mark or v not in s_set:
            continue  # inner sections are colliders inside S
        for far in sorted(w.line_reach(v)):
            for x in sorted(w.pa[far]):
                if (x, False) not in seen:
                    seen.add((x, False))
                    frontier.append((x, False))
            for x in sorted(w.sp[far]):
                if (x, True) not in seen:
                    seen.add((x, True))
                    frontier.append((x, True))
    return False


def subprimitive_walk_exists(h: MixedGraph, j: str, i: str) -> bool:
    """Inducing-walk test behind the anterial closure's adjacencies.

    True iff ``h`` has a walk from j to i with singleton endpoint
    sections whose inner sections are all colliders lying inside the
    anteriors of i (i itself allowed).  Direct edges count.  Adjacency in
    :func:`anterialize` equals this test in one direction or the other.
    """
    h.require_nodes({i, j})
    if i == j:
        return False
    if h.adjacent(i, j):
        return True
    w = _Work(h)
    allowed = w.anterior_map()[i] | {i}

    seen: set[tuple[str, bool]] = set()
    frontier: list[tuple[str, bool]] = []
    for x in sorted(w.ch[j]):
        frontier.append((x, True))
    for x in sorted(w.pa[j]):
        frontier.append((x, False))
    for x in sorted(w.sp[j]):
        frontier.append((x, True))
    seen = set(frontier)
    while frontier:
        v, mark = frontier.pop()
        if v == i:
            return True
        if not mark or v not in allowed:
            continue
        for far in sorted(w.line_reach(v)):
            if far not in allowed:
                continue
            for x in sorted(w.pa[far]):
                if (x, False) not in seen:
                    seen.add((x, False))
                    frontier.append((x, False))
            for x in sorted(w.sp[far]):
                if (x, True) not in seen:
                    seen.add((x, True))
                    frontier.append((x, True))
    return False
