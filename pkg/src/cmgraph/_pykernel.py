"""Pure-Python bitmask kernel for c-separation reachability.

States are (node, mark) pairs: mark "head" means the current section was
entered through an edge with an arrowhead at the entry node.  From a
state the walk either exits the section as a non-collider (section must
avoid the conditioning set) or as a collider (section must be entered
with an arrowhead, leave through an arrowhead, and its line component
must touch the conditioning set; walks may detour inside the component
to pick the node up).  Endpoint sections are never colliders, so the
start states carry the tail mark and acceptance requires reaching a
target through lines avoiding the conditioning set.

Node sets are bitmasks; Python integers make this work for any node
count.  The compiled backend in ``_csep`` mirrors this module exactly.
"""

from __future__ import annotations


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _line_reach(ln: list[int], start: int, blocked: int) -> int:
    reach = start
    frontier = start
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= ln[v]
        frontier = nxt & ~blocked & ~reach
        reach |= frontier
    return reach


def separated(
    n: int,
    ln: list[int],
    pa: list[int],
    ch: list[int],
    sp: list[int],
    amask: int,
    bmask: int,
    cmask: int,
) -> bool:
    """True iff no c-connecting walk joins ``amask`` and ``bmask`` given ``cmask``."""
    if amask == 0 or bmask == 0:
        return True
    seen_tail = amask
    seen_head = 0
    pend_tail = amask
    pend_head = 0
    while pend_tail or pend_head:
        if pend_tail:
            low = pend_tail & -pend_tail
            pend_tail ^= low
            v, head = low.bit_length() - 1, False
        else:
            low = pend_head & -pend_head
            pend_head ^= low
            v, head = low.bit_length() - 1, True
        vbit = 1 << v
        add_tail = 0
        add_head = 0
        if not vbit & cmask:
            # non-collider exit: the section avoids C entirely
            reach = _line_reach(ln, vbit, cmask)
            if reach & bmask:
                return False
            for w in _bits(reach):
                add_head |= ch[w]
                if not head:
                    add_tail |= pa[w]
                    add_head |= sp[w]
        if head:
            # collider exit: the walk may wander the whole line component
            comp = _line_reach(ln, vbit, 0)
            if comp & cmask:
                for w in _bits(comp):
                    add_tail |= pa[w]
                    add_head |= sp[w]
        new_tail = add_tail & ~seen_tail
        new_head = add_head & ~seen_head
        seen_tail |= new_tail
        seen_head |= new_head
        pend_tail |= new_tail
        pend_head |= new_head
    return True


def _submasks_ascending(domain: int):
    s = 0
    while True:
        yield s
        s = (s - domain) & domain
        if s == 0:
            return


def all_pair_separations(
    n: int, ln: list[int], pa: list[int], ch: list[int], sp: list[int]
) -> list[tuple[int, int, int]]:
    """All (i, j, cmask) with i < j separated given cmask."""
    full = (1 << n) - 1
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            domain = full & ~(1 << i) & ~(1 << j)
            for cmask in _submasks_ascending(domain):
                if separated(n, ln, pa, ch, sp, 1 << i, 1 << j, cmask):
                    out.append((i, j, cmask))
    return out


def exists_separator(
    n: int, ln: list[int], pa: list[int], ch: list[int], sp: list[int], i: int, j: int
) -> int:
    """Smallest-by-enumeration cmask separating i and j, or -1."""
    full = (1 << n) - 1
    domain = full & ~(1 << i) & ~(1 << j)
    for cmask in _submasks_ascending(domain):
        if separated(n, ln, pa, ch, sp, 1 << i, 1 << j, cmask):
            return cmask
    return -1
