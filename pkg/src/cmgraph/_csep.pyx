# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled bitmask kernel for c-separation reachability.

Same state machine as ``_pykernel``; restricted to graphs with at most
63 nodes so node sets fit a machine word.
"""

from libc.stdint cimport uint64_t


cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


cdef inline uint64_t _line_reach(uint64_t* ln, uint64_t start, uint64_t blocked) noexcept nogil:
    cdef uint64_t reach = start
    cdef uint64_t frontier = start
    cdef uint64_t nxt, m
    cdef int v
    while frontier:
        nxt = 0
        m = frontier
        while m:
            v = __builtin_ctzll(m)
            m &= m - 1
            nxt |= ln[v]
        frontier = nxt & ~blocked & ~reach
        reach |= frontier
    return reach


cdef bint _separated(int n, uint64_t* ln, uint64_t* pa, uint64_t* ch, uint64_t* sp,
                     uint64_t amask, uint64_t bmask, uint64_t cmask) noexcept nogil:
    cdef uint64_t seen_tail = amask
    cdef uint64_t seen_head = 0
    cdef uint64_t pend_tail = amask
    cdef uint64_t pend_head = 0
    cdef uint64_t vbit, reach, comp, add_tail, add_head, m, new_tail, new_head
    cdef int v
    cdef bint head
    if amask == 0 or bmask == 0:
        return True
    while pend_tail | pend_head:
        if pend_tail:
            v = __builtin_ctzll(pend_tail)
            pend_tail &= pend_tail - 1
            head = False
        else:
            v = __builtin_ctzll(pend_head)
            pend_head &= pend_head - 1
            head = True
        vbit = (<uint64_t>1) << v
        add_tail = 0
        add_head = 0
        if not (vbit & cmask):
            reach = _line_reach(ln, vbit, cmask)
            if reach & bmask:
                return False
            m = reach
            while m:
                v = __builtin_ctzll(m)
                m &= m - 1
                add_head |= ch[v]
                if not head:
                    add_tail |= pa[v]
                    add_head |= sp[v]
        if head:
            comp = _line_reach(ln, vbit, 0)
            if comp & cmask:
                m = comp
                while m:
                    v = __builtin_ctzll(m)
                    m &= m - 1
                    add_tail |= pa[v]
                    add_head |= sp[v]
        new_tail = add_tail & ~seen_tail
        new_head = add_head & ~seen_head
        seen_tail |= new_tail
        seen_head |= new_head
        pend_tail |= new_tail
        pend_head |= new_head
    return True


cdef int _fill(uint64_t* dst, list src) except -1:
    cdef int i
    for i in range(len(src)):
        dst[i] = <uint64_t>src[i]
    return 0


def separated(int n, list ln, list pa, list ch, list sp,
              amask, bmask, cmask):
    cdef uint64_t lnb[64]
    cdef uint64_t pab[64]
    cdef uint64_t chb[64]
    cdef uint64_t spb[64]
    if n > 63:
        raise ValueError("compiled kernel supports at most 63 nodes")
    _fill(lnb, ln)
    _fill(pab, pa)
    _fill(chb, ch)
    _fill(spb, sp)
    return _separated(n, lnb, pab, chb, spb,
                      <uint64_t>amask, <uint64_t>bmask, <uint64_t>cmask)


def all_pair_separations(int n, list ln, list pa, list ch, list sp):
    cdef uint64_t lnb[64]
    cdef uint64_t pab[64]
    cdef uint64_t chb[64]
    cdef uint64_t spb[64]
    cdef uint64_t full, domain, cmask
    cdef int i, j
    if n > 63:
        raise ValueError("compiled kernel supports at most 63 nodes")
    _fill(lnb, ln)
    _fill(pab, pa)
    _fill(chb, ch)
    _fill(spb, sp)
    full = ((<uint64_t>1) << n) - 1
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            domain = full & ~((<uint64_t>1) << i) & ~((<uint64_t>1) << j)
            cmask = 0
            while True:
                if _separated(n, lnb, pab, chb, spb,
                              (<uint64_t>1) << i, (<uint64_t>1) << j, cmask):
                    out.append((i, j, <object>cmask))
                cmask = (cmask - domain) & domain
                if cmask == 0:
                    break
    return out


def exists_separator(int n, list ln, list pa, list ch, list sp, int i, int j):
    cdef uint64_t lnb[64]
    cdef uint64_t pab[64]
    cdef uint64_t chb[64]
    cdef uint64_t spb[64]
    cdef uint64_t full, domain, cmask
    if n > 63:
        raise ValueError("compiled kernel supports at most 63 nodes")
    _fill(lnb, ln)
    _fill(pab, pa)
    _fill(chb, ch)
    _fill(spb, sp)
    full = ((<uint64_t>1) << n) - 1
    domain = full & ~((<uint64_t>1) << i) & ~((<uint64_t>1) << j)
    cmask = 0
    while True:
        if _separated(n, lnb, pab, chb, spb,
                      (<uint64_t>1) << i, (<uint64_t>1) << j, cmask):
            return <object>cmask
        cmask = (cmask - domain) & domain
        if cmask == 0:
            break
    return -1
