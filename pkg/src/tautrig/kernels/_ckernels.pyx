# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled chain kernels; same contract as ``_pykernels``."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

DEF EMPTY = -1


cdef inline bint _above(long a, long b, const long* pts) noexcept nogil:
    return pts[a] > pts[b] or (pts[a] == pts[b] and a < b)


cdef inline bint _beats(long a, long b, const long* pts) noexcept nogil:
    if b == EMPTY:
        return True
    return a != EMPTY and _above(a, b, pts)


cdef void _cell(long* curr, Py_ssize_t c, const long* blk, long* out,
                const long* pts) noexcept nogil:
    cdef long head = blk[0]
    cdef long cur = curr[c]
    cdef Py_ssize_t k, pos
    if head == EMPTY:
        for k in range(4):
            out[k] = blk[k]
        return
    if cur == EMPTY:
        curr[c] = head
        for k in range(3):
            out[k] = blk[k + 1]
        out[3] = EMPTY
        return
    if not _above(head, cur, pts):
        for k in range(4):
            out[k] = blk[k]
        return
    pos = 0
    while pos < 3 and blk[pos + 1] != EMPTY and _above(blk[pos + 1], cur, pts):
        out[pos] = blk[pos + 1]
        pos += 1
    out[pos] = cur
    for k in range(pos, 3):
        out[k + 1] = blk[k + 1]
    curr[c] = head


cdef void _pair(long* regs, Py_ssize_t c, const long* blk, long* out,
                const long* pts) noexcept nogil:
    cdef long merged[6]
    cdef Py_ssize_t i = 0, j = 0, k
    cdef long r0 = regs[2 * c], r1 = regs[2 * c + 1]
    cdef long a
    for k in range(6):
        a = r0 if i == 0 else r1
        if i < 2 and (j >= 4 or _beats(a, blk[j], pts)):
            merged[k] = a
            i += 1
        else:
            merged[k] = blk[j]
            j += 1
    regs[2 * c] = merged[0]
    regs[2 * c + 1] = merged[1]
    for k in range(4):
        out[k] = merged[k + 2]


cdef long _run(const long[::1] pts, Py_ssize_t n_cells, long[::1] state, bint pair):
    cdef Py_ssize_t n = pts.shape[0]
    cdef Py_ssize_t n_blocks = n // 4
    cdef Py_ssize_t depth = n_cells + 2
    if n_blocks == 0:
        return 0
    cdef long[:, ::1] regs = np.full((depth, 4), EMPTY, dtype=np.int_)
    cdef long[:, ::1] nxt = np.full((depth, 4), EMPTY, dtype=np.int_)
    cdef long[:, ::1] tmp
    cdef cnp.uint8_t[::1] valid = np.zeros(depth, dtype=np.uint8)
    cdef cnp.uint8_t[::1] nvalid = np.zeros(depth, dtype=np.uint8)
    cdef cnp.uint8_t[::1] vtmp
    cdef Py_ssize_t fed = 0, i, k
    cdef long cycles = 0
    cdef bint busy
    with nogil:
        while True:
            busy = fed < n_blocks
            for i in range(depth - 1):
                if valid[i]:
                    busy = True
                    break
            if not busy:
                break
            for i in range(depth):
                nvalid[i] = 0
            for i in range(n_cells):
                if valid[i + 1]:
                    if pair:
                        _pair(&state[0], i, &regs[i + 1, 0], &nxt[i + 2, 0], &pts[0])
                    else:
                        _cell(&state[0], i, &regs[i + 1, 0], &nxt[i + 2, 0], &pts[0])
                    nvalid[i + 2] = 1
            if valid[0]:
                for k in range(4):
                    nxt[1, k] = regs[0, k]
                nvalid[1] = 1
            if fed < n_blocks:
                for k in range(4):
                    nxt[0, k] = fed * 4 + k
                nvalid[0] = 1
                fed += 1
            tmp = regs
            regs = nxt
            nxt = tmp
            vtmp = valid
            valid = nvalid
            nvalid = vtmp
            cycles += 1
    return cycles


def _prepare(pts):
    arr = np.ascontiguousarray(pts, dtype=np.int_)
    if arr.shape[0] % 4:
        raise ValueError("candidate count must be a multiple of 4")
    return arr


def chain_select(pts, Py_ssize_t n_cells):
    arr = _prepare(pts)
    state = np.full(n_cells, EMPTY, dtype=np.int_)
    cycles = _run(arr, n_cells, state, False)
    return state.tolist(), int(cycles)


def pair_chain_select(pts, Py_ssize_t n_cells):
    arr = _prepare(pts)
    state = np.full(2 * n_cells, EMPTY, dtype=np.int_)
    cycles = _run(arr, n_cells, state, True)
    return state.tolist(), int(cycles)
