"""Pure-Python chain kernels on candidate indices.

Candidates are referred to by their stream index; ``-1`` marks an empty
slot. Equal pT is resolved in favour of the lower index, matching the
record-level cells.
"""

EMPTY = -1


def _above(a, b, pts):
    pa, pb = pts[a], pts[b]
    return pa > pb or (pa == pb and a < b)


def _cell(curr, block, pts):
    head = block[0]
    if head == EMPTY:
        return curr, block
    if curr == EMPTY:
        return head, block[1:] + [EMPTY]
    if not _above(head, curr, pts):
        return curr, block
    tail = block[1:]
    pos = 0
    for t in tail:
        if t == EMPTY or not _above(t, curr, pts):
            break
        pos += 1
    return head, tail[:pos] + [curr] + tail[pos:]


def _beats(a, b, pts):
    if b == EMPTY:
        return True
    return a != EMPTY and _above(a, b, pts)


def _pair(regs, block, pts):
    out = []
    i = j = 0
    while len(out) < 6:
        if i < 2 and (j >= 4 or _beats(regs[i], block[j], pts)):
            out.append(regs[i])
            i += 1
        else:
            out.append(block[j])
            j += 1
    return out[:2], out[2:]


def _run(pts, n_cells, init, step):
    n = len(pts)
    if n % 4:
        raise ValueError("candidate count must be a multiple of 4")
    state = [init() for _ in range(n_cells)]
    blocks = [list(range(b, b + 4)) for b in range(0, n, 4)]
    regs = [None] * (n_cells + 2)
    fed = 0
    cycles = 0
    while fed < len(blocks) or any(r is not None for r in regs[:-1]):
        nxt = [None] * (n_cells + 2)
        for i in range(n_cells):
            blk = regs[i + 1]
            if blk is not None:
                state[i], nxt[i + 2] = step(state[i], blk, pts)
        nxt[1] = regs[0]
        if fed < len(blocks):
            nxt[0] = blocks[fed]
            fed += 1
        regs = nxt
        cycles += 1
    return state, cycles


def chain_select(pts, n_cells):
    pts = list(pts)
    state, cycles = _run(pts, n_cells, lambda: EMPTY, _cell)
    return state, cycles


def pair_chain_select(pts, n_cells):
    pts = list(pts)
    state, cycles = _run(pts, n_cells, lambda: [EMPTY, EMPTY], _pair)
    return [i for regs in state for i in regs], cycles
