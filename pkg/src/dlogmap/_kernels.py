"""Compiled inner loops. Nodes are 1-based in tables, 0-based inside the kernels.

Scratch buffers are int32 (p <= 2**31 - 1); sums are widened to int64.
"""

import numpy as np
from numba import njit

# Column order of the int64 stats vectors produced below.
STAT_FIELDS = (
    "n",
    "components",
    "cyclic_nodes",
    "image_nodes",
    "terminal_nodes",
    "tail_nodes",
    "fixed_points",
    "sum_cycle_over_nodes",
    "sum_tail_over_nodes",
    "max_cycle",
    "max_tail",
)
NSTATS = len(STAT_FIELDS)


@njit(cache=True)
def fill_powers(g, p, out):
    x = g % p
    for i in range(out.shape[0]):
        out[i] = x
        x = (x * g) % p


@njit(cache=True)
def analyze_into(nxt, out, indeg, order, comp, depth, cyc_len, comp_size):
    n = nxt.shape[0]
    for i in range(n):
        indeg[i] = 0
    for i in range(n):
        indeg[nxt[i] - 1] += 1

    image = 0
    fixed = 0
    tail = 0
    for i in range(n):
        if indeg[i] > 0:
            image += 1
        else:
            order[tail] = i
            tail += 1
        if nxt[i] - 1 == i:
            fixed += 1

    # peel terminal nodes; whatever keeps positive in-degree is cyclic
    head = 0
    while head < tail:
        y = nxt[order[head]] - 1
        head += 1
        indeg[y] -= 1
        if indeg[y] == 0:
            order[tail] = y
            tail += 1
    n_tail = tail

    for i in range(n):
        comp[i] = -1
    ncomp = 0
    max_cycle = 0
    for i in range(n):
        if indeg[i] > 0 and comp[i] < 0:
            length = 0
            x = i
            while comp[x] < 0:
                comp[x] = ncomp
                depth[x] = 0
                length += 1
                x = nxt[x] - 1
            cyc_len[ncomp] = length
            comp_size[ncomp] = length
            if length > max_cycle:
                max_cycle = length
            ncomp += 1

    # reverse peel order visits every successor before its predecessors
    sum_tail = 0
    max_tail = 0
    for k in range(n_tail - 1, -1, -1):
        x = order[k]
        y = nxt[x] - 1
        d = depth[y] + 1
        depth[x] = d
        c = comp[y]
        comp[x] = c
        comp_size[c] += 1
        sum_tail += np.int64(d)
        if d > max_tail:
            max_tail = d

    sum_cycle = 0
    for c in range(ncomp):
        sum_cycle += np.int64(cyc_len[c]) * np.int64(comp_size[c])

    out[0] = n
    out[1] = ncomp
    out[2] = n - n_tail
    out[3] = image
    out[4] = n - image
    out[5] = n_tail
    out[6] = fixed
    out[7] = sum_cycle
    out[8] = sum_tail
    out[9] = max_cycle
    out[10] = max_tail


@njit(cache=True)
def analyze_rows(tables, out):
    n = tables.shape[1]
    indeg = np.empty(n, np.int32)
    order = np.empty(n, np.int32)
    comp = np.empty(n, np.int32)
    depth = np.empty(n, np.int32)
    cyc_len = np.empty(n, np.int32)
    comp_size = np.empty(n, np.int32)
    for r in range(tables.shape[0]):
        analyze_into(tables[r], out[r], indeg, order, comp, depth, cyc_len, comp_size)


@njit(cache=True)
def sweep_rows(p, gs, out):
    n = p - 1
    nxt = np.empty(n, np.int32)
    indeg = np.empty(n, np.int32)
    order = np.empty(n, np.int32)
    comp = np.empty(n, np.int32)
    depth = np.empty(n, np.int32)
    cyc_len = np.empty(n, np.int32)
    comp_size = np.empty(n, np.int32)
    for r in range(gs.shape[0]):
        fill_powers(gs[r], p, nxt)
        analyze_into(nxt, out[r], indeg, order, comp, depth, cyc_len, comp_size)
