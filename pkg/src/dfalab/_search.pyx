# cython: language_level=3
"""Compiled search kernel: breadth-first shortest-witness search over the
synchronous product of DFA transition tables.

Contract-identical to ``_search_py.breadth_first_witness``; the test suite
cross-checks both on random inputs.  The hot loop (component transitions,
dead pruning, final detection) runs in C; deduplication uses a Python set
keyed on the packed component vector.
"""

import numpy as np

COMPILED = True


def breadth_first_witness(tables, initials, finals, deads, long max_len=-1):
    cdef Py_ssize_t k = len(tables)
    cdef Py_ssize_t a = np.asarray(tables[0]).shape[1]

    # Flatten the per-DFA tables and masks into single contiguous buffers.
    cdef list blocks = []
    cdef list state_counts = []
    for t in tables:
        arr = np.ascontiguousarray(np.asarray(t, dtype=np.int32))
        state_counts.append(arr.shape[0])
        blocks.append(arr.reshape(-1))
    flat_np = np.concatenate(blocks) if blocks else np.zeros(0, dtype=np.int32)
    cdef const int[::1] trans = flat_np

    cdef long[::1] tab_off = np.zeros(k, dtype=np.int64)
    cdef long[::1] st_off = np.zeros(k, dtype=np.int64)
    cdef Py_ssize_t i
    cdef long acc_t = 0, acc_s = 0
    for i in range(k):
        tab_off[i] = acc_t
        st_off[i] = acc_s
        acc_t += state_counts[i] * a
        acc_s += state_counts[i]

    fin_np = np.concatenate([np.asarray(mask, dtype=np.uint8) for mask in finals])
    ded_np = np.concatenate([np.asarray(mask, dtype=np.uint8) for mask in deads])
    cdef const unsigned char[::1] fin = fin_np
    cdef const unsigned char[::1] ded = ded_np

    cur_np = np.zeros(k, dtype=np.int32)
    nxt_np = np.zeros(k, dtype=np.int32)
    cdef int[::1] cur = cur_np
    cdef int[::1] nxt = nxt_np

    for i in range(k):
        cur[i] = initials[i]

    cdef bint ok = True
    for i in range(k):
        if not fin[st_off[i] + cur[i]]:
            ok = False
            break
    if ok:
        return [], 1

    # The visited list doubles as the BFS queue (children are appended in
    # discovery order, which is breadth-first, symbol-index order).
    cdef set visited = set()
    cdef list order = []
    cdef list parent = []
    cdef list psym = []
    cdef list depth = []
    key = cur_np.tobytes()
    visited.add(key)
    order.append(key)
    parent.append(-1)
    psym.append(-1)
    depth.append(0)

    cdef Py_ssize_t head = 0
    cdef Py_ssize_t c
    cdef long d
    cdef int ns
    cdef bint dead_component, all_final
    cdef const int[::1] unpacked

    while head < len(order):
        d = depth[head]
        if max_len >= 0 and d >= max_len:
            head += 1
            continue
        unpacked = np.frombuffer(order[head], dtype=np.int32)
        dead_component = False
        for i in range(k):
            cur[i] = unpacked[i]
            if ded[st_off[i] + cur[i]]:
                dead_component = True
        if dead_component:
            head += 1
            continue
        for c in range(a):
            dead_component = False
            all_final = True
            for i in range(k):
                ns = trans[tab_off[i] + cur[i] * a + c]
                nxt[i] = ns
                if ded[st_off[i] + ns]:
                    dead_component = True
                    break
                if not fin[st_off[i] + ns]:
                    all_final = False
            if dead_component:
                continue
            key = nxt_np.tobytes()
            if key in visited:
                continue
            visited.add(key)
            order.append(key)
            parent.append(head)
            psym.append(c)
            depth.append(d + 1)
            if all_final:
                out = []
                at = len(order) - 1
                while at > 0:
                    out.append(psym[at])
                    at = parent[at]
                out.reverse()
                return out, len(order)
        head += 1
    return None, len(order)
