"""Pure-Python twin of the compiled search kernel.

Both kernels implement the same contract and must stay in lockstep: the
test suite asserts identical witnesses and identical explored counts on
random inputs.  Keep any behavioural change mirrored in ``_search.pyx``.
"""

COMPILED = False


def breadth_first_witness(tables, initials, finals, deads, max_len=-1):
    """Shortest-string search over the synchronous product of DFA tables.

    tables   -- one transition table per DFA, indexable as table[state][symbol]
    initials -- start state per DFA
    finals   -- per-DFA boolean final mask, indexable as finals[i][state]
    deads    -- per-DFA boolean mask of absorbing non-final states; any
                product state with a dead component can never accept and is
                pruned at generation time
    max_len  -- do not explore strings longer than this; -1 means unbounded

    Explores breadth-first with symbols in index order, so the returned
    witness is the length-then-lexicographically smallest accepted string.
    Returns ``(symbol index list or None, number of product states visited)``.
    """
    rows = [t.tolist() if hasattr(t, "tolist") else t for t in tables]
    n_symbols = len(rows[0][0]) if rows[0] else 0
    k = len(rows)
    span = range(k)

    start = tuple(initials)
    visited = {start}
    order = [start]
    parent = [-1]
    psym = [-1]
    depth = [0]
    if all(finals[i][start[i]] for i in span):
        return [], 1

    head = 0
    while head < len(order):
        state = order[head]
        d = depth[head]
        if (max_len >= 0 and d >= max_len) or any(deads[i][state[i]] for i in span):
            head += 1
            continue
        for c in range(n_symbols):
            nxt = tuple(rows[i][state[i]][c] for i in span)
            if nxt in visited:
                continue
            if any(deads[i][nxt[i]] for i in span):
                continue
            visited.add(nxt)
            order.append(nxt)
            parent.append(head)
            psym.append(c)
            depth.append(d + 1)
            if all(finals[i][nxt[i]] for i in span):
                out = []
                at = len(order) - 1
                while at > 0:
                    out.append(psym[at])
                    at = parent[at]
                out.reverse()
                return out, len(order)
        head += 1
    return None, len(order)
