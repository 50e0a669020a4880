"""Pure Python minimal-window kernel.

Fallback for the compiled kernel in _scan_cy; epimine.scanner selects
whichever imports. Both consume the same flattened occurrence and
adjacency tables and must produce identical output, including the
visit count.
"""

from collections import deque
from heapq import heappop, heappush


def scan(n, occ_data, occ_off, adj_data, adj_off, window, first=False):
    """Worklist search for minimal windows.

    Per-node occurrence positions (1-based, strictly increasing) live in
    occ_data[occ_off[v]:occ_off[v+1]]; outgoing skeleton-edge targets in
    adj_data[adj_off[v]:adj_off[v+1]]. Returns (starts, ends, visits)
    where visits counts occurrence-cursor advances. With ``first`` the
    search stops at the first reported window (emptiness probes).

    The search keeps, per node, a binding f (0 = unbound) and a lower
    bound b, and drains a queue until every binding exceeds its bound
    and honors the skeleton edges; each drained state is the greedy
    cover of a suffix. A window is reported when its width is within
    ``window``, replacing a previous report with the same end. The
    earliest-bound node is then advanced and the drain repeats, until
    some node runs out of occurrences.
    """
    occ = list(occ_data)
    off = list(occ_off)
    adj = [list(adj_data[adj_off[v]:adj_off[v + 1]]) for v in range(n)]
    cur = [off[v] for v in range(n)]
    f = [0] * n
    b = [0] * n
    in_q = [True] * n
    q = deque(range(n))
    heap = []  # (binding, node); stale entries skipped lazily
    starts = []
    ends = []
    visits = 0
    while True:
        while q:
            v = q.popleft()
            in_q[v] = False
            i = cur[v]
            end = off[v + 1]
            bound = b[v]
            while i < end and occ[i] <= bound:
                i += 1
                visits += 1
            cur[v] = i
            if i == end:
                return starts, ends, visits
            fv = occ[i]
            if fv != f[v]:
                f[v] = fv
                heappush(heap, (fv, v))
            for w in adj[v]:
                if fv > b[w]:
                    b[w] = fv
                    if fv >= f[w] and not in_q[w]:
                        q.append(w)
                        in_q[w] = True
        while heap and heap[0][0] != f[heap[0][1]]:
            heappop(heap)
        fmin, vmin = heap[0]
        fmax = max(f)
        if fmax - fmin < window:
            if ends and ends[-1] == fmax:
                starts.pop()
                ends.pop()
            starts.append(fmin)
            ends.append(fmax)
            if first:
                return starts, ends, visits
        b[vmin] = fmin
        q.append(vmin)
        in_q[vmin] = True
