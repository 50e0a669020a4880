# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled minimal-window kernel.

Same contract and output as _scan_py.scan, including the visit count;
the two are differential-tested against each other.
"""

from libc.stdlib cimport calloc, free


def scan(int n, long long[::1] occ_data, long long[::1] occ_off,
         int[::1] adj_data, int[::1] adj_off, long long window,
         int first=0):
    cdef long long *f
    cdef long long *b
    cdef long long *cur
    cdef char *in_q
    cdef int *queue
    cdef int qhead = 0, qtail = 0, qlen = 0
    cdef int v, w, vmin, k
    cdef long long i, end, bound, fv, fmin, fmax, visits = 0
    starts = []
    ends = []
    if n <= 0:
        return starts, ends, 0
    f = <long long *> calloc(n, sizeof(long long))
    b = <long long *> calloc(n, sizeof(long long))
    cur = <long long *> calloc(n, sizeof(long long))
    in_q = <char *> calloc(n, sizeof(char))
    queue = <int *> calloc(n, sizeof(int))
    if f == NULL or b == NULL or cur == NULL or in_q == NULL or queue == NULL:
        free(f); free(b); free(cur); free(in_q); free(queue)
        raise MemoryError()
    try:
        for v in range(n):
            cur[v] = occ_off[v]
            queue[qtail] = v
            qtail = (qtail + 1) % n
            qlen += 1
            in_q[v] = 1
        while True:
            while qlen > 0:
                v = queue[qhead]
                qhead = (qhead + 1) % n
                qlen -= 1
                in_q[v] = 0
                i = cur[v]
                end = occ_off[v + 1]
                bound = b[v]
                while i < end and occ_data[i] <= bound:
                    i += 1
                    visits += 1
                cur[v] = i
                if i == end:
                    return starts, ends, visits
                fv = occ_data[i]
                f[v] = fv
                for k in range(adj_off[v], adj_off[v + 1]):
                    w = adj_data[k]
                    if fv > b[w]:
                        b[w] = fv
                        if fv >= f[w] and not in_q[w]:
                            queue[qtail] = w
                            qtail = (qtail + 1) % n
                            qlen += 1
                            in_q[w] = 1
            fmin = f[0]
            fmax = f[0]
            vmin = 0
            for v in range(1, n):
                if f[v] < fmin:
                    fmin = f[v]
                    vmin = v
                elif f[v] > fmax:
                    fmax = f[v]
            if fmax - fmin < window:
                if ends and ends[len(ends) - 1] == fmax:
                    starts.pop()
                    ends.pop()
                starts.append(fmin)
                ends.append(fmax)
                if first:
                    return starts, ends, visits
            b[vmin] = fmin
            queue[qtail] = vmin
            qtail = (qtail + 1) % n
            qlen += 1
            in_q[vmin] = 1
    finally:
        free(f)
        free(b)
        free(cur)
        free(in_q)
        free(queue)
