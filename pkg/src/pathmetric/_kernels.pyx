# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels; see ``_kernels_py.py`` for the reference semantics."""

from math import gcd

from libc.stdlib cimport malloc, free


def pivot_tableau(list rows, list dens, Py_ssize_t r, Py_ssize_t c):
    cdef list row = rows[r]
    cdef list new, ri, out
    cdef Py_ssize_t i, j
    cdef Py_ssize_t k = len(row)
    cdef Py_ssize_t m = len(rows)
    cdef object E, g, Rc, f, d, x, y
    cdef list touched = []

    E = row[c]
    new = [-x for x in row]
    new[c] = dens[r]
    if E < 0:
        E = -E
        for j in range(k):
            new[j] = -new[j]
    g = gcd(E, *new)
    if g > 1:
        for j in range(k):
            new[j] = new[j] // g
        E = E // g
    rows[r] = new
    dens[r] = E
    Rc = new[c]
    for i in range(m):
        if i == r:
            continue
        ri = <list>rows[i]
        f = ri[c]
        if not f:
            continue
        out = [0] * k
        for j in range(k):
            x = ri[j]
            y = new[j]
            if x:
                if y:
                    out[j] = x * E + f * y
                else:
                    out[j] = x * E
            elif y:
                out[j] = f * y
        out[c] = f * Rc
        d = dens[i] * E
        g = gcd(d, *out)
        if g > 1:
            for j in range(k):
                x = out[j]
                if x:
                    out[j] = x // g
            d = d // g
        rows[i] = out
        dens[i] = d
        touched.append(i)
    return touched


def cyclic_bfs(Py_ssize_t n, gens):
    cdef Py_ssize_t *dist = <Py_ssize_t *> malloc(n * sizeof(Py_ssize_t))
    cdef Py_ssize_t *queue = <Py_ssize_t *> malloc(n * sizeof(Py_ssize_t))
    cdef Py_ssize_t *steps
    cdef Py_ssize_t head = 0, tail = 0, x, y, dx, s, ns, i
    cdef list out
    step_list = sorted({g % n for g in gens} - {0})
    ns = len(step_list)
    steps = <Py_ssize_t *> malloc((ns + 1) * sizeof(Py_ssize_t))
    if dist == NULL or queue == NULL or steps == NULL:
        free(dist); free(queue); free(steps)
        raise MemoryError()
    try:
        for i in range(ns):
            steps[i] = step_list[i]
        for i in range(n):
            dist[i] = -1
        dist[0] = 0
        queue[tail] = 0
        tail += 1
        while head < tail:
            x = queue[head]
            head += 1
            dx = dist[x] + 1
            for s in range(ns):
                y = x + steps[s]
                if y >= n:
                    y -= n
                if dist[y] < 0:
                    dist[y] = dx
                    queue[tail] = y
                    tail += 1
        out = [dist[i] for i in range(n)]
    finally:
        free(dist)
        free(queue)
        free(steps)
    return out
