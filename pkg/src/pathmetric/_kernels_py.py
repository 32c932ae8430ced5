"""Pure-Python kernels.  Behaviour must match ``_kernels.pyx`` exactly."""

from collections import deque
from math import gcd


def pivot_tableau(rows, dens, r, c):
    """Fraction-free pivot of an integer tableau, in place.

    Row ``i`` encodes ``basic_i = sum_j rows[i][j] * nonbasic_j / dens[i]``.
    Afterwards row ``r`` expresses the former column-``c`` variable, and
    column ``c`` holds the former row-``r`` variable.  Every touched row is
    reduced by the gcd of its entries and denominator.  Returns the indices
    of the other rows that were rewritten.
    """
    row = rows[r]
    E = row[c]
    new = [-x for x in row]
    new[c] = dens[r]
    if E < 0:
        E = -E
        new = [-x for x in new]
    g = gcd(E, *new)
    if g > 1:
        new = [x // g for x in new]
        E //= g
    rows[r] = new
    dens[r] = E
    Rc = new[c]
    touched = []
    for i in range(len(rows)):
        if i == r:
            continue
        ri = rows[i]
        f = ri[c]
        if not f:
            continue
        out = [(x * E if x else 0) + (f * y if y else 0) for x, y in zip(ri, new)]
        out[c] = f * Rc
        d = dens[i] * E
        g = gcd(d, *out)
        if g > 1:
            out = [x // g for x in out]
            d //= g
        rows[i] = out
        dens[i] = d
        touched.append(i)
    return touched


def cyclic_bfs(n, gens):
    """Hop distances from 0 in the Cayley graph of Z_n; -1 if unreachable."""
    dist = [-1] * n
    dist[0] = 0
    steps = sorted({g % n for g in gens} - {0})
    queue = deque([0])
    while queue:
        x = queue.popleft()
        dx = dist[x] + 1
        for g in steps:
            y = x + g
            if y >= n:
                y -= n
            if dist[y] < 0:
                dist[y] = dx
                queue.append(y)
    return dist
