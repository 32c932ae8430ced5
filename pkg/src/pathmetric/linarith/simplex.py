"""Exact phase-one simplex for ``A x <= b`` with free ``x``.

The tableau keeps one slack ``s_i = a_i . x`` per row with the single bound
``s_i <= b_i``.  The free variables are first pivoted into the basis; after
that, a basic slack above its bound is repaired by pivoting with a nonbasic
slack, which is then fixed at its bound.  When a violated row admits no
repairing pivot, its tableau row read against the original rows is a Farkas
certificate.

Rows are scaled so every bound is an integer.  Nonbasic slacks then sit at
integer values, free nonbasics at zero, and each basic value is an integer
dot product over the row denominator, so the loop needs no fractions.
Rows are stored fraction-free; the pivot itself is
:func:`pathmetric.kernels.pivot_tableau`.

Pivot choice is greedy (largest violation leaves, sparsest column enters)
for a bounded number of steps and Bland's smallest-index rule afterwards,
which guarantees termination.
"""

from __future__ import annotations

import math
from fractions import Fraction

from ..errors import ResourceCap
from ..kernels import pivot_tableau
from .system import Feasibility, Feasible, Infeasible, LinearSystem

DEFAULT_MAX_PIVOTS = 200_000
DEFAULT_GREEDY_PIVOTS = 5_000


def _int_row(coeffs):
    den = 1
    for c in coeffs:
        if c:
            den = den * c.denominator // math.gcd(den, c.denominator)
    row = [int(c * den) for c in coeffs]
    g = math.gcd(den, *row)
    if g > 1:
        row = [x // g for x in row]
        den //= g
    return row, den


def feasible(sys: LinearSystem, max_pivots: int = DEFAULT_MAX_PIVOTS,
             verify: bool = True, greedy_pivots: int = DEFAULT_GREEDY_PIVOTS) -> Feasibility:
    """Decide ``A x <= b`` exactly.

    Returns :class:`Feasible` with a rational witness or :class:`Infeasible`
    with a nonnegative row multiplier ``y`` such that ``y^T A = 0`` and
    ``y^T b < 0``.  With ``verify`` the returned evidence is re-checked by
    substitution before it is handed out.  ``greedy_pivots=0`` gives pure
    Bland pivoting.
    """
    k = sys.num_vars
    m = len(sys.rows)
    if m == 0:
        return Feasible(tuple(Fraction(0) for _ in range(k)))

    rows: list[list[int]] = []
    dens: list[int] = []
    scale: list[int] = []
    ub: list = [None] * k
    for r in sys.rows:
        L = r.rhs.denominator
        row, den = _int_row([c * L for c in r.coeffs])
        rows.append(row)
        dens.append(den)
        scale.append(L)
        ub.append(r.rhs.numerator)
    basic = [k + i for i in range(m)]
    nonbasic = list(range(k))
    nbval = [0] * k  # value of the variable in each nonbasic column
    pivots = 0

    # phase 0: bring every free variable into the basis, sparsest row first
    nnz = [sum(1 for v in row if v) for row in rows]
    for c in range(k):
        best = -1
        for i in range(m):
            if basic[i] >= k and rows[i][c] and (best < 0 or nnz[i] < nnz[best]):
                best = i
                if nnz[i] == 1:
                    break
        if best < 0:
            continue
        touched = pivot_tableau(rows, dens, best, c)
        basic[best], nonbasic[c] = nonbasic[c], basic[best]
        nbval[c] = ub[nonbasic[c]]
        for i in touched:
            nnz[i] = sum(1 for v in rows[i] if v)
        nnz[best] = sum(1 for v in rows[best] if v)
        pivots += 1

    def dot(i):
        acc = 0
        for a, s in zip(rows[i], nbval):
            if a and s:
                acc += a * s
        return acc

    val = [dot(i) for i in range(m)]
    violated = {i for i in range(m) if basic[i] >= k and val[i] > ub[basic[i]] * dens[i]}

    while violated:
        greedy = pivots < greedy_pivots
        if greedy:
            r = max(violated, key=lambda i: (Fraction(val[i], dens[i]) - ub[basic[i]], -basic[i]))
        else:
            r = min(violated, key=basic.__getitem__)
        rvar = basic[r]
        row = rows[r]
        enter = -1
        evar = k + m
        best_key = None
        for j, a in enumerate(row):
            if not a:
                continue
            v = nonbasic[j]
            if not (a > 0 or v < k):
                continue
            if greedy:
                key = (sum(1 for ri in rows if ri[j]), v)
                if best_key is None or key < best_key:
                    best_key, enter, evar = key, j, v
            elif v < evar:
                enter, evar = j, v
        if enter < 0:
            y = [0] * m
            y[rvar - k] = dens[r] * scale[rvar - k]
            for j, a in enumerate(row):
                if a:
                    y[nonbasic[j] - k] = -a * scale[nonbasic[j] - k]
            g = math.gcd(*y)
            farkas = tuple(Fraction(v // g) for v in y)
            if verify and not sys.is_farkas(farkas):  # pragma: no cover - internal invariant
                raise AssertionError("simplex produced an invalid Farkas certificate")
            return Infeasible(farkas, pivots)

        if pivots >= max_pivots:
            raise ResourceCap(f"simplex exceeded {max_pivots} pivots")
        touched = pivot_tableau(rows, dens, r, enter)
        basic[r], nonbasic[enter] = evar, rvar
        nbval[enter] = ub[rvar]
        pivots += 1
        for i in (r, *touched):
            val[i] = dot(i)
            v = basic[i]
            if v >= k and val[i] > ub[v] * dens[i]:
                violated.add(i)
            else:
                violated.discard(i)

    witness = [Fraction(0)] * k
    for j, v in enumerate(nonbasic):
        if v < k:
            witness[v] = Fraction(nbval[j])
    for i, v in enumerate(basic):
        if v < k:
            witness[v] = Fraction(val[i], dens[i])
    witness = tuple(witness)
    if verify and not sys.satisfies(witness):  # pragma: no cover - internal invariant
        raise AssertionError("simplex produced a witness that violates the system")
    return Feasible(witness, pivots)
