"""Fourier–Motzkin projection over exact rationals."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from ..errors import ResourceCap
from .system import LinearSystem, Row

DEFAULT_MAX_ROWS = 10 ** 6


def _normalize(row: Row) -> tuple:
    """Scale to a primitive integer coefficient vector (positive factor)."""
    den = 1
    for c in row.coeffs:
        if c:
            den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in row.coeffs]
    g = math.gcd(*ints)
    if g == 0:
        return tuple(ints), row.rhs
    return tuple(x // g for x in ints), row.rhs * den / g


def prune(rows: Sequence[Row]) -> list[Row]:
    """Drop tautologies and rows dominated by a parallel row with smaller rhs.

    A contradictory zero row (``0 <= negative``) is kept; only the first one
    is retained since it alone settles infeasibility.
    """
    return [r for r, _ in _prune_tracked([(r, frozenset()) for r in rows])]


def _prune_tracked(items):
    # items are (row, history) pairs.  A parallel row is dropped only for one
    # at least as strong whose history is a subset of its own, so every row
    # the history test would keep still has an equal or stronger stand-in.
    best: dict[tuple, list] = {}
    for r, hist in items:
        coeffs, rhs = _normalize(r)
        if not any(coeffs):
            if r.rhs < 0:
                return [(r, hist)]
            continue
        group = best.setdefault(coeffs, [])
        if any(o.rhs <= rhs and oh <= hist for o, oh in group):
            continue
        group[:] = [(o, oh) for o, oh in group if not (rhs <= o.rhs and hist <= oh)]
        group.append((Row(coeffs, rhs, r.tag, r.sources), hist))
    return [it for group in best.values() for it in group]


def _combine(p: Row, n: Row, j: int) -> Row:
    a, b = p.coeffs[j], -n.coeffs[j]
    coeffs = tuple(b * x + a * y for x, y in zip(p.coeffs, n.coeffs))
    coeffs = coeffs[:j] + (Fraction(0),) + coeffs[j + 1:]
    sources = p.sources | n.sources
    return Row(coeffs, b * p.rhs + a * n.rhs, "+".join(sorted(sources)), sources)


def fm_eliminate(sys: LinearSystem, order: Sequence[int],
                 max_rows: int = DEFAULT_MAX_ROWS) -> LinearSystem:
    """Project out the variables in ``order``, one at a time.

    The result keeps the original width with zero columns for eliminated
    variables.  It is feasible iff ``sys`` is.  Derived rows are tagged with
    the original tags they combine.
    """
    if len(set(order)) != len(order):
        raise ValueError("elimination order repeats a variable")
    for j in order:
        if not 0 <= j < sys.num_vars:
            raise ValueError(f"variable index {j} out of range")
    items = _prune_tracked([(r, frozenset((i,))) for i, r in enumerate(sys.rows)])
    for k, j in enumerate(order, 1):
        if len(items) == 1 and items[0][0].is_zero():
            break
        pos = [it for it in items if it[0].coeffs[j] > 0]
        neg = [it for it in items if it[0].coeffs[j] < 0]
        out = [it for it in items if it[0].coeffs[j] == 0]
        for p, hp in pos:
            for n, hn in neg:
                hist = hp | hn
                # Chernikov: after k eliminations a row built from more than
                # k + 1 input rows is implied by the others
                if len(hist) <= k + 1:
                    out.append((_combine(p, n, j), hist))
                    if len(out) > max_rows:
                        raise ResourceCap(f"eliminating {sys.var_name(j)} exceeds {max_rows} rows")
        items = _prune_tracked(out)
    rows = [r for r, _ in items]
    return LinearSystem(sys.num_vars, tuple(rows), sys.names)


def projection_feasible(sys: LinearSystem) -> bool:
    """Feasibility of a fully projected system: no row reads ``0 <= negative``."""
    return all(not r.is_zero() or r.rhs >= 0 for r in sys.rows)
