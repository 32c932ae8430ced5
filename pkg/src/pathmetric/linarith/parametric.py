"""Fourier–Motzkin with coefficients that are integer polynomials in ``t``.

The parameter interval is cut into cells on which every pivot coefficient
has constant sign; cell boundaries are exact (rational or algebraic) roots
of those coefficients.  Inside a cell the elimination is ordinary FM with
polynomial multipliers whose signs are known.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from ..errors import DegenerateCell, InputError, ResourceCap
from .poly import AlgebraicNumber, Poly, RealNumber, cmp_real, real_roots, sign_at
from .system import LinearSystem, Row

DEFAULT_MAX_ROWS = 10 ** 6
DEFAULT_MAX_CELLS = 10 ** 4

ZERO = Poly()


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi or (self.lo == self.hi and not (self.lo_closed and self.hi_closed)):
            raise InputError(f"empty interval {self}")

    def __contains__(self, t) -> bool:
        t = Fraction(t)
        return ((self.lo < t or (self.lo_closed and t == self.lo))
                and (t < self.hi or (self.hi_closed and t == self.hi)))

    def __str__(self):
        return f"{'[' if self.lo_closed else '('}{self.lo}, {self.hi}{']' if self.hi_closed else ')'}"

    @classmethod
    def parse(cls, text: str) -> "Interval":
        """``a,b`` (closed) or bracketed forms such as ``(1,6/5]``."""
        s = text.strip()
        lo_closed = hi_closed = True
        if s[:1] in "([":
            lo_closed = s[0] == "["
            s = s[1:]
        if s[-1:] in ")]":
            hi_closed = s[-1] == "]"
            s = s[:-1]
        a, b = s.split(",")
        return cls(Fraction(a.strip()), Fraction(b.strip()), lo_closed, hi_closed)


@dataclass(frozen=True)
class ParamRow:
    """``sum coeffs[j](t) x_j <= rhs(t)``, or ``<`` when ``strict``."""

    coeffs: tuple
    rhs: Poly
    tag: str = ""
    strict: bool = False
    sources: frozenset = field(default=frozenset(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(
            c if isinstance(c, Poly) else Poly.const(c) for c in self.coeffs))
        if not isinstance(self.rhs, Poly):
            object.__setattr__(self, "rhs", Poly.const(self.rhs))
        if not self.sources:
            object.__setattr__(self, "sources", frozenset([self.tag]) if self.tag else frozenset())

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def content_free(self) -> "ParamRow":
        import math
        g = math.gcd(*(c.content() for c in self.coeffs), self.rhs.content())
        if g <= 1:
            return self
        return ParamRow(tuple(Poly(x // g for x in c.coeffs) for c in self.coeffs),
                        Poly(x // g for x in self.rhs.coeffs), self.tag, self.strict,
                        self.sources)

    def key(self) -> tuple:
        return (self.coeffs, self.rhs, self.strict)

    def format(self, names: Optional[Sequence[str]] = None) -> str:
        terms = []
        for j, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            name = names[j] if names else f"x{j + 1}"
            terms.append(f"({c})*{name}")
        lhs = " + ".join(terms) if terms else "0"
        return f"{lhs} {'<' if self.strict else '<='} {self.rhs}"


@dataclass(frozen=True)
class ParamSystem:
    num_vars: int
    rows: tuple
    interval: Interval
    names: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        for r in self.rows:
            if len(r.coeffs) != self.num_vars:
                raise ValueError(f"row {r.tag!r} has wrong width")
        if self.names is not None:
            object.__setattr__(self, "names", tuple(self.names))

    def var_index(self, name) -> int:
        if isinstance(name, int):
            return name
        if self.names and name in self.names:
            return self.names.index(name)
        raise KeyError(f"unknown variable {name!r}")

    def instantiate(self, t) -> LinearSystem:
        """Substitute a rational ``t``; strict rows are not representable."""
        t = Fraction(t)
        rows = []
        for r in self.rows:
            if r.strict:
                raise ValueError("cannot instantiate a strict row as a LinearSystem row")
            rows.append(Row(tuple(_eval(c, t) for c in r.coeffs), _eval(r.rhs, t), r.tag))
        return LinearSystem(self.num_vars, tuple(rows), self.names)

    def is_homogeneous(self) -> bool:
        return all(r.rhs.is_zero() for r in self.rows)


def _eval(p: Poly, t: Fraction) -> Fraction:
    if not p.coeffs:
        return Fraction(0)
    if len(p.coeffs) == 1:
        return Fraction(p.coeffs[0])
    return p(t)


@dataclass(frozen=True)
class Cell:
    """A connected piece of the parameter line with exact endpoints.

    ``lo == hi`` (both closed) is a point cell.  ``lo_poly``/``hi_poly`` are
    polynomials vanishing at the endpoints when they came from a split.
    """

    lo: RealNumber
    hi: RealNumber
    lo_closed: bool
    hi_closed: bool
    lo_poly: Optional[Poly] = field(default=None, compare=False)
    hi_poly: Optional[Poly] = field(default=None, compare=False)

    @property
    def is_point(self) -> bool:
        return self.lo is self.hi or (
            self.lo_closed and self.hi_closed and cmp_real(self.lo, self.hi) == 0)

    def sample(self) -> RealNumber:
        """A point of the cell: the point itself, or a rational in the interior."""
        if self.is_point:
            return self.lo
        return rational_between(self.lo, self.hi)

    def rational_hull(self) -> tuple[Fraction, Fraction]:
        lo = self.lo.lo if isinstance(self.lo, AlgebraicNumber) else self.lo
        hi = self.hi.hi if isinstance(self.hi, AlgebraicNumber) else self.hi
        return Fraction(lo), Fraction(hi)

    def __str__(self):
        def show(x):
            return x.decimal(8) if isinstance(x, AlgebraicNumber) else str(x)
        if self.is_point:
            return f"{{{show(self.lo)}}}"
        return (f"{'[' if self.lo_closed else '('}{show(self.lo)}, "
                f"{show(self.hi)}{']' if self.hi_closed else ')'}")

    @classmethod
    def from_interval(cls, iv: Interval) -> "Cell":
        return cls(iv.lo, iv.hi, iv.lo_closed, iv.hi_closed,
                   Poly((-iv.lo.numerator, iv.lo.denominator)),
                   Poly((-iv.hi.numerator, iv.hi.denominator)))


def rational_between(lo: RealNumber, hi: RealNumber) -> Fraction:
    """A rational strictly between two reals with ``lo < hi``."""
    a = lo
    if isinstance(lo, AlgebraicNumber):
        while cmp_real(lo.hi, hi) >= 0:
            lo.bisect()
        a = lo.hi
    b = hi
    if isinstance(hi, AlgebraicNumber):
        while cmp_real(hi.lo, a) <= 0:
            hi.bisect()
        b = hi.lo
    return (Fraction(a) + Fraction(b)) / 2


def poly_sign_on_cell(p: Poly, cell: Cell) -> Optional[int]:
    """Constant sign of ``p`` on the cell, or ``None`` if it changes there."""
    if p.is_const():
        return (p.lc > 0) - (p.lc < 0)
    if cell.is_point:
        return sign_at(p, cell.lo)
    if _roots_in_cell(p, cell):
        return None
    return sign_at(p, cell.sample())


def _roots_in_cell(p: Poly, cell: Cell) -> list[RealNumber]:
    if p.is_const():
        return []
    lo, hi = cell.rational_hull()
    found = []
    for r in real_roots(p, lo, hi):
        c_lo = cmp_real(r, cell.lo)
        c_hi = cmp_real(r, cell.hi)
        if (c_lo > 0 or (c_lo == 0 and cell.lo_closed)) and (
                c_hi < 0 or (c_hi == 0 and cell.hi_closed)):
            found.append(r)
    return found


def split_cell(cell: Cell, polys) -> list[Cell]:
    """Cut ``cell`` at every root (inside it) of the given polynomials."""
    if cell.is_point:
        return [cell]
    marks: list[tuple[RealNumber, Poly]] = []
    for p in polys:
        for r in _roots_in_cell(p, cell):
            marks.append((r, p))
    if not marks:
        return [cell]
    marks.sort(key=functools.cmp_to_key(lambda a, b: cmp_real(a[0], b[0])))
    uniq: list[tuple[RealNumber, Poly]] = []
    for r, p in marks:
        if uniq and cmp_real(uniq[-1][0], r) == 0:
            continue
        uniq.append((r, p))
    out: list[Cell] = []
    cur, cur_closed, cur_poly = cell.lo, cell.lo_closed, cell.lo_poly
    done_hi = False
    for r, p in uniq:
        if cmp_real(r, cell.lo) == 0:
            out.append(Cell(r, r, True, True, p, p))
            cur_closed = False
            cur_poly = p
            continue
        out.append(Cell(cur, r, cur_closed, False, cur_poly, p))
        out.append(Cell(r, r, True, True, p, p))
        if cmp_real(r, cell.hi) == 0:
            done_hi = True
            break
        cur, cur_closed, cur_poly = r, False, p
    if not done_hi:
        out.append(Cell(cur, cell.hi, cur_closed, cell.hi_closed, cur_poly, cell.hi_poly))
    return out


class CellResult(NamedTuple):
    cell: Cell
    terminal: list


def _reduce_rows(rows, cell: Cell):
    """Zero out coefficients vanishing on a point cell; drop tautologies.

    Returns ``(rows, contradiction)``; ``contradiction`` is a zero row that
    fails everywhere on the cell, if one exists.
    """
    out = []
    for r in rows:
        if cell.is_point:
            coeffs = tuple(ZERO if (not c.is_const() and sign_at(c, cell.lo) == 0) else c
                           for c in r.coeffs)
            if coeffs != r.coeffs:
                r = ParamRow(coeffs, r.rhs, r.tag, r.strict, r.sources)
        if r.is_zero():
            s = poly_sign_on_cell(r.rhs, cell)
            if s is None:
                out.append(r)
            elif s > 0 or (s == 0 and not r.strict):
                continue
            else:
                return [r], r
        else:
            out.append(r)
    return out, None


def _prune(rows, cell: Cell) -> list:
    seen: dict = {}
    for r in rows:
        r = r.content_free()
        k = (r.coeffs, r.rhs)
        cur = seen.get(k)
        if cur is None or (r.strict and not cur.strict):
            seen[k] = r
    rows = list(seen.values())
    # among rows with equal coefficients keep the ones not dominated on the cell
    by_coeffs: dict = {}
    for r in rows:
        by_coeffs.setdefault(r.coeffs, []).append(r)
    out = []
    for group in by_coeffs.values():
        if len(group) == 1:
            out.extend(group)
            continue
        keep = []
        for a, r in enumerate(group):
            dominated = False
            for b, q in enumerate(group):
                if a == b:
                    continue
                s = poly_sign_on_cell(q.rhs - r.rhs, cell)
                # q is tighter everywhere on the cell; ties go to the stricter, then earlier, row
                if s is not None and (s < 0 or (s == 0 and (q.strict, -b) > (r.strict, -a))):
                    dominated = True
                    break
            if not dominated:
                keep.append(r)
        out.extend(keep)
    return out


def _combine(p: ParamRow, n: ParamRow, j: int) -> ParamRow:
    a, b = p.coeffs[j], -n.coeffs[j]
    coeffs = tuple(b * x + a * y for x, y in zip(p.coeffs, n.coeffs))
    coeffs = coeffs[:j] + (ZERO,) + coeffs[j + 1:]
    sources = p.sources | n.sources
    row = ParamRow(coeffs, b * p.rhs + a * n.rhs, "+".join(sorted(sources)),
                   p.strict or n.strict, sources)
    return row.content_free()


class _Eliminator:
    def __init__(self, max_rows: int, max_cells: int):
        self.max_rows = max_rows
        self.max_cells = max_cells
        self.results: list[CellResult] = []

    def run(self, cell: Cell, rows, order: Optional[list], remaining: set):
        rows, contradiction = _reduce_rows(rows, cell)
        if contradiction is not None:
            self._emit(cell, [contradiction])
            return
        rows = _prune(rows, cell)
        live = {j for j in remaining if any(not r.coeffs[j].is_zero() for r in rows)}
        if not live:
            self._emit(cell, rows)
            return
        if order is not None:
            seq = [j for j in order if j in remaining]
            j = next(j for j in seq if j in live) if any(j in live for j in seq) else None
            if j is None:
                self._emit(cell, rows)
                return
        else:
            j = None
        coeff_polys = {r.coeffs[j] for r in rows if not r.coeffs[j].is_zero()} if j is not None \
            else {r.coeffs[i] for r in rows for i in live if not r.coeffs[i].is_zero()}
        pieces = split_cell(cell, [p for p in coeff_polys if not p.is_const()])
        if len(pieces) > 1:
            for piece in pieces:
                self.run(piece, rows, order, remaining)
            return
        signs = {p: poly_sign_on_cell(p, cell) for p in coeff_polys}
        if any(s is None for s in signs.values()):  # pragma: no cover - split above prevents it
            raise DegenerateCell(f"coefficient sign not constant on cell {cell}")
        if j is None:
            j = min(live, key=lambda i: (
                sum(1 for r in rows if signs.get(r.coeffs[i], 0) > 0)
                * sum(1 for r in rows if signs.get(r.coeffs[i], 0) < 0), i))
        pos, neg, zero = [], [], []
        for r in rows:
            c = r.coeffs[j]
            s = 0 if c.is_zero() else signs[c]
            if s == 0 and not c.is_zero():
                # vanishes on a point cell that _reduce_rows did not catch
                raise DegenerateCell(f"pivot coefficient {c} vanishes on {cell}")
            (pos if s > 0 else neg if s < 0 else zero).append(r)
        if len(zero) + len(pos) * len(neg) > self.max_rows:
            raise ResourceCap(f"parametric elimination would create {len(pos) * len(neg)} rows")
        new = zero + [_combine(p, n, j) for p in pos for n in neg]
        self.run(cell, new, order, remaining - {j})

    def _emit(self, cell: Cell, rows):
        if len(self.results) >= self.max_cells:
            raise ResourceCap(f"more than {self.max_cells} cells")
        self.results.append(CellResult(cell, list(rows)))


def eliminate_on_cells(cells_and_rows, order: Optional[Sequence[int]], eliminate: set,
                       max_rows: int = DEFAULT_MAX_ROWS,
                       max_cells: int = DEFAULT_MAX_CELLS) -> list[CellResult]:
    el = _Eliminator(max_rows, max_cells)
    for cell, rows in cells_and_rows:
        el.run(cell, list(rows), list(order) if order is not None else None, set(eliminate))
    return el.results


def parametric_eliminate(sys: ParamSystem, order: Optional[Sequence] = None,
                         keep: Sequence = (), max_rows: int = DEFAULT_MAX_ROWS,
                         max_cells: int = DEFAULT_MAX_CELLS) -> list[CellResult]:
    """Eliminate variables symbolically in ``t`` over ``sys.interval``.

    ``order`` lists variables (indices or names) to eliminate in sequence;
    ``None`` eliminates everything not in ``keep`` greedily, choosing on each
    cell the variable with the fewest positive-by-negative row pairs.
    Returns cells in increasing order, each with the surviving rows, which
    involve only kept variables and are equivalent to feasibility on it.
    """
    keep_idx = {sys.var_index(v) for v in keep}
    if order is not None:
        idx = [sys.var_index(v) for v in order]
        if len(set(idx)) != len(idx):
            raise ValueError("elimination order repeats a variable")
        if keep_idx & set(idx):
            raise ValueError("a kept variable also appears in the elimination order")
        targets = set(idx)
    else:
        idx = None
        targets = set(range(sys.num_vars)) - keep_idx
    cell = Cell.from_interval(sys.interval)
    return eliminate_on_cells([(cell, sys.rows)], idx, targets, max_rows, max_cells)


def terminal_conditions(rows) -> list[tuple[Poly, bool]]:
    """Rows with no variables left, as ``(p, strict)`` meaning ``0 <= p`` / ``0 < p``."""
    return [(r.rhs, r.strict) for r in rows if r.is_zero()]
