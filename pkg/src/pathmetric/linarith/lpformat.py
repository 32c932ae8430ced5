"""The ``lp/v1`` text format.

One constraint per line::

    3*w1 + (-t)*w3 <= 0 # path:3
    (2t^3-3t^2-10t+12)*x - y <= 1/2

Coefficients are rationals ``p/q`` or parenthesized polynomials in ``t``;
a bare variable has coefficient 1.  Relations are ``<=``, ``>=`` and ``<``.
Blank lines and lines starting with ``#`` are ignored.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..errors import InputError
from .parametric import Interval, ParamRow, ParamSystem
from .poly import Poly, format_poly, parse_poly
from .system import LinearSystem, Row

_REL = re.compile(r"(<=|>=|<)")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_,]*$")


@dataclass(frozen=True)
class LPRow:
    """Coefficients as ``{name: (rational scale, Poly)}`` meaning ``scale * poly``."""

    terms: dict
    rhs: tuple
    tag: str
    strict: bool


def _split_terms(expr: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in expr:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and cur.strip() not in ("", "+", "-") and not cur.rstrip().endswith(("*", "/")):
            out.append(cur)
            cur = ch
        else:
            cur += ch
    if cur.strip():
        out.append(cur)
    return [t.replace(" ", "") for t in out]


def _coeff(text: str) -> tuple[Fraction, Poly]:
    text = text.strip()
    sign = 1
    while text and text[0] in "+-":
        if text[0] == "-":
            sign = -sign
        text = text[1:].strip()
    if not text:
        return Fraction(sign), Poly.const(1)
    if text.startswith("(") and text.endswith(")"):
        inner = text[1:-1].strip()
        if "t" in inner:
            return Fraction(sign), parse_poly(inner)
        return Fraction(sign) * Fraction(inner), Poly.const(1)
    if "t" in text:
        return Fraction(sign), parse_poly(text)
    return Fraction(sign) * Fraction(text), Poly.const(1)


def _parse_side(expr: str) -> tuple[dict, tuple]:
    """Split a linear expression into variable terms and a constant part."""
    terms: dict = {}
    const = (Fraction(0), Poly())
    for term in _split_terms(expr):
        if not term:
            continue
        if "*" in term:
            c, name = term.rsplit("*", 1)
        else:
            m = re.match(r"^([+-]?)([A-Za-z_][A-Za-z0-9_,]*)$", term)
            if m and m.group(2) != "t":
                c, name = m.group(1), m.group(2)
            else:
                c, name = term, None
        if name is not None and not _NAME.match(name):
            raise InputError(f"bad variable name {name!r}")
        try:
            val = _coeff(c)
        except (ValueError, ZeroDivisionError) as e:
            raise InputError(f"bad coefficient {c!r}: {e}") from e
        if name is None:
            const = _addc(const, val)
        else:
            terms[name] = _addc(terms.get(name, (Fraction(0), Poly())), val)
    return terms, const


def _addc(a, b):
    """Sum of two ``scale * poly`` values, kept as one rational-scaled integer poly."""
    (s1, p1), (s2, p2) = a, b
    if p1.is_zero() or s1 == 0:
        return b
    if p2.is_zero() or s2 == 0:
        return a
    den = s1.denominator * s2.denominator
    q = p1 * int(s1 * den) + p2 * int(s2 * den)
    return Fraction(1, den), q


def parse_lp(text: str) -> tuple[list[str], list[LPRow]]:
    names: list[str] = []
    rows: list[LPRow] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line, _, tag = raw.partition("#")
        line = line.strip()
        if not line:
            continue
        parts = _REL.split(line)
        if len(parts) != 3:
            raise InputError(f"line {lineno}: expected exactly one of <=, >=, <")
        lhs, rel, rhs = parts
        lt, lc = _parse_side(lhs)
        rt, rc = _parse_side(rhs)
        terms = dict(lt)
        for k, v in rt.items():
            terms[k] = _addc(terms.get(k, (Fraction(0), Poly())), (-v[0], v[1]))
        const = _addc(rc, (-lc[0], lc[1]))
        if rel == ">=":
            terms = {k: (-s, p) for k, (s, p) in terms.items()}
            const = (-const[0], const[1])
        for k in terms:
            if k not in names:
                names.append(k)
        rows.append(LPRow(terms, const, tag.strip() or f"r{len(rows) + 1}", rel == "<"))
    return names, rows


def _integer_row(row: LPRow, names: list[str]) -> tuple[list[Poly], Poly]:
    vals = [row.terms.get(n, (Fraction(0), Poly())) for n in names] + [row.rhs]
    den = 1
    for s, _ in vals:
        den = den * s.denominator // math.gcd(den, s.denominator)
    polys = [p * int(s * den) if s else Poly() for s, p in vals]
    return polys[:-1], polys[-1]


def is_parametric(rows: list[LPRow]) -> bool:
    return any(not p.is_const() for r in rows for _, p in [*r.terms.values(), r.rhs])


def to_linear_system(names: list[str], rows: list[LPRow]) -> LinearSystem:
    if is_parametric(rows):
        raise InputError("system mentions t; give a parameter interval")
    out = []
    for r in rows:
        if r.strict:
            raise InputError(f"row {r.tag!r}: strict rows need the parametric path")
        coeffs, rhs = _integer_row(r, names)
        out.append(Row(tuple(Fraction(c.const_value()) for c in coeffs), rhs.const_value(), r.tag))
    return LinearSystem(len(names), tuple(out), tuple(names))


def to_param_system(names: list[str], rows: list[LPRow], interval: Interval) -> ParamSystem:
    out = []
    for r in rows:
        coeffs, rhs = _integer_row(r, names)
        out.append(ParamRow(tuple(coeffs), rhs, r.tag, r.strict).content_free())
    return ParamSystem(len(names), tuple(out), interval, tuple(names))


def load_lp(text: str, interval: Optional[Interval] = None):
    names, rows = parse_lp(text)
    if interval is None:
        return to_linear_system(names, rows)
    return to_param_system(names, rows, interval)


def _fmt_coeff(c) -> str:
    if isinstance(c, Poly):
        if c.is_const():
            return str(c.const_value())
        return f"({format_poly(c)})"
    c = Fraction(c)
    return str(c)


def format_lp(sys) -> str:
    """Render a :class:`LinearSystem` or :class:`ParamSystem` as ``lp/v1``."""
    names = sys.names or tuple(f"x{j + 1}" for j in range(sys.num_vars))
    lines = []
    for r in sys.rows:
        terms = []
        for j, c in enumerate(r.coeffs):
            if (c.is_zero() if isinstance(c, Poly) else not c):
                continue
            terms.append(f"{_fmt_coeff(c)}*{names[j]}")
        lhs = " + ".join(terms) if terms else "0"
        rel = "<" if getattr(r, "strict", False) else "<="
        rhs = _fmt_coeff(r.rhs)
        lines.append(f"{lhs} {rel} {rhs}" + (f" # {r.tag}" if r.tag else ""))
    return "\n".join(lines) + "\n"
