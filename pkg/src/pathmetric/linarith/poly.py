"""Integer polynomials in one parameter ``t`` and exact real-root isolation.

Root isolation is by Sturm sequences over the square-free part with
rational bisection; everything is exact.  Irrational roots are carried as
:class:`AlgebraicNumber` (square-free polynomial plus an open isolating
interval with a sign change); rational roots are plain ``Fraction``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Optional, Union

Rational = Union[int, Fraction]


class Poly:
    """Immutable integer-coefficient polynomial, coefficients low degree first."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)
        self._hash = None

    @classmethod
    def const(cls, c: int) -> "Poly":
        return cls((c,))

    @classmethod
    def t(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def from_rational_coeffs(cls, coeffs: Iterable[Fraction]) -> "Poly":
        """Positive integer multiple of a rational polynomial, made primitive."""
        coeffs = [Fraction(c) for c in coeffs]
        den = 1
        for c in coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        return cls(int(c * den) for c in coeffs).content_free()

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def const_value(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly.const(other)
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __add__(self, other):
        if isinstance(other, int):
            other = Poly.const(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(-x for x in self.coeffs)

    def __sub__(self, other):
        if isinstance(other, int):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return Poly(x * other for x in self.coeffs) if other else Poly()
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        if len(a) == 1:
            return other * a[0]
        if len(b) == 1:
            return self * b[0]
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc if isinstance(acc, Fraction) else Fraction(acc)

    def sign_at(self, x: Rational) -> int:
        """Exact sign at a rational point, in integer arithmetic."""
        if not self.coeffs:
            return 0
        x = Fraction(x)
        p, q = x.numerator, x.denominator
        acc = 0
        qk = 1
        # sum c_i p^i q^(d-i)
        for c in reversed(self.coeffs):
            acc = acc * p + c * qk
            qk *= q
        return (acc > 0) - (acc < 0)

    def content(self) -> int:
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def content_free(self) -> "Poly":
        """Divide by the (positive) integer content; the sign is kept."""
        g = self.content()
        if g <= 1:
            return self
        return Poly(x // g for x in self.coeffs)

    def primitive(self) -> "Poly":
        """Content-free with a positive leading coefficient."""
        p = self.content_free()
        return -p if p.lc < 0 else p

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i)

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return format_poly(self)


def format_poly(p: Poly, var: str = "t") -> str:
    if p.is_zero():
        return "0"
    terms = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if i == 0:
            body = str(a)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if a == 1 else f"{a}{mono}"
        terms.append((sign, body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for s, body in terms[1:]:
        out += s + body
    return out


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(t(?:\s*\^\s*(\d+))?)?")


def parse_poly(text: str, var: str = "t") -> Poly:
    """Parse ``2t^3-3t^2-10t+12``-style text (integer coefficients only)."""
    s = text.replace(" ", "")
    if var != "t":
        s = s.replace(var, "t")
    if not s:
        raise ValueError("empty polynomial")
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial {text!r} at {s[pos:]!r}")
        sign, digits, tpart, exp = m.groups()
        if not digits and not tpart:
            raise ValueError(f"cannot parse polynomial {text!r}")
        c = int(digits) if digits else 1
        if sign == "-":
            c = -c
        k = 0 if not tpart else (int(exp) if exp else 1)
        coeffs[k] = coeffs.get(k, 0) + c
        pos = m.end()
    deg = max(coeffs)
    return Poly(coeffs.get(i, 0) for i in range(deg + 1))


# -- rational polynomial arithmetic (lists of Fractions, low first) ------------

def _qdivmod(a: list, b: list):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lb = b[-1]
    while len(a) >= len(b) and any(a):
        k = len(a) - len(b)
        f = a[-1] / lb
        q[k] = f
        for i, c in enumerate(b):
            a[i + k] -= f * c
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return q, a


def _to_q(p: Poly) -> list:
    return [Fraction(c) for c in p.coeffs]


def poly_rem(a: Poly, b: Poly) -> Poly:
    """Positive rational multiple of ``a mod b``, as an integer polynomial."""
    _, r = _qdivmod(_to_q(a), _to_q(b))
    return Poly.from_rational_coeffs(r) if r else Poly()


def poly_exact_div(a: Poly, b: Poly) -> Poly:
    q, r = _qdivmod(_to_q(a), _to_q(b))
    if r:
        raise ArithmeticError(f"{b} does not divide {a}")
    return Poly.from_rational_coeffs(q)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Primitive gcd with positive leading coefficient (``0`` if both are zero)."""
    a, b = a.primitive(), b.primitive()
    while not b.is_zero():
        a, b = b, poly_rem(a, b).primitive()
    return a.primitive()


def squarefree(p: Poly) -> Poly:
    if p.degree <= 1:
        return p.primitive()
    g = poly_gcd(p, p.derivative())
    if g.degree <= 0:
        return p.primitive()
    return poly_exact_div(p, g).primitive()


def sturm_sequence(p: Poly) -> list[Poly]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero() and seq[-1].degree > 0:
        r = poly_rem(seq[-2], seq[-1])
        if r.is_zero():
            break
        seq.append(-r)
    return [s for s in seq if not s.is_zero()]


def _variations(seq: list[Poly], x: Rational) -> int:
    prev = 0
    v = 0
    for s in seq:
        sg = s.sign_at(x)
        if sg == 0:
            continue
        if prev and sg != prev:
            v += 1
        prev = sg
    return v


class _Counter:
    """Sturm root counter for a square-free polynomial."""

    def __init__(self, sq: Poly):
        self.p = sq
        self.seq = sturm_sequence(sq)

    def count(self, a: Rational, b: Rational) -> int:
        """Number of roots in the half-open interval (a, b]."""
        if self.p.degree < 1:
            return 0
        return _variations(self.seq, a) - _variations(self.seq, b)


def count_roots(p: Poly, a: Rational, b: Rational) -> int:
    """Distinct real roots of ``p`` in the closed interval [a, b]."""
    sq = squarefree(p)
    c = _Counter(sq).count(a, b)
    return c + (1 if sq.sign_at(a) == 0 else 0)


def isolate_roots(p: Poly, interval, width: Optional[Rational] = None,
                  closed: tuple = (True, True)) -> list[tuple[Fraction, Fraction]]:
    """Isolating intervals for the distinct real roots of ``p`` in ``interval``.

    Returns sorted, pairwise disjoint ``(a, b)`` pairs.  ``a == b`` marks an
    exact rational root; otherwise the root lies strictly inside ``(a, b)``
    and ``p`` changes sign across it.  Every interval has length ``<= width``.
    """
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    lo, hi = Fraction(interval[0]), Fraction(interval[1])
    if lo > hi:
        raise ValueError(f"empty interval [{lo}, {hi}]")
    width = Fraction(width) if width is not None else None
    sq = squarefree(p)
    if sq.degree < 1:
        return []
    counter = _Counter(sq)
    out: list[tuple[Fraction, Fraction]] = []
    if lo == hi:
        return [(lo, lo)] if sq.sign_at(lo) == 0 and closed[0] and closed[1] else []
    if closed[0] and sq.sign_at(lo) == 0:
        out.append((lo, lo))

    def walk(a: Fraction, b: Fraction, exclude_b: bool):
        k = counter.count(a, b)
        b_root = sq.sign_at(b) == 0
        if b_root:
            if exclude_b:
                k -= 1
            else:
                # emitted after the interior roots to keep sorted order
                k -= 1
        if k == 0:
            if b_root and not exclude_b:
                out.append((b, b))
            return
        if k == 1 and not b_root and (width is None or b - a <= width) and sq.sign_at(a) != 0:
            out.append((a, b))
            return
        m = (a + b) / 2
        walk(a, m, False)
        walk(m, b, True if b_root else exclude_b)
        if b_root and not exclude_b:
            out.append((b, b))

    walk(lo, hi, not closed[1])
    return out


class AlgebraicNumber:
    """An irrational real root of a square-free integer polynomial.

    ``poly`` has exactly one root in the open interval ``(lo, hi)`` and takes
    opposite nonzero signs at the endpoints.  Refinement mutates the interval
    but never the represented number.
    """

    __slots__ = ("poly", "lo", "hi", "_slo")

    def __init__(self, poly: Poly, lo: Fraction, hi: Fraction):
        self.poly = poly
        self.lo = Fraction(lo)
        self.hi = Fraction(hi)
        self._slo = poly.sign_at(self.lo)
        if self._slo == 0 or poly.sign_at(self.hi) != -self._slo:
            raise ValueError("interval does not bracket a simple root with a sign change")

    def refine(self, width: Rational) -> "AlgebraicNumber":
        width = Fraction(width)
        while self.hi - self.lo > width:
            self.bisect()
        return self

    def bisect(self):
        m = (self.lo + self.hi) / 2
        s = self.poly.sign_at(m)
        if s == 0:  # pragma: no cover - the root is irrational
            raise ArithmeticError("rational root inside algebraic isolating interval")
        if s == self._slo:
            self.lo = m
        else:
            self.hi = m

    def __float__(self):
        self.refine(Fraction(1, 2 ** 60))
        return float((self.lo + self.hi) / 2)

    def decimal(self, digits: int = 10) -> str:
        self.refine(Fraction(1, 10 ** (digits + 2)))
        return f"{float((self.lo + self.hi) / 2):.{digits}f}"

    def cmp_rational(self, q: Rational) -> int:
        """Sign of ``self - q``."""
        q = Fraction(q)
        while self.lo < q < self.hi:
            self.bisect()
        return 1 if q <= self.lo else -1

    def sign_of(self, q: Poly) -> int:
        """Exact sign of ``q`` evaluated at this number."""
        if q.is_zero():
            return 0
        if q.is_const():
            return (q.lc > 0) - (q.lc < 0)
        g = poly_gcd(self.poly, q)
        if g.degree >= 1 and _Counter(g).count(self.lo, self.hi) > 0:
            return 0
        qs = squarefree(q)
        counter = _Counter(qs)
        while counter.count(self.lo, self.hi) > 0 or qs.sign_at(self.lo) == 0:
            self.bisect()
        return q.sign_at(self.lo)

    def __repr__(self):
        return f"AlgebraicNumber({self.poly}, ({self.lo}, {self.hi}))"


RealNumber = Union[Fraction, AlgebraicNumber]


def cmp_real(x: RealNumber, y: RealNumber) -> int:
    """Exact three-way comparison of two real numbers."""
    if not isinstance(x, AlgebraicNumber) and not isinstance(y, AlgebraicNumber):
        x, y = Fraction(x), Fraction(y)
        return (x > y) - (x < y)
    if not isinstance(x, AlgebraicNumber):
        return -y.cmp_rational(x)
    if not isinstance(y, AlgebraicNumber):
        return x.cmp_rational(y)
    # a common root inside both isolating intervals is x and y at once
    g = poly_gcd(x.poly, y.poly)
    lo, hi = max(x.lo, y.lo), min(x.hi, y.hi)
    if g.degree >= 1 and lo < hi and _Counter(g).count(lo, hi) > 0:
        return 0
    while True:
        if x.hi <= y.lo:
            return -1
        if y.hi <= x.lo:
            return 1
        if x.hi - x.lo >= y.hi - y.lo:
            x.bisect()
        else:
            y.bisect()


def sign_at(p: Poly, x: RealNumber) -> int:
    if isinstance(x, AlgebraicNumber):
        return x.sign_of(p)
    return p.sign_at(x)


def real_to_float(x: RealNumber) -> float:
    return float(x)


def real_roots(p: Poly, lo: Rational, hi: Rational,
               closed: tuple = (True, True)) -> list[RealNumber]:
    """Distinct real roots of ``p`` in the interval, sorted, exactly represented."""
    sq = squarefree(p)
    out: list[RealNumber] = []
    if sq.degree < 1:
        return out
    N = abs(sq.lc)
    target = Fraction(1, 2 * N * N)
    for a, b in isolate_roots(sq, (lo, hi), closed=closed):
        if a == b:
            out.append(a)
            continue
        alg = AlgebraicNumber(sq, a, b)
        # a rational root p/q has q | lc; once the interval is narrower than
        # 1/(2 lc^2) the best approximation with denominator <= lc finds it
        narrow = AlgebraicNumber.__new__(AlgebraicNumber)
        narrow.poly, narrow.lo, narrow.hi, narrow._slo = sq, alg.lo, alg.hi, alg._slo
        while narrow.hi - narrow.lo > target:
            m = (narrow.lo + narrow.hi) / 2
            s = sq.sign_at(m)
            if s == 0:
                out.append(m)
                break
            if s == narrow._slo:
                narrow.lo = m
            else:
                narrow.hi = m
        else:
            cand = ((narrow.lo + narrow.hi) / 2).limit_denominator(N)
            if sq.sign_at(cand) == 0:
                out.append(cand)
            else:
                out.append(narrow)
    return out


def root_bound(p: Poly) -> Fraction:
    """Cauchy bound: every complex root has modulus below the returned value."""
    lc = abs(p.lc)
    return 1 + max((Fraction(abs(c), lc) for c in p.coeffs[:-1]), default=Fraction(0))


def strip_rational_roots(p: Poly) -> Poly:
    """Remove every rational linear factor (with multiplicity) from ``p``."""
    p = p.primitive()
    changed = True
    while changed and p.degree >= 1:
        changed = False
        B = root_bound(p)
        for r in real_roots(p, -B, B):
            if isinstance(r, Fraction):
                p = poly_exact_div(p, Poly((-r.numerator, r.denominator))).primitive()
                changed = True
                break
    return p
