"""Metric approximation of path systems as linear feasibility in ``t``.

A system is ``t``-metric iff there are pair values ``x >= 1`` satisfying
every triangle inequality and ``sum of x over the edges of P_{u,v} <= t x_uv``
for every system path with at least two edges.  For ``Z_n``-invariant
systems one variable per difference class ``{a, -a}`` suffices, because any
good metric can be averaged over the group.

Bounds on ``Delta(P)`` come from bisection over rational ``t`` with exact
feasibility probes; small invariant subsystems get an exact algebraic
threshold from parametric elimination.
"""

from __future__ import annotations

import functools
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

from .core import PairWeights, PathSystem, pair_key, path_cost, validate_system
from .errors import (InconsistentSystem, InputError, MissingWeight, NoThresholdInInterval,
                     NotInvariant, SignAmbiguous)
from .groups import CyclicGroup, WordTable, paley_system, words_from_system
from .linarith.parametric import (Cell, CellResult, Interval, ParamRow, ParamSystem,
                                  eliminate_on_cells, parametric_eliminate, poly_sign_on_cell,
                                  rational_between, split_cell, terminal_conditions)
from .linarith.poly import (AlgebraicNumber, Poly, RealNumber, cmp_real, strip_rational_roots)
from .linarith.simplex import feasible
from .linarith.system import Feasibility, Feasible, Infeasible, LinearSystem, Row

CERT_FORMAT = "metric-cert/v1"
Target = Union[PathSystem, WordTable, "LPTemplate"]


@dataclass(frozen=True)
class TRow:
    """``sum (a_j + b_j t) x_j <= rhs`` with ``terms = {j: (a_j, b_j)}``."""

    terms: tuple
    rhs: Fraction
    tag: str


@dataclass(frozen=True)
class LPTemplate:
    """A linear system whose coefficients are affine in ``t``."""

    num_vars: int
    names: tuple
    rows: tuple
    kind: str  # full | class | custom
    n: int = 0

    def at(self, t) -> LinearSystem:
        t = Fraction(t)
        out = []
        for r in self.rows:
            dense = [Fraction(0)] * self.num_vars
            for j, (a, b) in r.terms:
                dense[j] += a + b * t if b else a
            out.append(Row(tuple(dense), r.rhs, r.tag))
        return LinearSystem(self.num_vars, tuple(out), self.names)

    def param(self, interval: Interval) -> ParamSystem:
        rows = []
        for r in self.rows:
            coeffs = [Poly()] * self.num_vars
            den = r.rhs.denominator
            for j, (a, b) in r.terms:
                den = den * Fraction(a).denominator * Fraction(b).denominator
            for j, (a, b) in r.terms:
                coeffs[j] = coeffs[j] + Poly((int(Fraction(a) * den), int(Fraction(b) * den)))
            rows.append(ParamRow(tuple(coeffs), Poly.const(int(r.rhs * den)), r.tag).content_free())
        return ParamSystem(self.num_vars, rows, interval, self.names)

    def select(self, tags: Iterable[str]) -> "LPTemplate":
        """The subsystem made of the rows with the given tags, in that order."""
        by_tag = {r.tag: r for r in self.rows}
        missing = [t for t in tags if t not in by_tag]
        if missing:
            raise InputError(f"no rows tagged {missing}")
        return LPTemplate(self.num_vars, self.names, tuple(by_tag[t] for t in tags), "custom", self.n)

    def with_lower_bound(self, var) -> "LPTemplate":
        j = self.index(var)
        extra = TRow(((j, (Fraction(-1), Fraction(0))),), Fraction(-1), f"low:{self.names[j]}")
        return LPTemplate(self.num_vars, self.names, self.rows + (extra,), self.kind, self.n)

    def index(self, var) -> int:
        if isinstance(var, int):
            return var
        try:
            return self.names.index(var)
        except ValueError:
            raise InputError(f"unknown variable {var!r}") from None

    def count(self, prefix: str) -> int:
        return sum(1 for r in self.rows if r.tag.startswith(prefix))


def _pair_name(p) -> str:
    return f"x{p[0]},{p[1]}"


def _terms(d: Mapping) -> tuple:
    return tuple(sorted((j, (Fraction(a), Fraction(b))) for j, (a, b) in d.items()
                        if a or b))


def _add(d: dict, j: int, a=0, b=0):
    a0, b0 = d.get(j, (0, 0))
    d[j] = (a0 + a, b0 + b)


def metric_template(ps: PathSystem, equality: bool = False) -> LPTemplate:
    """Triangle rows for all triples, ``x >= 1``, one stretch row per long path."""
    if not validate_system(ps).consistent:
        raise InconsistentSystem("path system is not consistent")
    pairs = ps.pairs()
    idx = {p: i for i, p in enumerate(pairs)}
    rows = []
    n = ps.n
    for (a, b) in pairs:
        for c in range(n):
            if c in (a, b):
                continue
            d = {}
            _add(d, idx[(a, b)], 1)
            _add(d, idx[pair_key(a, c)], -1)
            _add(d, idx[pair_key(c, b)], -1)
            rows.append(TRow(_terms(d), Fraction(0), f"tri:{a},{b}|{c}"))
    for (a, b) in pairs:
        rows.append(TRow(_terms({idx[(a, b)]: (-1, 0)}), Fraction(-1), f"low:{a},{b}"))
    for (u, v), p in ps.paths.items():
        if len(p) < 3:
            continue
        d = {}
        for x, y in zip(p, p[1:]):
            _add(d, idx[pair_key(x, y)], 1)
        _add(d, idx[(u, v)], 0, -1)
        rows.append(TRow(_terms(d), Fraction(0), f"path:{u},{v}"))
        if equality:
            rows.append(TRow(_terms({j: (-a, -b) for j, (a, b) in d.items()}), Fraction(0),
                             f"path-eq:{u},{v}"))
    return LPTemplate(len(pairs), tuple(_pair_name(p) for p in pairs), tuple(rows), "full", n)


def invariant_template(words: WordTable, equality: bool = False) -> LPTemplate:
    """The class-reduced system: variable ``w_a`` for ``{a, -a}``, ``a = 1..n//2``.

    Triangle rows ``w_c <= w_a + w_b`` are emitted for ``c`` the class of
    ``a + b`` and of ``a - b``; rows with ``c`` in ``{a, b}`` follow from
    positivity and are left out.
    """
    words.validate()
    g = words.group
    n = g.n
    h = n // 2
    rows = []
    seen = set()
    for a in range(1, h + 1):
        for b in range(a, h + 1):
            for c in sorted({g.cls(a + b), g.cls(a - b)}):
                if c == 0 or c in (a, b) or (c, a, b) in seen:
                    continue
                seen.add((c, a, b))
                d = {}
                _add(d, c - 1, 1)
                _add(d, a - 1, -1)
                _add(d, b - 1, -1)
                rows.append(TRow(_terms(d), Fraction(0), f"tri:{c}<={a}+{b}"))
    for a in range(1, h + 1):
        rows.append(TRow(_terms({a - 1: (-1, 0)}), Fraction(-1), f"low:{a}"))
    for x in range(1, h + 1):
        w = words.word(x)
        if len(w) < 2:
            continue
        d = {}
        for letter in w:
            _add(d, g.cls(letter) - 1, 1)
        _add(d, x - 1, 0, -1)
        rows.append(TRow(_terms(d), Fraction(0), f"path:{x}"))
        if equality:
            rows.append(TRow(_terms({j: (-a, -b) for j, (a, b) in d.items()}), Fraction(0),
                             f"path-eq:{x}"))
    return LPTemplate(h, tuple(f"w{a}" for a in range(1, h + 1)), tuple(rows), "class", n)


def template_for(target: Target, invariant: bool = False, equality: bool = False) -> LPTemplate:
    if isinstance(target, LPTemplate):
        return target
    if isinstance(target, WordTable):
        return invariant_template(target, equality)
    if invariant:
        try:
            wt = words_from_system(target)
        except NotInvariant:
            raise
        except InputError as e:
            raise NotInvariant(str(e)) from e
        return invariant_template(wt, equality)
    return metric_template(target, equality)


def build_metric_lp(ps: PathSystem, t) -> LinearSystem:
    return metric_template(ps).at(t)


def build_invariant_metric_lp(words: WordTable, t) -> LinearSystem:
    return invariant_template(words).at(t)


# -- certificates ---------------------------------------------------------

@dataclass(frozen=True)
class MetricCertificate:
    t: Fraction
    kind: str  # full | class
    weights: Mapping  # pair -> value (full) or class id -> value (class)

    def __post_init__(self):
        object.__setattr__(self, "t", Fraction(self.t))
        if self.kind not in ("full", "class"):
            raise InputError(f"unknown certificate kind {self.kind!r}")
        if self.kind == "full":
            object.__setattr__(self, "weights", PairWeights(self.weights))
        else:
            w = {int(k): Fraction(v) for k, v in self.weights.items()}
            for k, v in w.items():
                if v <= 0:
                    raise InputError(f"weight of class {k} is not positive")
            object.__setattr__(self, "weights", dict(sorted(w.items())))

    def to_json(self) -> dict:
        if self.kind == "full":
            ws = {f"{u},{v}": str(x) for (u, v), x in self.weights.items()}
        else:
            ws = {str(a): str(x) for a, x in self.weights.items()}
        return {"format": CERT_FORMAT, "t": str(self.t), "kind": self.kind, "weights": ws}

    @classmethod
    def from_json(cls, doc: dict) -> "MetricCertificate":
        if doc.get("format") != CERT_FORMAT:
            raise InputError(f"expected format {CERT_FORMAT!r}, got {doc.get('format')!r}")
        try:
            kind = doc["kind"]
            if kind == "full":
                ws = {}
                for k, v in doc["weights"].items():
                    u, w = (int(s) for s in k.split(","))
                    ws[(u, w)] = Fraction(v)
            else:
                ws = {int(k): Fraction(v) for k, v in doc["weights"].items()}
            return cls(Fraction(doc["t"]), kind, ws)
        except (KeyError, ValueError, ZeroDivisionError) as e:
            if isinstance(e, InputError):
                raise
            raise InputError(f"malformed certificate: {e}") from e

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def certificate_from_witness(tpl: LPTemplate, t, witness: Sequence) -> MetricCertificate:
    if tpl.kind == "full":
        ws = {}
        for name, x in zip(tpl.names, witness):
            u, v = (int(s) for s in name[1:].split(","))
            ws[(u, v)] = x
        return MetricCertificate(t, "full", ws)
    return MetricCertificate(t, "class", {int(name[1:]): x for name, x in zip(tpl.names, witness)})


def class_to_pair_weights(n: int, weights: Mapping) -> PairWeights:
    g = CyclicGroup(n)
    out = {}
    for u in range(n):
        for v in range(u + 1, n):
            c = g.cls(v - u)
            if c not in weights:
                raise MissingWeight(f"no weight for class {c}")
            out[(u, v)] = weights[c]
    return PairWeights(out)


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    max_stretch: Fraction
    worst_pair: Optional[tuple]
    violations: tuple  # (kind, where, detail)

    def to_json(self) -> dict:
        return {"ok": self.ok, "max_stretch": str(self.max_stretch),
                "max_stretch_decimal": float(self.max_stretch),
                "worst_pair": list(self.worst_pair) if self.worst_pair else None,
                "violations": [{"kind": k, "where": list(w), "detail": d}
                               for k, w, d in self.violations]}


def _verify_full(ps: PathSystem, w: PairWeights, t: Fraction) -> VerifyReport:
    n = ps.n
    viol = []
    for (u, v) in ps.pairs():
        if (u, v) not in w:
            raise MissingWeight(f"no weight for pair {(u, v)}")
    for (a, b) in ps.pairs():
        wab = w[(a, b)]
        for c in range(n):
            if c not in (a, b) and wab > w[pair_key(a, c)] + w[pair_key(c, b)]:
                viol.append(("triangle", (a, b, c), f"w{a},{b} > w{a},{c} + w{c},{b}"))
    best, worst = Fraction(0), None
    for (u, v), p in ps.paths.items():
        s = path_cost(p, w) / w[(u, v)]
        if s > best:
            best, worst = s, (u, v)
        if s > t:
            viol.append(("stretch", (u, v), str(s)))
    return VerifyReport(not viol, best, worst, tuple(viol))


def _verify_class(words: WordTable, w: Mapping, t: Fraction) -> VerifyReport:
    g = words.group
    h = g.n // 2
    for a in range(1, h + 1):
        if a not in w:
            raise MissingWeight(f"no weight for class {a}")
    viol = []
    for a in range(1, h + 1):
        for b in range(a, h + 1):
            for c in {g.cls(a + b), g.cls(a - b)}:
                if c and w[c] > w[a] + w[b]:
                    viol.append(("triangle", (c, a, b), f"w{c} > w{a} + w{b}"))
    best, worst = Fraction(0), None
    for x in range(1, h + 1):
        cost = sum((w[g.cls(letter)] for letter in words.word(x)), Fraction(0))
        s = cost / w[x]
        if s > best:
            best, worst = s, (0, x)
        if s > t:
            viol.append(("stretch", (0, x), str(s)))
    return VerifyReport(not viol, best, worst, tuple(viol))


def verify_certificate(target: Union[PathSystem, WordTable], cert: MetricCertificate) -> VerifyReport:
    """Check positivity, every triangle inequality and every stretch ``<= cert.t``."""
    if cert.kind == "class":
        if isinstance(target, WordTable):
            return _verify_class(target, cert.weights, cert.t)
        return _verify_full(target, class_to_pair_weights(target.n, cert.weights), cert.t)
    ps = target if isinstance(target, PathSystem) else _expand(target)
    return _verify_full(ps, cert.weights, cert.t)


def _expand(words: WordTable) -> PathSystem:
    from .groups import build_from_words
    return build_from_words(words)


# -- bisection --------------------------------------------------------------

@dataclass(frozen=True)
class DeltaResult:
    """``certificate`` is ``None`` for a row subset, whose witness need not be a metric."""

    lo: Fraction
    hi: Fraction
    certificate: Optional[MetricCertificate]
    lo_evidence: Optional[tuple]
    probes: int
    seconds: float = field(default=0.0, compare=False)
    hi_witness: Optional[tuple] = field(default=None, compare=False)

    def to_json(self) -> dict:
        return {"lo": str(self.lo), "hi": str(self.hi),
                "lo_decimal": float(self.lo), "hi_decimal": float(self.hi),
                "probes": self.probes,
                "lo_evidence": [str(y) for y in self.lo_evidence] if self.lo_evidence else None,
                "certificate": self.certificate.to_json() if self.certificate else None}


def _float_feasible(tpl: LPTemplate, t: float) -> bool:
    import numpy as np
    from scipy.optimize import linprog
    A = np.zeros((len(tpl.rows), tpl.num_vars))
    b = np.zeros(len(tpl.rows))
    for i, r in enumerate(tpl.rows):
        for j, (a, c) in r.terms:
            A[i, j] += float(a) + float(c) * t
        b[i] = float(r.rhs)
    res = linprog(np.zeros(tpl.num_vars), A_ub=A, b_ub=b, bounds=(None, None), method="highs")
    return res.status == 0


def _float_bracket(tpl: LPTemplate, lo: float, hi: float, tol: float) -> float:
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if _float_feasible(tpl, mid):
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2


def delta_bisect(target: Target, tol=Fraction(1, 10 ** 6), invariant: bool = False,
                 float_prepass: bool = False, max_pivots: Optional[int] = None) -> DeltaResult:
    """Bracket ``Delta`` by exact bisection on ``[1, n]``.

    Every reported bound is backed by an exact probe: a witness at ``hi``
    (returned as a certificate) and a Farkas vector at ``lo`` when ``lo > 1``.
    The optional floating-point pass only chooses where to probe first.
    """
    start = time.perf_counter()
    tol = Fraction(tol)
    if tol <= 0:
        raise InputError("tolerance must be positive")
    tpl = template_for(target, invariant)
    kw = {} if max_pivots is None else {"max_pivots": max_pivots}
    probes = 0

    def probe(t) -> Feasibility:
        nonlocal probes
        probes += 1
        return feasible(tpl.at(t), **kw)

    one = Fraction(1)
    if tpl.num_vars == 0:
        return DeltaResult(one, one, MetricCertificate(one, _cert_kind(tpl), {}), None, 0,
                           time.perf_counter() - start)
    res = probe(one)
    if res.feasible:
        return DeltaResult(one, one, _maybe_cert(tpl, one, res.witness), None,
                           probes, time.perf_counter() - start, res.witness)
    lo, lo_ev = one, res.farkas
    hi = Fraction(max(tpl.n, 1))
    ones = tuple(Fraction(1) for _ in range(tpl.num_vars))
    if tpl.at(hi).satisfies(ones):
        hi_w = ones
    else:
        res = probe(hi)
        if not res.feasible:
            raise InputError(f"system is not {hi}-metric; the upper end of the search fails")
        hi_w = res.witness
    if float_prepass and hi - lo > tol:
        tau = Fraction(_float_bracket(tpl, float(lo), float(hi), float(tol) / 8))
        for cand in (tau + tol / 2, tau - tol / 2):
            if lo < cand < hi:
                res = probe(cand)
                if res.feasible:
                    hi, hi_w = cand, res.witness
                else:
                    lo, lo_ev = cand, res.farkas
    while hi - lo > tol:
        mid = (lo + hi) / 2
        res = probe(mid)
        if res.feasible:
            hi, hi_w = mid, res.witness
        else:
            lo, lo_ev = mid, res.farkas
    return DeltaResult(lo, hi, _maybe_cert(tpl, hi, hi_w), lo_ev if lo > 1 else None, probes,
                       time.perf_counter() - start, hi_w)


def _maybe_cert(tpl: LPTemplate, t, witness) -> Optional[MetricCertificate]:
    return None if tpl.kind == "custom" else certificate_from_witness(tpl, t, witness)


def _cert_kind(tpl: LPTemplate) -> str:
    return "full" if tpl.kind == "full" else "class"


@dataclass(frozen=True)
class MetricDecision:
    metric: bool
    certificate: Optional[MetricCertificate]
    farkas: Optional[tuple]
    tags: tuple = ()

    def to_json(self) -> dict:
        out = {"metric": self.metric}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        if self.farkas is not None:
            out["farkas"] = {tag: str(y) for tag, y in zip(self.tags, self.farkas) if y}
        return out


def is_metric(target: Union[PathSystem, WordTable]) -> MetricDecision:
    """Decide whether some metric makes every system path a shortest path."""
    tpl = template_for(target, equality=True)
    if tpl.num_vars == 0:
        return MetricDecision(True, MetricCertificate(1, _cert_kind(tpl), {}), None)
    sys = tpl.at(1)
    res = feasible(sys)
    tags = tuple(r.tag for r in sys.rows)
    if res.feasible:
        return MetricDecision(True, certificate_from_witness(tpl, 1, res.witness), None, tags)
    return MetricDecision(False, None, res.farkas, tags)


# -- exact thresholds ------------------------------------------------------

@dataclass
class AlgebraicThreshold:
    polynomial: Poly
    lo: Fraction
    hi: Fraction
    value: RealNumber
    attained: bool
    terminal: list  # cells with the rows left after eliminating all but ``keep``
    probe_below: Optional[Fraction] = None
    probe_above: Optional[Fraction] = None

    @property
    def decimal(self) -> str:
        if isinstance(self.value, AlgebraicNumber):
            return self.value.decimal(12)
        return f"{float(self.value):.12f}"

    def to_json(self, names=None) -> dict:
        return {"polynomial": str(self.polynomial), "interval": [str(self.lo), str(self.hi)],
                "decimal": self.decimal, "attained": self.attained,
                "probe_below": str(self.probe_below) if self.probe_below is not None else None,
                "probe_above": str(self.probe_above) if self.probe_above is not None else None,
                "terminal": [{"cell": str(c), "rows": [r.format(names) for r in rows]}
                             for c, rows in self.terminal]}


def _homogenized(psys: ParamSystem, t: Fraction, keep: Optional[int]) -> LinearSystem:
    """``A x - b h <= 0``, ``h >= 1`` and ``x_keep >= 1``, instantiated at ``t``.

    Feasible iff ``A x <= b`` has a solution with ``x_keep > 0``.
    """
    k = psys.num_vars
    rows = []
    for r in psys.rows:
        if r.strict:
            continue
        coeffs = tuple(c(t) if c.coeffs else Fraction(0) for c in r.coeffs)
        rows.append(Row(coeffs + (-(r.rhs(t) if r.rhs.coeffs else Fraction(0)),), 0, r.tag))
    rows.append(Row((0,) * k + (-1,), -1, "hom"))
    if keep is not None:
        c = [Fraction(0)] * (k + 1)
        c[keep] = Fraction(-1)
        rows.append(Row(tuple(c), -1, "keep"))
    return LinearSystem(k + 1, tuple(rows))


def _cell_feasible_parts(cell: Cell, rows) -> list[Cell]:
    """Subcells of ``cell`` on which the variable-free rows all hold."""
    conds = terminal_conditions(rows)
    if any(not r.is_zero() for r in rows):
        raise SignAmbiguous(f"rows with variables left on cell {cell}")
    parts = split_cell(cell, [p for p, _ in conds if not p.is_const()])
    out = []
    for part in parts:
        ok = True
        for p, strict in conds:
            s = poly_sign_on_cell(p, part)
            if s is None:
                raise SignAmbiguous(f"sign of {p} not constant on {part}")
            if s < 0 or (s == 0 and strict):
                ok = False
                break
        if ok:
            out.append(part)
    return out


def _linear_poly(q: Fraction) -> Poly:
    return Poly((-q.numerator, q.denominator))


def exact_threshold(target: Union[Target, ParamSystem], interval: Interval,
                    order: Optional[Sequence] = None, keep=None,
                    width=Fraction(1, 10 ** 12), rows: Optional[Sequence[str]] = None,
                    verify: bool = True) -> AlgebraicThreshold:
    """Least ``t`` in ``interval`` at which the system is feasible, exactly.

    With ``keep`` the system is read as homogeneous in spirit: a solution
    must have ``x_keep > 0``.  Variables in ``order`` go first, then ``keep``,
    then any remaining ones greedily.  The reduced Paley 29 subsystem gets
    its known good order when none is given.  The threshold comes back as a root of
    an integer polynomial with a rational isolating interval of length at
    most ``width``; two exact probes just outside the interval confirm it.
    """
    if isinstance(target, ParamSystem):
        psys = ParamSystem(target.num_vars, target.rows, interval, target.names)
    else:
        if (order is None and rows is not None and set(rows) - {PALEY29_NORM} == set(PALEY29_ROWS)
                and isinstance(target, WordTable) and target == paley_system(29)):
            order, keep = PALEY29_ORDER, keep if keep is not None else PALEY29_KEEP
        tpl = template_for(target)
        if rows is not None:
            tpl = tpl.select(rows)
        psys = tpl.param(interval)
    keep_idx = psys.var_index(keep) if keep is not None else None
    order_idx = [psys.var_index(v) for v in order] if order is not None else None

    base_rows = list(psys.rows)
    if keep_idx is not None:
        c = [Poly()] * psys.num_vars
        c[keep_idx] = Poly.const(-1)
        base_rows.append(ParamRow(tuple(c), Poly(), f"pos:{psys.names[keep_idx] if psys.names else keep_idx}",
                                  strict=True))
    full = ParamSystem(psys.num_vars, base_rows, interval, psys.names)

    if order_idx is not None:
        stage1 = parametric_eliminate(full, order_idx)
    else:
        stage1 = parametric_eliminate(full, None, keep=[keep_idx] if keep_idx is not None else ())
    rest_set = set(range(psys.num_vars)) - set(order_idx or ())
    stage2 = eliminate_on_cells([(c, r) for c, r in stage1], None, rest_set)

    feasible_parts: list[Cell] = []
    for cell, rows_left in stage2:
        feasible_parts.extend(_cell_feasible_parts(cell, rows_left))
    if not feasible_parts:
        raise NoThresholdInInterval(f"the system is infeasible on all of {interval}")
    feasible_parts.sort(key=functools.cmp_to_key(lambda a, b: cmp_real(a.lo, b.lo)))
    first = feasible_parts[0]
    value = first.lo
    attained = first.lo_closed
    if isinstance(value, AlgebraicNumber):
        poly = strip_rational_roots(value.poly)
        value = AlgebraicNumber(poly, value.lo, value.hi) if poly != value.poly else value
        value.refine(width)
        lo, hi = value.lo, value.hi
    else:
        value = Fraction(value)
        poly = _linear_poly(value)
        lo = hi = value

    result = AlgebraicThreshold(poly, lo, hi, value, attained,
                                [(c.cell, c.terminal) for c in stage1])
    if verify:
        step = max(hi - lo, Fraction(width))
        above = hi + step
        if above in interval:
            if not feasible(_homogenized(psys, above, keep_idx)).feasible:
                raise SignAmbiguous(f"probe at {above} above the threshold is infeasible")
            result.probe_above = above
        below = lo - step
        if below in interval and cmp_real(value, interval.lo) > 0:
            if feasible(_homogenized(psys, below, keep_idx)).feasible:
                raise SignAmbiguous(f"probe at {below} below the threshold is feasible")
            result.probe_below = below
    return result


# -- the Paley 29 data -----------------------------------------------------

PALEY29_ORDER = ("w3", "w8", "w10", "w11", "w14", "w7", "w4", "w5", "w1")
PALEY29_KEEP = "w9"
PALEY29_NORM = "low:9"
PALEY29_ROWS = ("path:3", "path:8", "path:10", "path:11", "path:14",
                "tri:3<=1+4", "tri:8<=1+9", "tri:10<=1+9", "tri:11<=4+7", "tri:14<=5+9")
PALEY29_CUBIC = Poly((12, -10, -3, 2))

# class weights as (constant, r, r^2) coefficients
PALEY29_WEIGHTS = {
    1: (0, 0, 1), 2: (0, 2, 0), 3: (0, 3, 0), 4: (0, 3, -1), 5: (0, 3, -1),
    6: (6, -2, -1), 7: (6, -2, -1), 8: (6, -2, 0), 9: (6, -2, -1), 10: (6, -2, 0),
    11: (6, 1, -2), 12: (6, 1, -2), 13: (6, 1, -3), 14: (6, 1, -2),
}


def paley29_template() -> LPTemplate:
    return invariant_template(paley_system(29))


def paley29_reduced_template() -> LPTemplate:
    """The ten-row subsystem plus ``w9 >= 1``, without which it is homogeneous."""
    return paley29_template().select(PALEY29_ROWS + (PALEY29_NORM,))


def paley29_weights(r) -> dict:
    r = Fraction(r)
    return {a: c0 + c1 * r + c2 * r * r for a, (c0, c1, c2) in PALEY29_WEIGHTS.items()}


def paley29_root(width=Fraction(1, 10 ** 13)) -> AlgebraicNumber:
    """The middle root of ``2t^3 - 3t^2 - 10t + 12``, isolated in ``(1, 6/5)``."""
    return AlgebraicNumber(PALEY29_CUBIC, Fraction(1), Fraction(6, 5)).refine(width)
