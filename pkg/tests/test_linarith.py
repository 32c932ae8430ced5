import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from scipy.optimize import linprog

from pathmetric.delta import paley29_reduced_template
from pathmetric.errors import InputError, ResourceCap
from pathmetric.linarith import (AlgebraicNumber, Interval, LinearSystem, ParamRow, ParamSystem,
                                 Poly, Row, feasible, fm_eliminate, isolate_roots,
                                 parametric_eliminate, parse_poly, projection_feasible, prune,
                                 real_roots)
from pathmetric.linarith.lpformat import format_lp, load_lp, parse_lp
from pathmetric.linarith.parametric import terminal_conditions
from pathmetric.linarith.poly import format_poly, strip_rational_roots

T = Poly.t()


def system(rows, k=None):
    k = k if k is not None else len(rows[0][0])
    return LinearSystem(k, tuple(Row(c, b, f"r{i + 1}") for i, (c, b) in enumerate(rows)))


def random_system(rng, k, m, lo=-3, hi=3):
    return system([([rng.randint(lo, hi) for _ in range(k)], rng.randint(-4, 6)) for _ in range(m)], k)


def scipy_feasible(sys):
    A = [[float(c) for c in r.coeffs] for r in sys.rows]
    b = [float(r.rhs) for r in sys.rows]
    res = linprog([0] * sys.num_vars, A_ub=A, b_ub=b, bounds=[(None, None)] * sys.num_vars,
                  method="highs")
    assert res.status in (0, 2)
    return res.status == 0


# -- simplex ---------------------------------------------------------------

def test_contradictory_bounds():
    sys = system([([1], 0), ([-1], -1)])
    res = feasible(sys)
    assert not res.feasible
    assert res.farkas == (1, 1)


def test_origin_feasible():
    res = feasible(system([([1, 1], 1), ([-1, 0], 0), ([0, -1], 0)]))
    assert res.feasible
    assert res.witness == (0, 0)


def test_empty_system():
    assert feasible(LinearSystem(3, ())).witness == (0, 0, 0)


def test_reduced_paley_instantiations():
    tpl = paley29_reduced_template()
    assert not feasible(tpl.at(1)).feasible
    assert feasible(tpl.at(2)).feasible


def test_pivot_cap():
    rng = random.Random(3)
    while True:
        sys = random_system(rng, 4, 20)
        if feasible(sys).pivots > sys.num_vars + 1:
            break
    with pytest.raises(ResourceCap):
        feasible(sys, max_pivots=sys.num_vars)


def test_matches_scipy_on_random_systems():
    rng = random.Random(11)
    for _ in range(300):
        k = rng.randint(1, 6)
        sys = random_system(rng, k, rng.randint(1, 12))
        res = feasible(sys)
        assert res.feasible == scipy_feasible(sys)
        if res.feasible:
            assert sys.satisfies(res.witness)
        else:
            assert sys.is_farkas(res.farkas)


def test_pure_bland_agrees_with_greedy():
    rng = random.Random(5)
    for _ in range(100):
        sys = random_system(rng, rng.randint(2, 6), rng.randint(3, 15))
        a = feasible(sys)
        b = feasible(sys, greedy_pivots=0)
        assert a.feasible == b.feasible


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 5), st.lists(st.tuples(st.lists(st.integers(-3, 3), min_size=5, max_size=5),
                                             st.fractions(-5, 5, max_denominator=6)),
                                   min_size=1, max_size=14))
def test_evidence_checks_out(k, raw):
    sys = system([(c[:k], b) for c, b in raw], k)
    res = feasible(sys, verify=False)
    # a generous bound on pivots stands in for termination
    assert res.pivots <= 50 * (len(raw) + k)
    if res.feasible:
        assert sys.satisfies(res.witness)
    else:
        assert all(v >= 0 for v in res.farkas)
        assert sys.is_farkas(res.farkas)


# -- Fourier-Motzkin -------------------------------------------------------

def test_fm_single_pairing():
    sys = system([([0, 1], 3), ([0, -1], -1), ([1, -1], 0)])
    out = fm_eliminate(sys, [1])
    assert [(r.coeffs, r.rhs) for r in out.rows] == [((1, 0), 3)]
    assert out.rows[0].sources == {"r1", "r3"}


def test_fm_surfaces_contradiction():
    out = fm_eliminate(system([([1], 0), ([-1], -1)]), [0])
    assert [(r.coeffs, r.rhs) for r in out.rows] == [((0,), -1)]
    assert not projection_feasible(out)


def test_prune_drops_tautologies_and_dominated():
    rows = [Row((0, 0), 3, "a"), Row((1, 2), 5, "b"), Row((2, 4), 8, "c"), Row((1, 0), 1, "d")]
    kept = prune(rows)
    assert {r.tag for r in kept} == {"c", "d"}


def test_fm_bad_order():
    sys = system([([1, 1], 1)])
    with pytest.raises(ValueError):
        fm_eliminate(sys, [0, 0])
    with pytest.raises(ValueError):
        fm_eliminate(sys, [5])


def test_fm_row_cap():
    rows = [([c, 1], c) for c in range(1, 40)] + [([-c, 1], c) for c in range(1, 40)]
    with pytest.raises(ResourceCap):
        fm_eliminate(system(rows), [0], max_rows=100)


def test_fm_agrees_with_simplex():
    rng = random.Random(2024)
    for _ in range(200):
        k = rng.randint(1, 5)
        sys = random_system(rng, k, rng.randint(1, 10))
        proj = fm_eliminate(sys, list(range(k)))
        assert projection_feasible(proj) == feasible(sys).feasible



def test_fm_agrees_with_simplex_on_dense_systems():
    rng = random.Random(5)
    for _ in range(60):
        sys = random_system(rng, 5, rng.randint(8, 14))
        assert projection_feasible(fm_eliminate(sys, [0, 1, 2, 3, 4])) == feasible(sys).feasible


def test_partial_projection_is_exact():
    # a point lies in the projection iff fixing it leaves the rest feasible
    rng = random.Random(8)
    for _ in range(25):
        sys = random_system(rng, 4, rng.randint(4, 10))
        proj = fm_eliminate(sys, [0, 1])
        for _ in range(8):
            y = [Fraction(rng.randint(-12, 12), rng.randint(1, 3)) for _ in range(2)]
            fixed = system([(list(r.coeffs[:2]), r.rhs - r.coeffs[2] * y[0] - r.coeffs[3] * y[1])
                            for r in sys.rows], 2)
            inside = all(r.coeffs[2] * y[0] + r.coeffs[3] * y[1] <= r.rhs for r in proj.rows)
            assert inside == feasible(fixed).feasible

# -- polynomials and roots -------------------------------------------------

def test_parse_and_format_poly():
    p = parse_poly("2t^3-3t^2-10t+12")
    assert p.coeffs == (12, -10, -3, 2)
    assert format_poly(p) == "2t^3-3t^2-10t+12"
    assert parse_poly("-t") == -T
    assert parse_poly("7") == Poly.const(7)


def test_poly_arithmetic():
    p = (T + 2) * Poly((12, -10, -3, 2))
    assert p == parse_poly("2t^4+t^3-16t^2-8t+24")
    assert (p - p).is_zero()
    assert p(Fraction(1, 2)) == Fraction(2, 16) + Fraction(1, 8) - 4 - 4 + 24


def test_isolate_cubic_middle_root():
    cubic = Poly((12, -10, -3, 2))
    out = isolate_roots(cubic, (1, Fraction(6, 5)), width=Fraction(1, 10 ** 10))
    assert len(out) == 1
    a, b = out[0]
    assert b - a <= Fraction(1, 10 ** 10)
    t = sympy.symbols("t")
    roots = sorted(sympy.Poly(2 * t ** 3 - 3 * t ** 2 - 10 * t + 12).nroots(n=30))
    mid = roots[1]
    assert a <= mid <= b
    assert abs(float(mid) - 1.1034306692638) < 1e-12


def test_isolate_sqrt2():
    out = isolate_roots(T * T - 2, (1, 2), width=Fraction(1, 10 ** 6))
    assert len(out) == 1
    a, b = out[0]
    assert a * a < 2 < b * b
    assert b - a <= Fraction(1, 10 ** 6)


def test_isolate_root_outside():
    assert isolate_roots(T + 2, (1, Fraction(6, 5))) == []


def test_isolate_rational_roots():
    p = (2 * T - 3) * (T - 5)
    out = isolate_roots(p, (0, 10))
    assert len(out) == 2
    (a, b), (c, d) = out
    assert (a < Fraction(3, 2) < b) or a == b == Fraction(3, 2)
    assert c <= 5 <= d
    assert real_roots(p, 0, 10) == [Fraction(3, 2), Fraction(5)]


def test_real_roots_mixed():
    p = (T - 1) * (T * T - 3)
    roots = real_roots(p, -5, 5)
    assert roots[1] == 1
    assert isinstance(roots[0], AlgebraicNumber)
    assert abs(float(roots[2]) - 3 ** 0.5) < 1e-9


def test_strip_rational_roots():
    q = strip_rational_roots((T + 2) * (T - 1) * Poly((12, -10, -3, 2)))
    assert q == Poly((12, -10, -3, 2))


def test_isolate_zero_polynomial_rejected():
    with pytest.raises(ValueError):
        isolate_roots(Poly(), (0, 1))


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(-20, 20), min_size=2, max_size=7).filter(lambda c: c[-1] != 0))
def test_isolation_matches_sympy(coeffs):
    p = Poly(coeffs)
    t = sympy.symbols("t")
    sp = sympy.Poly(list(reversed(coeffs)), t)
    expected = sorted({r for r in sympy.real_roots(sp) if -8 <= r <= 8})
    out = isolate_roots(p, (-8, 8), width=Fraction(1, 1000))
    assert len(out) == len(expected)
    for (a, b), r in zip(out, expected):
        assert a <= r <= b
        assert b - a <= Fraction(1, 1000)
    for (a1, b1), (a2, b2) in zip(out, out[1:]):
        assert b1 <= a2 and (b1 < a2 or a1 == b1 or a2 == b2)


# -- parametric elimination ------------------------------------------------

def psys(rows, interval, k=1, names=None):
    return ParamSystem(k, tuple(ParamRow(tuple(c), r, f"r{i + 1}") for i, (c, r) in enumerate(rows)),
                       interval, names)


def test_parametric_single_condition():
    s = psys([((T,), Poly.const(1)), ((Poly.const(-1),), Poly.const(-1))],
             Interval(Fraction(0), Fraction(2), False, True))
    cells = parametric_eliminate(s, [0])
    assert len(cells) == 1
    assert str(cells[0].cell) == "(0, 2]"
    conds = terminal_conditions(cells[0].terminal)
    # the only nontrivial condition is 1 - t >= 0
    assert [(p.content_free() if hasattr(p, "content_free") else p, strict) for p, strict in conds
            if not p.is_const()] == [(Poly((1, -1)), False)]


def test_parametric_sign_split():
    s = psys([((T - 1,), Poly.const(1)), ((Poly.const(-1),), Poly.const(-1))],
             Interval(Fraction(1, 2), Fraction(2), False, False))
    cells = parametric_eliminate(s, [0])
    assert [str(c.cell) for c in cells] == ["(1/2, 1)", "{1}", "(1, 2)"]
    # on (1, 3) the bound x <= 1/(t-1) meets x >= 1 and leaves t <= 2
    s = ParamSystem(1, s.rows, Interval(Fraction(1, 2), Fraction(3), False, False))
    cells = parametric_eliminate(s, [0])
    conds = {str(c.cell): [(p.content_free(), strict) for p, strict in terminal_conditions(c.terminal)]
             for c in cells}
    assert conds["(1/2, 1)"] == []
    assert conds["(1, 3)"] == [(Poly((2, -1)), False)]


def test_parametric_paley_subsystem():
    tpl = paley29_reduced_template()
    sys = tpl.param(Interval(Fraction(1), Fraction(6, 5), False, True))
    order = ("w3", "w8", "w10", "w11", "w14", "w7", "w4", "w5", "w1")
    cells = parametric_eliminate(sys, order, keep=("w9",))
    target = (T + 2) * Poly((12, -10, -3, 2))
    j = sys.var_index("w9")
    found = False
    for c in cells:
        for r in c.terminal:
            if r.coeffs[j].is_zero() or any(not x.is_zero() for i, x in enumerate(r.coeffs) if i != j):
                continue
            coeff = r.coeffs[j]
            q, rem = divmod(coeff.coeffs[-1], target.coeffs[-1])
            if rem == 0 and q > 0 and coeff == target * q:
                found = True
    assert found


def test_parametric_order_rejects_kept():
    s = psys([((T,), Poly.const(1))], Interval(Fraction(0), Fraction(1), True, True),
             names=("x",))
    with pytest.raises(ValueError):
        parametric_eliminate(s, ["x"], keep=["x"])


def test_monotone_instantiation():
    tpl = paley29_reduced_template()
    rng = random.Random(9)
    for _ in range(20):
        t0 = Fraction(rng.randint(100, 140), 100)
        t1 = t0 + Fraction(rng.randint(1, 30), 100)
        if feasible(tpl.at(t0)).feasible:
            assert feasible(tpl.at(t1)).feasible


def test_interval_parse():
    iv = Interval.parse("(1,6/5]")
    assert Fraction(6, 5) in iv and 1 not in iv
    with pytest.raises(InputError):
        Interval.parse("[2,1]")


# -- lp/v1 -----------------------------------------------------------------

def test_lp_parse_plain():
    sys = load_lp("x + 2*y <= 3 # a\n-x >= -1/2\n\n# comment\ny - x <= 0\n")
    assert sys.names == ("x", "y")
    got = [(tuple(c / r.coeffs[0] for c in r.coeffs), r.rhs / r.coeffs[0], r.tag) for r in sys.rows[:2]]
    assert got == [((1, 2), 3, "a"), ((1, 0), Fraction(1, 2), "r2")]
    assert (sys.rows[2].coeffs, sys.rows[2].rhs) == ((-1, 1), 0)


def test_lp_parse_parametric_round_trip():
    text = "(2t^3-3t^2-10t+12)*x - y <= 1/2 # p\n(-t)*y < 0\n"
    iv = Interval(Fraction(1), Fraction(2), True, True)
    sys = load_lp(text, iv)
    assert sys.rows[0].coeffs[0] == Poly((24, -20, -6, 4))
    assert sys.rows[1].strict
    again = load_lp(format_lp(sys), iv)
    assert again.rows == sys.rows


def test_lp_signs():
    names, _ = parse_lp("x + -2*y - -3*z <= 0")
    assert names == ["x", "y", "z"]
    sys = load_lp("x + -2*y - -3*z <= 0")
    assert sys.rows[0].coeffs == (1, -2, 3)


def test_lp_needs_interval_for_t():
    with pytest.raises(InputError):
        load_lp("(t)*x <= 1")
    with pytest.raises(InputError):
        load_lp("x <= 1 <= 2")
