"""End-to-end acceptance checks, one test per criterion.

Run ``pytest tests/test_acceptance.py``; a pass/fail line per criterion is
printed in the terminal summary.
"""

import io
import itertools
import json
import random
import time
from fractions import Fraction

import mpmath
import networkx as nx

from pathmetric.cli import execute
from pathmetric.core import PairWeights, validate_system
from pathmetric.delta import (PALEY29_ORDER, PALEY29_ROWS, MetricCertificate, class_to_pair_weights,
                              delta_bisect, exact_threshold, invariant_template, is_metric,
                              metric_template, paley29_reduced_template, paley29_template,
                              paley29_weights, verify_certificate)
from pathmetric.groups import (CyclicGroup, bfs_diameter, build_from_words, cayley_construction,
                               paley_system, petersen_system, sample_X)
from pathmetric.linarith import Interval, LinearSystem, Poly, Row, feasible, fm_eliminate, \
    projection_feasible
from pathmetric.oracle import (complete_graph, enumerate_consistent_systems, naive_stretch,
                               random_weights, shortest_path_system)

ONE = Fraction(1)
CUBIC = Poly((12, -10, -3, 2))  # 2t^3 - 3t^2 - 10t + 12


def criterion(num, title):
    def mark(fn):
        fn.criterion, fn.criterion_title = num, title
        return fn
    return mark


def cli(*argv):
    out = io.StringIO()
    code = execute([str(a) for a in argv], out)
    assert code == 0, f"exit {code} for {argv}"
    return json.loads(out.getvalue())


def middle_root():
    with mpmath.workdps(60):
        return sorted(r.real for r in mpmath.polyroots([2, -3, -10, 12], maxsteps=200,
                                                       extraprec=200))[1]


def mpq(q):
    return mpmath.mpf(q.numerator) / q.denominator


@criterion(1, "Petersen: not metric (Farkas), Delta bracket [1, 1 + 1e-6]")
def test_criterion_1_petersen(tmp_path):
    start = time.perf_counter()
    path = tmp_path / "petersen.json"
    path.write_text(petersen_system().dumps())
    doc = cli("is-metric", path)
    assert doc["metric"] is False
    lp = metric_template(petersen_system(), equality=True).at(1)
    y = [Fraction(doc["farkas"].get(r.tag, "0")) for r in lp.rows]
    assert lp.is_farkas(y)
    doc = cli("delta", path, "--tol", "1e-6")
    assert Fraction(doc["lo"]) == 1
    assert Fraction(doc["hi"]) <= 1 + Fraction(1, 10 ** 6)
    assert time.perf_counter() - start < 10


@criterion(2, "Paley 29: invariant bracket inside [1.1030, 1.1032], midpoint a cubic root")
def test_criterion_2_paley_bracket(tmp_path):
    start = time.perf_counter()
    path = tmp_path / "paley29.json"
    path.write_text(paley_system(29).dumps())
    doc = cli("delta", "--invariant", path, "--tol", "1e-8")
    lo, hi = Fraction(doc["lo"]), Fraction(doc["hi"])
    elapsed = time.perf_counter() - start
    mid = (lo + hi) / 2
    assert hi - lo <= Fraction(1, 10 ** 8)
    assert abs(CUBIC(mid)) <= Fraction(1, 10 ** 6)
    assert elapsed < 30
    assert Fraction("1.1030") <= lo and hi <= Fraction("1.1032"), \
        f"bracket [{float(lo):.10f}, {float(hi):.10f}] is outside [1.1030, 1.1032]"


@criterion(3, "exact threshold of the reduced Paley 29 subsystem is the cubic's middle root")
def test_criterion_3_exact_algebra():
    start = time.perf_counter()
    iv = Interval(ONE, Fraction(6, 5), False, True)
    thr = exact_threshold(paley_system(29), iv, rows=PALEY29_ROWS, order=PALEY29_ORDER, keep="w9")
    elapsed = time.perf_counter() - start
    assert thr.polynomial.primitive() == CUBIC
    # an isolating interval: a sign change and nothing else of the cubic's roots inside
    assert CUBIC.sign_at(thr.lo) * CUBIC.sign_at(thr.hi) <= 0
    with mpmath.workdps(60):
        roots = sorted(r.real for r in mpmath.polyroots([2, -3, -10, 12], maxsteps=200,
                                                        extraprec=200))
        inside = [r for r in roots if mpq(thr.lo) <= r <= mpq(thr.hi)]
        assert inside == [roots[1]]
    target = (Poly.t() + 2) * CUBIC
    names = paley29_reduced_template().names
    j = names.index("w9")
    found = False
    for _, rows in thr.terminal:
        for r in rows:
            c = r.coeffs[j]
            if c.is_zero() or any(not x.is_zero() for i, x in enumerate(r.coeffs) if i != j):
                continue
            q, rem = divmod(c.coeffs[-1], target.coeffs[-1])
            if rem == 0 and q > 0 and c == target * q:
                found = True
    assert found, "no terminal coefficient equal to (t+2) times the cubic"
    assert elapsed < 10


@criterion(4, "the fourteen class weights at r_hat certify t = r_hat + 1e-9")
def test_criterion_4_certificate():
    with mpmath.workdps(60):
        root = middle_root()
        r_hat = Fraction(mpmath.nstr(root, 40))
        assert abs(mpq(r_hat) - root) <= mpmath.mpf(10) ** -12
    t = r_hat + Fraction(1, 10 ** 9)
    weights = paley29_weights(r_hat)
    assert len(weights) == 14
    rep = verify_certificate(paley_system(29), MetricCertificate(t, "class", weights))
    assert rep.ok, rep.violations[:3]
    # second route: expand to all 406 pairs and check by brute force
    pair_w = class_to_pair_weights(29, weights)
    assert naive_stretch(build_from_words(paley_system(29)), pair_w) <= t


@criterion(5, "Cayley(101, {+-1, +-10}, 9): d = 2, bound 9/8, LP infeasible at 9/8 - 1e-6")
def test_criterion_5_lower_bound():
    start = time.perf_counter()
    params, wt = cayley_construction(101, [1, -1, 10, -10], 9)
    assert params.d == 2 and params.bound == Fraction(9, 8)
    # the three conditions, rechecked by brute force
    grp = CyclicGroup(101)
    assert all(grp.order(x) > 2 * 9 for x in params.X)
    for g, h in itertools.product(params.X, repeat=2):
        if (g - h) % 101 and (g + h) % 101:
            assert all((i * g - j * h) % 101 for i in range(-9, 10) for j in range(-9, 10) if i and j)
    g = nx.Graph((u, (u + x) % 101) for u in range(101) for x in params.S)
    assert max(nx.shortest_path_length(g, 0, (9 * x) % 101) for x in params.X) == 2
    assert validate_system(build_from_words(wt)).consistent
    lp = invariant_template(wt).at(Fraction(9, 8) - Fraction(1, 10 ** 6))
    res = feasible(lp)
    assert not res.feasible and lp.is_farkas(res.farkas)
    assert time.perf_counter() - start < 60


@criterion(6, "K3/K4: bisection bracket contains the exact threshold")
def test_criterion_6_oracle_equivalence():
    start = time.perf_counter()
    counts = {}
    for n in (3, 4):
        systems = list(enumerate_consistent_systems(n))
        again = [ps.paths for ps in enumerate_consistent_systems(n)]
        assert [ps.paths for ps in systems] == again
        counts[n] = len(systems)
        for ps in systems:
            res = delta_bisect(ps, Fraction(1, 10 ** 6))
            thr = exact_threshold(ps, Interval(ONE, Fraction(n)))
            assert res.lo <= thr.lo and thr.hi <= res.hi, (ps.paths, res.lo, res.hi, thr.lo)
    assert counts[3] == 4
    assert counts[4] == 53
    assert time.perf_counter() - start < 300


@criterion(7, "20 shortest-path systems on K6 are metric with Delta <= 1 + 1e-6")
def test_criterion_7_metric_systems():
    g = complete_graph(6)
    for seed in range(20):
        ps, _ = shortest_path_system(g, random_weights(g, random.Random(seed)))
        assert is_metric(ps).metric
        assert delta_bisect(ps, Fraction(1, 10 ** 6)).hi <= 1 + Fraction(1, 10 ** 6)


@criterion(8, "sampler on Z_10007, k=12, m=5: >= 8 of seeds 0-9 succeed and re-verify")
def test_criterion_8_sampler():
    n, k, m = 10007, 12, 5
    grp = CyclicGroup(n)
    ok = 0
    for seed in range(10):
        try:
            res = sample_X(n, k, m, seed, max_attempts=20)
        except Exception:
            continue
        ok += 1
        X = [x % n for x in res.X]
        assert len(set(X)) == 2 * k and set(X) == {-x % n for x in X}
        assert all(grp.order(x) > 2 * m for x in X)
        for g, h in itertools.product(X, repeat=2):
            if (g - h) % n == 0 or (g + h) % n == 0:
                continue
            assert all((i * g - j * h) % n for i in range(-m, m + 1) for j in range(-m, m + 1)
                       if i and j), (seed, g, h)
        cay = nx.Graph((u, (u + x) % n) for u in range(n) for x in X)
        diam = max(nx.single_source_shortest_path_length(cay, 0).values())
        assert diam == res.diameter == bfs_diameter(n, res.X)
        assert diam <= 12
    assert ok >= 8


@criterion(9, "monotone feasibility in t; FM agrees with the simplex")
def test_criterion_9_monotonicity_and_fm():
    rng = random.Random(9)
    templates = [paley29_template(), invariant_template(paley_system(29)),
                 invariant_template(cayley_construction(19, [1, -1, 4, -4], 3)[1]),
                 metric_template(petersen_system())]
    for _ in range(50):
        tpl = rng.choice(templates)
        t0 = Fraction(rng.randint(100, 250), 100)
        t1 = t0 + Fraction(rng.randint(1, 100), 100)
        r0 = feasible(tpl.at(t0))
        if r0.feasible:
            assert feasible(tpl.at(t1)).feasible
            assert tpl.at(t1).satisfies(r0.witness)
    for _ in range(200):
        k = rng.randint(1, 5)
        rows = tuple(Row(tuple(rng.randint(-3, 3) for _ in range(k)), rng.randint(-4, 6), f"r{i}")
                     for i in range(rng.randint(1, 10)))
        sys = LinearSystem(k, rows)
        assert projection_feasible(fm_eliminate(sys, list(range(k)))) == feasible(sys).feasible
