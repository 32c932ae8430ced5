import itertools
import random
from fractions import Fraction

import networkx as nx
import pytest

from pathmetric.core import Graph, PairWeights, PathSystem, validate_system
from pathmetric.delta import is_metric, paley29_weights
from pathmetric.errors import AmbiguousShortestPath, InputError, NotAMetric
from pathmetric.groups import build_from_words, paley_system, petersen_system
from pathmetric.oracle import (complete_graph, enumerate_consistent_systems, naive_stretch,
                               random_weights, shortest_path_system)


def brute_force_systems(n):
    pairs = list(itertools.combinations(range(n), 2))
    others = {p: [x for x in range(n) if x not in p] for p in pairs}
    cands = {}
    for u, v in pairs:
        cands[(u, v)] = [(u, *mid, v) for k in range(n - 1)
                         for mid in itertools.permutations(others[(u, v)], k)]
    found = set()
    for choice in itertools.product(*(cands[p] for p in pairs)):
        ps = PathSystem.from_paths(n, choice)
        if validate_system(ps).consistent:
            found.add(tuple(sorted(ps.paths.items())))
    return found


@pytest.mark.parametrize("n, count", [(2, 1), (3, 4), (4, 53)])
def test_enumeration_matches_brute_force(n, count):
    listed = [tuple(sorted(ps.paths.items())) for ps in enumerate_consistent_systems(n)]
    assert len(listed) == len(set(listed)) == count
    assert set(listed) == brute_force_systems(n)


def test_enumeration_deterministic_and_bounded():
    a = [ps.paths for ps in enumerate_consistent_systems(4)]
    b = [ps.paths for ps in enumerate_consistent_systems(4)]
    assert a == b
    for n in (1, 6):
        with pytest.raises(InputError):
            next(enumerate_consistent_systems(n))


def test_three_vertex_systems():
    systems = list(enumerate_consistent_systems(3))
    detours = sorted(sum(len(p) > 2 for p in ps.paths.values()) for ps in systems)
    assert detours == [0, 1, 1, 1]


def test_shortest_paths_on_path_graph():
    g = Graph.from_edges(5, [(i, i + 1) for i in range(4)])
    ps, dist = shortest_path_system(g, {e: 1 for e in g.edges})
    assert ps.path(0, 4) == (0, 1, 2, 3, 4)
    assert dist(1, 4) == 3
    assert validate_system(ps).consistent


@pytest.mark.parametrize("seed", range(4))
def test_shortest_paths_on_k5_agree_with_networkx(seed):
    g = complete_graph(5)
    w = random_weights(g, random.Random(seed))
    ps, dist = shortest_path_system(g, w)
    ref = nx.Graph()
    ref.add_weighted_edges_from((a, b, float(c)) for (a, b), c in w.items())
    for (u, v), p in ps.paths.items():
        assert list(p) == nx.dijkstra_path(ref, u, v)
        assert float(dist(u, v)) == pytest.approx(nx.dijkstra_path_length(ref, u, v))
    assert validate_system(ps, g).consistent
    assert is_metric(ps).metric


@pytest.mark.parametrize("seed", range(4))
def test_distance_matrix_is_metric_and_fixed_point(seed):
    g = complete_graph(6)
    ps, dist = shortest_path_system(g, random_weights(g, random.Random(100 + seed)))
    for u, v in itertools.permutations(range(6), 2):
        assert dist(u, v) == dist(v, u) > 0
        assert all(dist(u, v) <= dist(u, x) + dist(x, v) for x in range(6))
    used = Graph.from_edges(6, {tuple(sorted(e)) for p in ps.paths.values() for e in zip(p, p[1:])})
    again, dist2 = shortest_path_system(used, dist.as_weights())
    assert dict(again.paths) == dict(ps.paths)
    assert dist2 == dist
    assert naive_stretch(ps, dist.as_weights()) == 1


def test_four_cycle_is_ambiguous():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    with pytest.raises(AmbiguousShortestPath) as e:
        shortest_path_system(g, {e: 1 for e in g.edges})
    assert e.value.pair in {(0, 2), (1, 3)}


def test_nonpositive_weight_rejected():
    g = Graph.from_edges(2, [(0, 1)])
    with pytest.raises(InputError):
        shortest_path_system(g, {(0, 1): 0})


def test_petersen_unit_stretch():
    assert naive_stretch(petersen_system(), PairWeights.unit(10)) == 3


def test_paley_weights_stretch():
    r_hat = Fraction(11034306693, 10 ** 10)
    w = paley29_weights(r_hat)
    pair_w = PairWeights({(u, v): w[min((v - u) % 29, (u - v) % 29)]
                          for u in range(29) for v in range(u + 1, 29)})
    assert naive_stretch(build_from_words(paley_system(29)), pair_w) <= r_hat + Fraction(1, 10 ** 9)


def test_not_a_metric():
    ps = PathSystem.from_paths(3, [(0, 1), (0, 2), (1, 2)])
    with pytest.raises(NotAMetric):
        naive_stretch(ps, {(0, 1): 1, (0, 2): 5, (1, 2): 1})
