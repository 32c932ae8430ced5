"""Brute-force references used to cross-check the LP machinery."""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping

from .core import Graph, PairWeights, PathSystem, pair_key, path_cost, validate_system
from .errors import AmbiguousShortestPath, InputError, NotAMetric


@dataclass(frozen=True)
class DistanceMatrix:
    n: int
    d: tuple  # d[u][v]

    def __call__(self, u: int, v: int) -> Fraction:
        return self.d[u][v]

    def as_weights(self) -> PairWeights:
        return PairWeights({(u, v): self.d[u][v] for u in range(self.n) for v in range(u + 1, self.n)})


def _dijkstra(g: Graph, w: Mapping, src: int):
    """Exact distances, predecessor and number of shortest paths from ``src``."""
    adj = {v: [] for v in range(g.n)}
    for (a, b) in g.edges:
        c = w[(a, b)]
        adj[a].append((b, c))
        adj[b].append((a, c))
    dist = {src: Fraction(0)}
    count = {src: 1}
    pred = {src: None}
    done = set()
    heap = [(Fraction(0), src)]
    while heap:
        d, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        for v, c in adj[u]:
            nd = d + c
            if v not in dist or nd < dist[v]:
                dist[v], count[v], pred[v] = nd, count[u], u
                heapq.heappush(heap, (nd, v))
            elif nd == dist[v] and v not in done:
                count[v] += count[u]
    return dist, count, pred


def shortest_path_system(g: Graph, w: Mapping) -> tuple[PathSystem, DistanceMatrix]:
    """The system of unique shortest paths under positive edge weights.

    Ties are detected by counting shortest paths exactly, so no tie is ever
    broken silently.
    """
    weights = {}
    for (a, b) in g.edges:
        key = pair_key(a, b)
        val = w.get(key, w.get((b, a))) if isinstance(w, Mapping) else None
        if val is None:
            raise InputError(f"no weight for edge {key}")
        val = Fraction(val)
        if val <= 0:
            raise InputError(f"weight of edge {key} is not positive")
        weights[key] = val
    n = g.n
    d = [[Fraction(0)] * n for _ in range(n)]
    paths = {}
    for u in range(n):
        dist, count, pred = _dijkstra(g, weights, u)
        for v in range(n):
            if v == u:
                continue
            if v not in dist:
                raise InputError(f"vertex {v} is unreachable from {u}")
            d[u][v] = dist[v]
            if v > u:
                if count[v] > 1:
                    raise AmbiguousShortestPath(f"{count[v]} shortest paths between {u} and {v}",
                                                (u, v))
                seq = [v]
                while seq[-1] != u:
                    seq.append(pred[seq[-1]])
                paths[(u, v)] = tuple(reversed(seq))
    ps = PathSystem._make(n, paths, "constructed", g)
    return ps, DistanceMatrix(n, tuple(tuple(r) for r in d))


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset(itertools.combinations(range(n), 2)))


def _candidates(n: int, u: int, v: int) -> list[tuple]:
    others = [x for x in range(n) if x not in (u, v)]
    out = []
    for k in range(len(others) + 1):
        for mid in itertools.permutations(others, k):
            out.append((u, *mid, v))
    out.sort(key=lambda p: (len(p), p))
    return out


def enumerate_consistent_systems(n: int) -> Iterator[PathSystem]:
    """Every consistent path system on ``K_n``, each once, in a fixed order.

    Pairs are assigned in lexicographic order and candidates tried by
    (length, sequence); choosing a path fixes the paths of all pairs on it,
    which prunes the search to consistent assignments only.
    """
    if not 2 <= n <= 5:
        raise InputError("enumeration is limited to 2 <= n <= 5")
    pairs = list(itertools.combinations(range(n), 2))
    cands = {p: _candidates(n, *p) for p in pairs}
    fixed: dict = {}

    def implied(path):
        for i, j in itertools.combinations(range(len(path)), 2):
            if j - i == len(path) - 1:
                continue
            seg = path[i:j + 1]
            yield pair_key(seg[0], seg[-1]), seg if seg[0] < seg[-1] else seg[::-1]

    def rec(idx):
        if idx == len(pairs):
            yield PathSystem._make(n, dict(fixed), "enumerated")
            return
        p = pairs[idx]
        if p in fixed:
            yield from rec(idx + 1)
            return
        for c in cands[p]:
            added = []
            ok = True
            for key, seg in implied(c):
                cur = fixed.get(key)
                if cur is None:
                    fixed[key] = seg
                    added.append(key)
                elif cur != seg:
                    ok = False
                    break
            if ok:
                fixed[p] = c
                yield from rec(idx + 1)
                del fixed[p]
            for key in added:
                del fixed[key]

    # a pair fixed early by a longer path never gets its own candidate loop,
    # so each system is produced exactly once
    for ps in rec(0):
        yield ps


def is_metric_weights(n: int, w: Mapping) -> bool:
    for a, b, c in itertools.permutations(range(n), 3):
        if w[pair_key(a, b)] > w[pair_key(a, c)] + w[pair_key(c, b)]:
            return False
    return all(w[pair_key(a, b)] > 0 for a, b in itertools.combinations(range(n), 2))


def naive_stretch(ps: PathSystem, w: Mapping) -> Fraction:
    """``max path_cost(P_uv) / w(u, v)`` for one given metric ``w``."""
    w = w if isinstance(w, PairWeights) else PairWeights(w)
    if not is_metric_weights(ps.n, w):
        raise NotAMetric("weights violate the triangle inequality")
    return max((path_cost(p, w) / w[key] for key, p in ps.paths.items()), default=Fraction(1))


def random_weights(g: Graph, rng, lo: int = 1, hi: int = 10 ** 6) -> dict:
    """Integer edge weights drawn from ``rng``; ties are unlikely at this range."""
    return {e: Fraction(rng.randint(lo, hi)) for e in sorted(g.edges)}
