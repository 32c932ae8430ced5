"""Graphs, paths and path systems.

Vertices are the integers ``0..n-1``.  A path is a plain tuple of vertices.
A :class:`PathSystem` stores one path per unordered pair, keyed by
``(min(u, v), max(u, v))`` and oriented from the smaller endpoint.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Optional

from .errors import InputError, MissingWeight, VertexNotOnPath

Path = tuple[int, ...]
Pair = tuple[int, int]

PATHSYS_FORMAT = "pathsys/v1"


def pair_key(u: int, v: int) -> Pair:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset

    def __post_init__(self):
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InputError(f"edge ({u}, {v}) out of range for n={self.n}")
            norm.add(pair_key(u, v))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[int]]) -> "Graph":
        return cls(n, frozenset(tuple(e) for e in edges))

    def has_edge(self, u: int, v: int) -> bool:
        return pair_key(u, v) in self.edges

    def neighbors(self, u: int) -> list[int]:
        return sorted(b if a == u else a for a, b in self.edges if u in (a, b))


@dataclass(frozen=True)
class Violation:
    kind: str  # SubpathMismatch | NotSimple | EndpointMismatch | MissingPair | EdgeNotInGraph
    pairs: tuple
    witness: Optional[Path] = None


@dataclass(frozen=True)
class ConsistencyReport:
    consistent: bool
    neighborly: bool
    violations: tuple = ()

    def to_json(self) -> dict:
        return {
            "consistent": self.consistent,
            "neighborly": self.neighborly,
            "violations": [
                {"kind": v.kind, "pairs": [list(p) for p in v.pairs],
                 "witness": list(v.witness) if v.witness is not None else None}
                for v in self.violations
            ],
        }


@dataclass(frozen=True)
class PathSystem:
    """One path per unordered vertex pair.

    Build instances with :meth:`from_paths`; the raw constructor expects
    already-canonical keys.  ``graph_edges`` is the ambient graph when one was
    supplied, otherwise the induced graph (union of path edges) is used.
    """

    n: int
    paths: Mapping
    origin: Optional[str] = None
    graph_edges: Optional[frozenset] = None
    _induced: frozenset = field(default=frozenset(), repr=False, compare=False)

    @classmethod
    def from_paths(cls, n: int, seqs: Iterable[Iterable[int]], origin: Optional[str] = None,
                   graph: Optional[Graph] = None) -> "PathSystem":
        paths: dict[Pair, Path] = {}
        for seq in seqs:
            p = tuple(int(x) for x in seq)
            if not p:
                raise InputError("empty path")
            key = pair_key(p[0], p[-1])
            if p[0] > p[-1]:
                p = p[::-1]
            if key in paths:
                raise InputError(f"duplicate path for pair {key}")
            paths[key] = p
        return cls._make(n, paths, origin, graph)

    @classmethod
    def _make(cls, n, paths, origin=None, graph=None):
        induced = set()
        for p in paths.values():
            for a, b in zip(p, p[1:]):
                if a != b:
                    induced.add(pair_key(a, b))
        edges = graph.edges if graph is not None else None
        return cls(n, MappingProxyType(dict(sorted(paths.items()))), origin, edges,
                   frozenset(induced))

    def path(self, u: int, v: int) -> Path:
        """The system path from ``u`` to ``v`` (reversed on access if needed)."""
        if u == v:
            return (u,)
        p = self.paths[pair_key(u, v)]
        return p if u < v else p[::-1]

    def pairs(self) -> list[Pair]:
        return list(self.paths.keys())

    def induced_graph(self) -> Graph:
        return Graph(self.n, self._induced)

    @property
    def graph(self) -> Graph:
        if self.graph_edges is not None:
            return Graph(self.n, self.graph_edges)
        return self.induced_graph()

    def __iter__(self) -> Iterator[Path]:
        return iter(self.paths.values())

    def __len__(self) -> int:
        return len(self.paths)

    # -- pathsys/v1 -------------------------------------------------------

    def to_json(self) -> dict:
        doc = {
            "format": PATHSYS_FORMAT,
            "n": self.n,
            "paths": [{"u": u, "v": v, "seq": list(p)} for (u, v), p in self.paths.items()],
        }
        if self.graph_edges is not None:
            doc["graph_edges"] = [list(e) for e in sorted(self.graph_edges)]
        return doc

    @classmethod
    def from_json(cls, doc: dict, origin: str = "loaded") -> "PathSystem":
        if doc.get("format") != PATHSYS_FORMAT:
            raise InputError(f"expected format {PATHSYS_FORMAT!r}, got {doc.get('format')!r}")
        n = int(doc["n"])
        paths: dict[Pair, Path] = {}
        for entry in doc["paths"]:
            u, v = int(entry["u"]), int(entry["v"])
            if u >= v:
                raise InputError(f"path entry must have u < v, got ({u}, {v})")
            if (u, v) in paths:
                raise InputError(f"duplicate path for pair {(u, v)}")
            paths[(u, v)] = tuple(int(x) for x in entry["seq"])
        graph = None
        if "graph_edges" in doc:
            graph = Graph.from_edges(n, doc["graph_edges"])
        return cls._make(n, paths, origin, graph)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)


class PairWeights(Mapping):
    """Positive rational weights on unordered pairs; ``w[u, v] == w[v, u]``."""

    def __init__(self, values: Mapping | Iterable = ()):
        items = values.items() if isinstance(values, Mapping) else values
        data: dict[Pair, Fraction] = {}
        for (u, v), x in items:
            if u == v:
                raise InputError(f"weight on diagonal pair ({u}, {v})")
            x = Fraction(x)
            if x <= 0:
                raise InputError(f"weight for ({u}, {v}) must be positive, got {x}")
            data[pair_key(u, v)] = x
        self._data = data

    def __getitem__(self, key) -> Fraction:
        u, v = key
        try:
            return self._data[pair_key(u, v)]
        except KeyError:
            raise MissingWeight(f"no weight for pair {pair_key(u, v)}") from None

    def __iter__(self):
        return iter(self._data)

    def __len__(self):
        return len(self._data)

    def __repr__(self):
        return f"PairWeights({self._data!r})"

    @classmethod
    def unit(cls, n: int) -> "PairWeights":
        return cls({(u, v): 1 for u in range(n) for v in range(u + 1, n)})


def subpath(p: Path, a: int, b: int) -> Path:
    """Contiguous segment of ``p`` from ``a`` to ``b``, reversed if ``b`` precedes ``a``."""
    try:
        i, j = p.index(a), p.index(b)
    except ValueError:
        missing = a if a not in p else b
        raise VertexNotOnPath(f"vertex {missing} not on path {p}") from None
    if i <= j:
        return tuple(p[i:j + 1])
    return tuple(p[j:i + 1][::-1])


def path_cost(p: Path, w: Mapping) -> Fraction:
    total = Fraction(0)
    for a, b in zip(p, p[1:]):
        try:
            total += w[a, b]
        except KeyError:
            raise MissingWeight(f"no weight for pair {pair_key(a, b)}") from None
    return total


def validate_system(ps: PathSystem, g: Optional[Graph] = None) -> ConsistencyReport:
    """Check path shape, subpath closure and (optionally) graph membership.

    Subpath closure is checked exhaustively over every vertex pair on every
    path.  ``neighborly`` refers to ``g`` when given, else to the system's
    ambient graph.
    """
    violations: list[Violation] = []
    n = ps.n
    good: dict[Pair, Path] = {}
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in ps.paths:
                violations.append(Violation("MissingPair", ((u, v),)))
    for key, p in ps.paths.items():
        u, v = key
        if not (0 <= u < v < n) or any(not 0 <= x < n for x in p):
            violations.append(Violation("EndpointMismatch", (key,), p))
            continue
        if p[0] != u or p[-1] != v:
            violations.append(Violation("EndpointMismatch", (key,), p))
            continue
        if len(set(p)) != len(p):
            violations.append(Violation("NotSimple", (key,), p))
            continue
        good[key] = p

    for key, p in good.items():
        L = len(p)
        for i in range(L):
            for j in range(i + 1, L):
                a, b = p[i], p[j]
                if i == 0 and j == L - 1:
                    continue
                seg = p[i:j + 1]
                k = pair_key(a, b)
                stored = ps.paths.get(k)
                if stored is None:
                    continue
                expect = seg if a < b else seg[::-1]
                if stored != expect:
                    violations.append(Violation("SubpathMismatch", (key, k), expect))

    graph = g if g is not None else ps.graph
    if g is not None:
        for key, p in good.items():
            for a, b in zip(p, p[1:]):
                if not g.has_edge(a, b):
                    violations.append(Violation("EdgeNotInGraph", (key, pair_key(a, b)), p))
    neighborly = all(ps.paths.get(e) == e for e in graph.edges)
    return ConsistencyReport(not violations, neighborly, tuple(violations))


def is_consistent(ps: PathSystem) -> bool:
    return validate_system(ps).consistent
