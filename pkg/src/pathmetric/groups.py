"""Path systems invariant under the cyclic group ``Z_n``.

A :class:`WordTable` assigns to every nonzero ``x`` a word of generators
summing to ``x``; the path from ``u`` to ``u + x`` is ``u`` followed by the
prefix sums of that word.  Two closure conditions on the words make the
expanded system consistent:

1. ``word(-x)`` is the reversed negation of ``word(x)``;
2. every contiguous subword summing to ``y`` is ``word(y)``.

Group elements are stored as residues ``0..n-1``.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Optional

from .core import PathSystem, pair_key
from .errors import (ConditionCollision, ConditionOrder, InputError, InvalidPrime,
                     NotInvariant, SamplingExhausted, WordClosureViolation)
from .kernels import cyclic_bfs

INVARIANT_FORMAT = "pathsys-invariant/v1"


@dataclass(frozen=True)
class CyclicGroup:
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise InputError(f"cyclic group needs n >= 2, got {self.n}")

    def norm(self, x: int) -> int:
        return x % self.n

    def signed(self, x: int) -> int:
        """Representative in ``(-n/2, n/2]``."""
        x %= self.n
        return x - self.n if 2 * x > self.n else x

    def order(self, g: int) -> int:
        return self.n // math.gcd(self.n, g % self.n)

    def cls(self, x: int) -> int:
        """Class id of ``{x, -x}``, in ``1..n//2`` (0 for the identity)."""
        x %= self.n
        return min(x, self.n - x)


@dataclass(frozen=True)
class WordTable:
    group: CyclicGroup
    words: Mapping

    @classmethod
    def create(cls, n: int, words: Mapping[int, Iterable[int]], validate: bool = True) -> "WordTable":
        g = CyclicGroup(n)
        norm = {}
        for x, w in words.items():
            x = g.norm(int(x))
            if x in norm:
                raise InputError(f"two words given for element {x}")
            norm[x] = tuple(g.norm(int(a)) for a in w)
        wt = cls(g, MappingProxyType(dict(sorted(norm.items()))))
        if validate:
            wt.validate()
        return wt

    @property
    def n(self) -> int:
        return self.group.n

    def word(self, x: int) -> tuple:
        return self.words[x % self.n]

    def generators(self) -> list[int]:
        return sorted({a for w in self.words.values() for a in w})

    def validate(self) -> None:
        """Check well-formedness and both closure conditions.

        Words are checked in increasing order of the element; for each word
        the subword condition comes before the inversion condition.
        """
        n = self.n
        missing = [x for x in range(1, n) if x not in self.words]
        if 0 in self.words:
            raise WordClosureViolation("the identity must not have a word", ("identity", 0))
        if missing:
            raise WordClosureViolation(f"no word for element {missing[0]}", ("missing", missing[0]))
        for x in range(1, n):
            w = self.words[x]
            if not w:
                raise WordClosureViolation(f"empty word for {x}", ("empty", x))
            if sum(w) % n != x:
                raise WordClosureViolation(f"word for {x} sums to {sum(w) % n}", ("sum", x))
            for i in range(len(w)):
                acc = 0
                for j in range(i, len(w)):
                    acc = (acc + w[j]) % n
                    sub = w[i:j + 1]
                    if acc == 0:
                        raise WordClosureViolation(
                            f"subword {sub} of word({x}) sums to 0: the path is not simple",
                            ("simple", x, (i, j + 1)))
                    if sub != w and self.words[acc] != sub:
                        raise WordClosureViolation(
                            f"subword {sub} of word({x}) sums to {acc} but word({acc}) = {self.words[acc]}",
                            ("subword", x, (i, j + 1), acc))
            inv = tuple((-a) % n for a in reversed(w))
            if self.words[(-x) % n] != inv:
                raise WordClosureViolation(
                    f"word({(-x) % n}) = {self.words[(-x) % n]} must be {inv}, the inverse of word({x})",
                    ("inverse", x, (-x) % n))

    def walk(self, u: int, x: int) -> tuple:
        """The path from ``u`` to ``u + x``."""
        seq = [u % self.n]
        for a in self.word(x):
            seq.append((seq[-1] + a) % self.n)
        return tuple(seq)

    def to_json(self) -> dict:
        return {"format": INVARIANT_FORMAT, "group": {"type": "cyclic", "n": self.n},
                "words": {str(x): list(w) for x, w in self.words.items()}}

    @classmethod
    def from_json(cls, doc: dict) -> "WordTable":
        if doc.get("format") != INVARIANT_FORMAT:
            raise InputError(f"expected format {INVARIANT_FORMAT!r}, got {doc.get('format')!r}")
        grp = doc.get("group", {})
        if grp.get("type") != "cyclic":
            raise InputError("only cyclic groups are supported")
        try:
            return cls.create(int(grp["n"]), {int(k): v for k, v in doc["words"].items()})
        except (KeyError, TypeError, ValueError) as e:
            if isinstance(e, InputError):
                raise
            raise InputError(f"malformed word table: {e}") from e

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def build_from_words(wt: WordTable) -> PathSystem:
    """Expand ``P_{x,y} = x + P_{0,y-x}`` over all pairs."""
    wt.validate()
    n = wt.n
    paths = {}
    for u in range(n):
        for v in range(u + 1, n):
            paths[(u, v)] = wt.walk(u, v - u)
    return PathSystem._make(n, paths, "invariant-expanded")


def words_from_system(ps: PathSystem) -> WordTable:
    """Recover the word table of a ``Z_n``-invariant system."""
    n = ps.n
    words = {}
    for z in range(1, n):
        p = ps.path(0, z)
        words[z] = tuple((b - a) % n for a, b in zip(p, p[1:]))
    for u, v in ps.pairs():
        p = ps.path(u, v)
        shifted = tuple((x - u) % n for x in p)
        if shifted != ps.path(0, (v - u) % n):
            raise NotInvariant(f"path for {(u, v)} is not the translate of the path from 0")
    return WordTable.create(n, words)


def is_invariant(ps: PathSystem) -> bool:
    try:
        words_from_system(ps)
    except (NotInvariant, WordClosureViolation):
        return False
    return True


def bfs_distance(n: int, X: Iterable[int], target: int) -> Optional[int]:
    """Hop distance from 0 to ``target`` in the Cayley graph of ``Z_n`` on ``X``."""
    d = cyclic_bfs(n, sorted({x % n for x in X}))[target % n]
    return None if d < 0 else d


def bfs_diameter(n: int, X: Iterable[int]) -> Optional[int]:
    dist = cyclic_bfs(n, sorted({x % n for x in X}))
    return None if min(dist) < 0 else max(dist)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % f for f in range(3, math.isqrt(n) + 1, 2))


@dataclass(frozen=True)
class CayleyParams:
    n: int
    X: tuple
    m: int
    d: int
    bound: Fraction
    S: tuple

    def to_json(self) -> dict:
        return {"n": self.n, "X": list(self.X), "m": self.m, "d": self.d,
                "bound": str(self.bound), "S_size": len(self.S)}


def _signed_sorted(g: CyclicGroup, X) -> list[int]:
    return sorted({g.norm(x) for x in X}, key=lambda x: (abs(g.signed(x)), g.signed(x) < 0))


def _powers(m: int):
    return list(range(1, m + 1)) + list(range(-1, -m - 1, -1))


def find_collision(n: int, X: Iterable[int], m: int) -> Optional[tuple]:
    """First ``(g, i, h, j)`` with ``i*g == j*h``, ``g != +-h``, ``1 <= |i|,|j| <= m``.

    Elements are scanned by increasing absolute signed value (positive first)
    and exponents in the order ``1..m, -1..-m``; values are reported signed.
    """
    grp = CyclicGroup(n)
    seen: dict[int, list] = {}
    for h in _signed_sorted(grp, X):
        for j in _powers(m):
            v = (j * h) % n
            for g, i in seen.get(v, ()):
                if g != h and g != (-h) % n:
                    return (grp.signed(g), i, grp.signed(h), j)
            seen.setdefault(v, []).append((h, j))
    return None


def _check_symmetric(grp: CyclicGroup, X) -> list[int]:
    xs = sorted({grp.norm(x) for x in X})
    if not xs:
        raise InputError("generator set is empty")
    if 0 in xs:
        raise InputError("generator set contains the identity")
    for x in xs:
        if (-x) % grp.n not in xs:
            raise InputError(f"generator set is not symmetric: {grp.signed(x)} without its inverse")
    return xs


def cayley_construction(n: int, X: Iterable[int], m: int) -> tuple[CayleyParams, WordTable]:
    """Check the three conditions and build the invariant system.

    ``word(i*g)`` is ``g`` repeated ``i`` times for ``1 <= i <= m``; every
    other nonzero element is its own one-letter word.
    """
    grp = CyclicGroup(n)
    if m < 1:
        raise InputError("m must be positive")
    xs = _check_symmetric(grp, X)
    for g in _signed_sorted(grp, xs):
        if grp.order(g) <= 2 * m:
            raise ConditionOrder(f"element {grp.signed(g)} has order {grp.order(g)} <= {2 * m}",
                                 (grp.signed(g), grp.order(g)))
    hit = find_collision(n, xs, m)
    if hit is not None:
        g, i, h, j = hit
        raise ConditionCollision(f"{i}*{g} = {j}*{h} (mod {n})", hit)
    dist = cyclic_bfs(n, xs)
    d = 0
    for g in xs:
        dg = dist[(m * g) % n]
        if dg < 0:
            raise InputError(f"{m}*{grp.signed(g)} is not reachable from the generators")
        d = max(d, dg)
    words: dict[int, tuple] = {}
    for g in xs:
        for i in range(1, m + 1):
            y = (i * g) % n
            # conditions 1 and 2 make the representation i*g unique
            assert y not in words or words[y] == (g,) * i
            words[y] = (g,) * i
    S = sorted(set(xs) | {y for y in range(1, n) if y not in words})
    for y in range(1, n):
        words.setdefault(y, (y,))
    wt = WordTable.create(n, words)
    params = CayleyParams(n, tuple(grp.signed(x) for x in _signed_sorted(grp, xs)), m, d,
                          Fraction(m, d * len(xs)), tuple(S))
    return params, wt


def default_m(n: int) -> int:
    """``floor(sqrt(n) / ceil(log2 n)^2)``, the sampler's asymptotic horizon.

    Clamped to 1: the formula is zero for every n below about 10^6.
    """
    return max(1, math.isqrt(n) // (math.ceil(math.log2(n)) ** 2)) if n > 1 else 1


@dataclass(frozen=True)
class SampleResult:
    X: tuple
    attempts: int
    diameter: Optional[int]


def sample_X(n: int, k: int, m: int, seed: int, max_attempts: int = 50) -> SampleResult:
    """Draw ``k`` distinct nonzero elements, symmetrize, reject bad draws.

    A draw is rejected if some element has order at most ``2m`` or the
    symmetrized set contains a forbidden pair.
    """
    if not is_prime(n):
        raise InputError(f"sampler needs a prime modulus, got {n}")
    if k < 2 or m < 1:
        raise InputError("need k >= 2 and m >= 1")
    if k > n - 1:
        raise InputError(f"cannot draw {k} distinct nonzero elements of Z_{n}")
    grp = CyclicGroup(n)
    rng = random.Random(seed)
    for attempt in range(1, max_attempts + 1):
        draw = rng.sample(range(1, n), k)
        xs = sorted(set(draw) | {n - x for x in draw})
        if any(grp.order(x) <= 2 * m for x in xs):
            continue
        if find_collision(n, xs, m) is not None:
            continue
        X = tuple(grp.signed(x) for x in _signed_sorted(grp, xs))
        return SampleResult(X, attempt, bfs_diameter(n, xs))
    raise SamplingExhausted(f"no admissible generator set in {max_attempts} attempts "
                            f"(n={n}, k={k}, m={m}, seed={seed})")


def quadratic_residues(p: int) -> frozenset:
    return frozenset((x * x) % p for x in range(1, p))


def paley_system(p: int) -> WordTable:
    """Residues are edges, other differences go through the midpoint, ``+-3`` takes three unit steps."""
    if not is_prime(p):
        raise InvalidPrime(f"{p} is not prime")
    if p % 4 != 1:
        raise InvalidPrime(f"{p} is not 1 mod 4")
    qr = quadratic_residues(p)
    for c in (2, 3):
        if c % p in qr:
            raise InvalidPrime(f"{c} is a quadratic residue mod {p}")
    half = pow(2, -1, p)
    words = {}
    for x in range(1, p):
        if x in qr:
            words[x] = (x,)
        elif x == 3 % p:
            words[x] = (1, 1, 1)
        elif x == (-3) % p:
            words[x] = (p - 1,) * 3
        else:
            words[x] = ((x * half) % p,) * 2
    try:
        return WordTable.create(p, words)
    except WordClosureViolation as e:
        raise InvalidPrime(f"the rules are not closed for p={p}: {e}") from e


# Fig. 1a labels vertices 1..10; here vertex L is L-1.
PETERSEN_EDGES = tuple(sorted(
    [(i, (i + 1) % 5) for i in range(5)]
    + [(i, i + 5) for i in range(5)]
    + [(5 + i, 5 + (i + 2) % 5) for i in range(5)]))

PETERSEN_THREE_HOP = ((1, 0, 5, 7), (2, 1, 6, 8), (3, 2, 7, 9), (4, 3, 8, 5), (0, 4, 9, 6))


def petersen_system() -> PathSystem:
    """The consistent, non-metric system on the Petersen graph (0-based)."""
    from .core import Graph
    g = Graph.from_edges(10, PETERSEN_EDGES)
    adj = {v: set(g.neighbors(v)) for v in range(10)}
    paths = {pair_key(*e): tuple(sorted(e)) for e in g.edges}
    for p in PETERSEN_THREE_HOP:
        paths[pair_key(p[0], p[-1])] = p if p[0] < p[-1] else p[::-1]
    for u in range(10):
        for v in range(u + 1, 10):
            if (u, v) in paths:
                continue
            (c,) = adj[u] & adj[v]
            paths[(u, v)] = (u, c, v)
    return PathSystem._make(10, paths, "constructed", g)
