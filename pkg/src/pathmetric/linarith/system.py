"""Exact linear inequality systems ``A x <= b`` and feasibility outcomes."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union


@dataclass(frozen=True)
class Row:
    """One constraint ``coeffs . x <= rhs``.

    ``sources`` names the original rows a derived row was combined from; for
    an input row it is just ``{tag}``.
    """

    coeffs: tuple
    rhs: Fraction
    tag: str = ""
    sources: frozenset = field(default=frozenset(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        object.__setattr__(self, "rhs", Fraction(self.rhs))
        if not self.sources:
            object.__setattr__(self, "sources", frozenset([self.tag]) if self.tag else frozenset())

    def lhs(self, x: Sequence) -> Fraction:
        return sum((c * xi for c, xi in zip(self.coeffs, x) if c), Fraction(0))

    def is_zero(self) -> bool:
        return not any(self.coeffs)


@dataclass(frozen=True)
class LinearSystem:
    num_vars: int
    rows: tuple
    names: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        for r in self.rows:
            if len(r.coeffs) != self.num_vars:
                raise ValueError(
                    f"row {r.tag!r} has {len(r.coeffs)} coefficients, expected {self.num_vars}")
        if self.names is not None:
            object.__setattr__(self, "names", tuple(self.names))

    @classmethod
    def from_sparse(cls, num_vars: int, rows: Iterable, names=None) -> "LinearSystem":
        """Build from ``(dict var -> coeff, rhs, tag)`` triples."""
        out = []
        for coeffs, rhs, tag in rows:
            dense = [Fraction(0)] * num_vars
            for j, c in coeffs.items():
                dense[j] += Fraction(c)
            out.append(Row(tuple(dense), rhs, tag))
        return cls(num_vars, tuple(out), names)

    def var_name(self, j: int) -> str:
        return self.names[j] if self.names else f"x{j + 1}"

    def violated_rows(self, x: Sequence) -> list[int]:
        return [i for i, r in enumerate(self.rows) if r.lhs(x) > r.rhs]

    def satisfies(self, x: Sequence) -> bool:
        return len(x) == self.num_vars and not self.violated_rows(x)

    def is_farkas(self, y: Sequence) -> bool:
        """``y >= 0``, ``y^T A = 0`` and ``y^T b < 0``."""
        if len(y) != len(self.rows) or any(v < 0 for v in y):
            return False
        for j in range(self.num_vars):
            if sum((v * r.coeffs[j] for v, r in zip(y, self.rows) if v), Fraction(0)) != 0:
                return False
        return sum((v * r.rhs for v, r in zip(y, self.rows) if v), Fraction(0)) < 0

    def with_rows(self, extra: Iterable[Row]) -> "LinearSystem":
        return LinearSystem(self.num_vars, self.rows + tuple(extra), self.names)


@dataclass(frozen=True)
class Feasible:
    witness: tuple
    pivots: int = 0

    @property
    def feasible(self) -> bool:
        return True


@dataclass(frozen=True)
class Infeasible:
    farkas: tuple
    pivots: int = 0

    @property
    def feasible(self) -> bool:
        return False

    def support(self) -> list[int]:
        return [i for i, v in enumerate(self.farkas) if v]


Feasibility = Union[Feasible, Infeasible]
