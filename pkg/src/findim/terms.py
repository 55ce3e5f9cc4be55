"""Summand descriptors shared by the module DSL, the engine and the oracle."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import Path


@dataclass(frozen=True)
class Simple:
    vertex: str

    def __str__(self):
        return f"S({self.vertex})"


@dataclass(frozen=True)
class Ideal:
    """The principal left ideal generated by a nonzero path; a trivial path
    gives the indecomposable projective at its vertex."""

    path: Path

    def __str__(self):
        if self.path.length == 0:
            return f"P({self.path.source})"
        return f"I({self.path})"


@dataclass(frozen=True)
class Quotient:
    """``Lambda e_vertex / Lambda x`` for a linear combination ``x`` of paths
    starting at ``vertex``; ``element`` is a tuple of (coefficient, path)."""

    vertex: str
    element: tuple[tuple[Fraction, Path], ...]

    def __str__(self):
        return f"Q({self.vertex}; {format_element(self.element)})"


def format_fraction(c):
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_element(element):
    parts = []
    for i, (c, p) in enumerate(element):
        c = Fraction(c)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = str(p) if mag == 1 else f"{format_fraction(mag)} {p}"
        if i == 0:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


class LayerMatrix(tuple):
    """Multiplicities of simples in the radical layers of a module.

    Row ``l`` (0-based) lists, per vertex, the multiplicity of ``S_v`` in
    ``J^l M / J^(l+1) M``.  Trailing zero rows are never stored, so equal
    modules have equal matrices and the zero module has no rows.
    """

    def __new__(cls, rows=()):
        rows = [tuple(int(x) for x in r) for r in rows]
        while rows and not any(rows[-1]):
            rows.pop()
        return super().__new__(cls, tuple(rows))

    @property
    def total(self):
        return sum(sum(r) for r in self)

    def __add__(self, other):
        if not self:
            return LayerMatrix(other)
        if not other:
            return self
        width = len(self[0]) if self else len(other[0])
        depth = max(len(self), len(other))
        zero = (0,) * width
        rows = []
        for i in range(depth):
            a = self[i] if i < len(self) else zero
            b = other[i] if i < len(other) else zero
            rows.append(tuple(x + y for x, y in zip(a, b)))
        return LayerMatrix(rows)

    def scaled(self, k):
        return LayerMatrix([tuple(k * x for x in r) for r in self]) if k else LayerMatrix()

    def __repr__(self):
        return f"LayerMatrix({list(self)!r})"

    def describe(self, vertices):
        """Rows as ``{S1, S2x2}``-style strings."""
        out = []
        for r in self:
            items = [f"S{v}" + (f"x{m}" if m > 1 else "") for v, m in zip(vertices, r) if m]
            out.append("{" + ", ".join(items) + "}")
        return out
