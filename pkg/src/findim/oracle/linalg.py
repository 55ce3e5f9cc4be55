"""Sparse exact linear algebra over Q.

Vectors are dicts ``{coordinate: value}`` with int or Fraction values and no
stored zeros.  Matrices acting on such vectors are lists of column vectors.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = [
    "Subspace",
    "nullspace",
    "rank",
    "apply",
    "compose",
    "add_scaled",
    "is_zero_matrix",
]


def _inverse(x):
    if x == 1 or x == -1:
        return x
    return Fraction(1) / x


def _normalize(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def add_scaled(target, vec, scale):
    """In place ``target += scale * vec``."""
    for k, x in vec.items():
        y = target.get(k, 0) + scale * x
        if y:
            target[k] = _normalize(y)
        else:
            target.pop(k, None)


def apply(matrix, vec):
    out = {}
    for c, x in vec.items():
        add_scaled(out, matrix[c], x)
    return out


def compose(a, b):
    """The matrix of ``a o b`` (apply ``b`` first)."""
    return [apply(a, col) for col in b]


def is_zero_matrix(m):
    return all(not col for col in m)


class Subspace:
    """A subspace kept as a fully reduced row-echelon basis.

    Every basis row has a pivot coordinate where it is 1 and where all other
    rows vanish, so the coordinates of a vector in the span are read off at
    the pivots.
    """

    def __init__(self, ambient, vectors=()):
        self.ambient = ambient
        self.rows = {}
        for v in vectors:
            self.add(v)

    def __len__(self):
        return len(self.rows)

    @property
    def dim(self):
        return len(self.rows)

    def copy(self):
        s = Subspace(self.ambient)
        s.rows = {p: dict(r) for p, r in self.rows.items()}
        return s

    def reduce(self, vec):
        v = dict(vec)
        for p in [p for p in v if p in self.rows]:
            x = v.get(p)
            if x:
                add_scaled(v, self.rows[p], -x)
        return v

    def add(self, vec):
        """Insert ``vec``; returns True when it enlarged the span."""
        v = self.reduce(vec)
        if not v:
            return False
        p = min(v)
        inv = _inverse(v[p])
        if inv != 1:
            v = {k: _normalize(x * inv) for k, x in v.items()}
        for row in self.rows.values():
            x = row.get(p)
            if x:
                add_scaled(row, v, -x)
        self.rows[p] = v
        return True

    def contains(self, vec):
        return not self.reduce(vec)

    @property
    def pivots(self):
        return sorted(self.rows)

    def basis(self):
        return [self.rows[p] for p in self.pivots]

    def coordinates(self, vec):
        """Coordinates of ``vec`` (assumed in the span) in ``basis()`` order."""
        return {i: vec[p] for i, p in enumerate(self.pivots) if p in vec}

    def complement(self):
        """Standard coordinates completing the pivots to a basis of the ambient space."""
        return [c for c in range(self.ambient) if c not in self.rows]


def _echelon(equations, ncols):
    s = Subspace(ncols)
    for eq in equations:
        if eq:
            s.add(eq)
    return s


def nullspace(equations, ncols):
    """Basis of ``{x : eq . x = 0 for every eq}``."""
    s = _echelon(equations, ncols)
    out = []
    for f in s.complement():
        v = {f: 1}
        for p, row in s.rows.items():
            x = row.get(f)
            if x:
                v[p] = -x
        out.append(v)
    return out


def rank(vectors, ncols):
    return _echelon(vectors, ncols).dim
