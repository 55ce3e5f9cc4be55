"""Tiled classical orders and their reductions modulo the uniformizer.

A tiled order in ``M_n(K)`` is encoded by its exponent matrix ``lam``: entry
``(i, j)`` is ``pi^lam[i][j] D``.  The reduction ``O / pi O`` has basis
``b_ij`` and ``b_ij . b_jk = b_ik`` exactly when ``lam_ij + lam_jk = lam_ik``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .algebra import Arrow, MonomialPresentation, MultiplicationTable, Path, Quiver
from .errors import InvalidBasedAlgebra, InvalidExponentMatrix

__all__ = ["ExponentMatrix", "BasedAlgebra", "NonMonomial", "import_tiled_order"]


@dataclass(frozen=True)
class ExponentMatrix:
    lam: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        lam = tuple(tuple(int(x) for x in row) for row in self.lam)
        object.__setattr__(self, "lam", lam)
        n = len(lam)
        if n == 0 or any(len(row) != n for row in lam):
            raise InvalidExponentMatrix("exponent matrix must be square and nonempty")
        for i in range(n):
            if lam[i][i] != 0:
                raise InvalidExponentMatrix(f"diagonal entry ({i + 1},{i + 1}) is {lam[i][i]}, expected 0")
            for j in range(n):
                if lam[i][j] < 0:
                    raise InvalidExponentMatrix(f"entry ({i + 1},{j + 1}) is negative")
                if i != j and lam[i][j] + lam[j][i] == 0:
                    raise InvalidExponentMatrix(
                        f"entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) are both 0; the order is not basic")
        for i, j, k in itertools.product(range(n), repeat=3):
            if lam[i][j] + lam[j][k] < lam[i][k]:
                raise InvalidExponentMatrix(
                    f"closure fails: lam[{i + 1}][{j + 1}] + lam[{j + 1}][{k + 1}] < lam[{i + 1}][{k + 1}]")

    @property
    def n(self):
        return len(self.lam)

    def transpose(self):
        return ExponentMatrix(tuple(zip(*self.lam)))


@dataclass(frozen=True)
class NonMonomial:
    """Raised-as-value flag: distinct quiver paths that reach the same basis element."""

    identifications: tuple[tuple[Path, Path, str], ...]


class BasedAlgebra:
    """Finite dimensional algebra given by a multiplication table on a basis.

    ``product`` maps pairs of labels to a label; absent pairs multiply to 0.
    ``idempotents`` lists the labels of e_1..e_n in vertex order.
    """

    def __init__(self, labels, idempotents, product, vertices=None):
        self.labels = tuple(labels)
        self.idempotents = tuple(idempotents)
        self.product = dict(product)
        self.vertices = tuple(str(v) for v in (vertices or range(1, len(self.idempotents) + 1)))
        self._validate()

    @property
    def dimension(self):
        return len(self.labels)

    @property
    def n(self):
        return len(self.idempotents)

    def mul(self, x, y):
        return self.product.get((x, y))

    def _validate(self):
        if len(set(self.labels)) != len(self.labels):
            raise InvalidBasedAlgebra("basis labels must be distinct")
        known = set(self.labels)
        if not set(self.idempotents) <= known or len(self.vertices) != len(self.idempotents):
            raise InvalidBasedAlgebra("idempotents must be basis elements, one per vertex")
        for (x, y), z in self.product.items():
            if {x, y, z} - known:
                raise InvalidBasedAlgebra(f"product {x}*{y}={z} uses unknown labels")
        src, tgt = {}, {}
        for b in self.labels:
            right = [i for i, e in enumerate(self.idempotents) if self.mul(b, e) is not None]
            left = [i for i, e in enumerate(self.idempotents) if self.mul(e, b) is not None]
            if len(right) != 1 or len(left) != 1:
                raise InvalidBasedAlgebra(f"{b} is not of the form e_i b e_j")
            if self.mul(b, self.idempotents[right[0]]) != b or self.mul(self.idempotents[left[0]], b) != b:
                raise InvalidBasedAlgebra("1 = sum of idempotents does not act as identity")
            src[b], tgt[b] = right[0], left[0]
        self._source, self._target = src, tgt
        for x, y, z in itertools.product(self.labels, repeat=3):
            xy, yz = self.mul(x, y), self.mul(y, z)
            lhs = None if xy is None else self.mul(xy, z)
            rhs = None if yz is None else self.mul(x, yz)
            if lhs != rhs:
                raise InvalidBasedAlgebra(f"associativity fails on ({x}, {y}, {z})")
        if not self.is_left_cancellative() or not self.is_right_cancellative():
            raise InvalidBasedAlgebra("multiplication is not cancellative on nonzero products")
        idem = set(self.idempotents)
        for (x, y), z in self.product.items():
            if x not in idem and y not in idem and z in idem:
                raise InvalidBasedAlgebra("a product of radical elements is idempotent; algebra is not basic")
        # forces the factorization check; raises when some element is unreachable
        self.table.factor

    def is_left_cancellative(self):
        seen = {}
        for (c, b), z in self.product.items():
            if seen.setdefault((b, z), c) != c:
                return False
        return True

    def is_right_cancellative(self):
        seen = {}
        for (c, b), z in self.product.items():
            if seen.setdefault((c, z), b) != b:
                return False
        return True

    def source(self, b):
        return self.vertices[self._source[b]]

    def target(self, b):
        return self.vertices[self._target[b]]

    @cached_property
    def arrow_level(self):
        """Non-idempotent elements that are not products of two non-idempotents."""
        idem = set(self.idempotents)
        composite = {z for (x, y), z in self.product.items() if x not in idem and y not in idem}
        return tuple(b for b in self.labels if b not in idem and b not in composite)

    @cached_property
    def table(self):
        index = {b: i for i, b in enumerate(self.labels)}
        return MultiplicationTable(
            vertices=self.vertices,
            labels=self.labels,
            source=tuple(self._source[b] for b in self.labels),
            target=tuple(self._target[b] for b in self.labels),
            idempotents=tuple(index[e] for e in self.idempotents),
            arrows=tuple(index[b] for b in self.arrow_level),
            product={(index[x], index[y]): index[z] for (x, y), z in self.product.items()},
        )

    def quiver(self):
        return Quiver(self.vertices, tuple(Arrow(b, self.source(b), self.target(b)) for b in self.arrow_level))

    def opposite(self):
        return BasedAlgebra(self.labels, self.idempotents,
                            {(y, x): z for (x, y), z in self.product.items()}, self.vertices)

    def nonzero_paths(self):
        """All quiver paths of positive length with nonzero product, with the
        basis element each one evaluates to, by increasing length."""
        q = self.quiver()
        layer = [(Path(a.source, a.target, (a.name,)), a.name) for a in q.arrows]
        out = []
        while layer:
            out.extend(layer)
            nxt = []
            for path, value in layer:
                for a in q.arrows_from(path.target):
                    z = self.mul(a.name, value)
                    if z is not None:
                        nxt.append((Path(path.source, a.target, path.arrows + (a.name,)), z))
            layer = nxt
        return out

    def __repr__(self):
        return f"BasedAlgebra(n={self.n}, dim={self.dimension})"


def _tiled_label(i, j):
    return f"b{i + 1}_{j + 1}"


def import_tiled_order(m):
    """Reduce the tiled order with exponent matrix ``m`` modulo ``pi``.

    Returns ``(based_algebra, presentation)`` where ``presentation`` is an
    equivalent MonomialPresentation when every basis element is reached by a
    single quiver path, and a NonMonomial flag listing the coinciding paths
    otherwise.
    """
    if not isinstance(m, ExponentMatrix):
        m = ExponentMatrix(m)
    lam, n = m.lam, m.n
    labels = [_tiled_label(i, j) for i in range(n) for j in range(n)]
    product = {}
    for i, j, k in itertools.product(range(n), repeat=3):
        if lam[i][j] + lam[j][k] == lam[i][k]:
            product[(_tiled_label(i, j), _tiled_label(j, k))] = _tiled_label(i, k)
    based = BasedAlgebra(labels, [_tiled_label(i, i) for i in range(n)], product)

    reached = {}
    for path, value in based.nonzero_paths():
        reached.setdefault(value, []).append(path)
    clashes = []
    for value in based.labels:
        paths = reached.get(value, [])
        for other in paths[1:]:
            clashes.append((paths[0], other, value))
    if clashes:
        return based, NonMonomial(tuple(clashes))

    quiver = based.quiver()
    relations = set()
    nonzero = {p.arrows for paths in reached.values() for p in paths}
    for path in nonzero:
        for a in quiver.arrows_from(quiver.path(*path).target):
            word = path + (a.name,)
            if word not in nonzero and word[1:] in nonzero:
                relations.add(quiver.path(*word))
    return based, MonomialPresentation(quiver, frozenset(relations))
