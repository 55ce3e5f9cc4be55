"""Quivers, monomial presentations and finite dimensional monomial algebras.

Conventions
-----------
Paths are written in traversal order: ``alpha*gamma`` means "first alpha,
then gamma".  The ring product ``x . y`` is "first y, then x", so the left
ideal ``Lambda e_i`` is spanned by the nonzero paths starting at ``i`` and a
left module is a covariant representation of the quiver (arrow ``a`` maps the
space at ``source(a)`` to the space at ``target(a)``).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from .errors import InfiniteDimensional, InvalidPresentation, NotABasisPath

__all__ = [
    "Arrow",
    "Quiver",
    "Path",
    "MonomialPresentation",
    "AlgebraModel",
    "MultiplicationTable",
    "build_algebra",
    "opposite",
    "dim_radical",
]


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Path:
    source: str
    target: str
    arrows: tuple[str, ...] = ()

    @property
    def length(self):
        return len(self.arrows)

    def __len__(self):
        return len(self.arrows)

    def __str__(self):
        if not self.arrows:
            return f"e({self.source})"
        return "*".join(self.arrows)

    def prefix(self, k, quiver):
        """The subpath made of the first ``k`` arrows."""
        if k == 0:
            return Path(self.source, self.source)
        return quiver.path(*self.arrows[:k])


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        arrows = tuple(a if isinstance(a, Arrow) else Arrow(str(a[0]), str(a[1]), str(a[2]))
                       for a in self.arrows)
        object.__setattr__(self, "arrows", arrows)
        if len(set(self.vertices)) != len(self.vertices):
            raise InvalidPresentation("vertex identifiers must be distinct")
        names = [a.name for a in arrows]
        if len(set(names)) != len(names):
            raise InvalidPresentation("arrow names must be distinct")
        known = set(self.vertices)
        for a in arrows:
            if a.source not in known or a.target not in known:
                raise InvalidPresentation(f"arrow {a.name} uses an undeclared vertex")

    @cached_property
    def _by_name(self):
        return {a.name: a for a in self.arrows}

    @cached_property
    def vertex_position(self):
        return {v: i for i, v in enumerate(self.vertices)}

    def arrow(self, name):
        try:
            return self._by_name[name]
        except KeyError:
            raise InvalidPresentation(f"unknown arrow {name!r}") from None

    def arrows_from(self, v):
        return [a for a in self.arrows if a.source == v]

    def trivial(self, v):
        v = str(v)
        if v not in self.vertex_position:
            raise InvalidPresentation(f"unknown vertex {v!r}")
        return Path(v, v)

    def path(self, *names):
        """Build the path traversing ``names`` in order; checks composability."""
        if len(names) == 1 and isinstance(names[0], str) and "*" in names[0]:
            names = tuple(s.strip() for s in names[0].split("*"))
        if not names:
            raise InvalidPresentation("use Quiver.trivial for paths of length 0")
        arrows = [self.arrow(n) for n in names]
        for a, b in zip(arrows, arrows[1:]):
            if a.target != b.source:
                raise InvalidPresentation(f"arrows {a.name} and {b.name} do not compose")
        return Path(arrows[0].source, arrows[-1].target, tuple(names))

    def reversed(self):
        return Quiver(self.vertices, tuple(Arrow(a.name, a.target, a.source) for a in self.arrows))


def _is_factor(short, long):
    k = len(short)
    return any(long[i:i + k] == short for i in range(len(long) - k + 1))


@dataclass(frozen=True)
class MonomialPresentation:
    quiver: Quiver
    relations: frozenset[Path] = field(default_factory=frozenset)

    def __post_init__(self):
        rels = frozenset(self.relations)
        object.__setattr__(self, "relations", rels)
        q = self.quiver
        for r in rels:
            if r.length < 2:
                raise InvalidPresentation(f"relation {r} has length {r.length}; relations must lie in J^2")
            # re-derive endpoints so a hand-built Path cannot lie about them
            if q.path(*r.arrows) != r:
                raise InvalidPresentation(f"relation {r} has inconsistent endpoints")
        ordered = sorted(rels, key=lambda p: (p.length, p.arrows))
        for i, r in enumerate(ordered):
            for s in ordered[i + 1:]:
                if _is_factor(r.arrows, s.arrows):
                    raise InvalidPresentation(f"relation {r} is a factor of relation {s}")

    @classmethod
    def from_strings(cls, vertices, arrows, relations=()):
        quiver = Quiver(tuple(vertices), tuple(arrows))
        return cls(quiver, frozenset(quiver.path(r) for r in relations))

    def reversed(self):
        rq = self.quiver.reversed()
        return MonomialPresentation(rq, frozenset(rq.path(*reversed(r.arrows)) for r in self.relations))


@dataclass(frozen=True)
class MultiplicationTable:
    """Structure constants of a based algebra (products of basis elements are
    basis elements or zero).  This is the view the exact oracle works with.

    ``product[(x, y)] = z`` records the ring product ``x . y = z``; missing keys
    are zero products.  ``factor[z] = (a, y)`` gives one way of writing a
    non-idempotent ``z`` as ``a . y`` with ``a`` an arrow and ``depth[y] < depth[z]``.
    """

    vertices: tuple[str, ...]
    labels: tuple[str, ...]
    source: tuple[int, ...]
    target: tuple[int, ...]
    idempotents: tuple[int, ...]
    arrows: tuple[int, ...]
    product: dict

    @property
    def dimension(self):
        return len(self.labels)

    @property
    def n(self):
        return len(self.vertices)

    @cached_property
    def _factorization(self):
        fac = [None] * self.dimension
        depth = [None] * self.dimension
        queue = deque()
        for e in self.idempotents:
            depth[e] = 0
            queue.append(e)
        while queue:
            y = queue.popleft()
            for a in self.arrows:
                z = self.product.get((a, y))
                if z is not None and depth[z] is None:
                    depth[z] = depth[y] + 1
                    fac[z] = (a, y)
                    queue.append(z)
        if any(d is None for d in depth):
            raise InvalidPresentation("basis is not generated by arrows and idempotents")
        return tuple(fac), tuple(depth)

    @property
    def factor(self):
        return self._factorization[0]

    @property
    def depth(self):
        return self._factorization[1]

    @cached_property
    def starting_at(self):
        out = [[] for _ in self.vertices]
        for b, s in enumerate(self.source):
            out[s].append(b)
        return tuple(tuple(x) for x in out)

    @cached_property
    def left_action(self):
        """``left_action[a]`` maps basis ``y`` to ``a . y`` for every arrow ``a``."""
        return {a: {y: z for (x, y), z in self.product.items() if x == a} for a in self.arrows}

    def opposite(self):
        return MultiplicationTable(
            self.vertices, self.labels, self.target, self.source, self.idempotents,
            self.arrows, {(y, x): z for (x, y), z in self.product.items()})


class AlgebraModel:
    """A finite dimensional monomial algebra ``kQ/I`` with its path basis."""

    def __init__(self, presentation, basis):
        self.presentation = presentation
        self.basis = tuple(basis)
        self._index = {p: i for i, p in enumerate(self.basis)}

    @property
    def quiver(self):
        return self.presentation.quiver

    @property
    def vertices(self):
        return self.presentation.quiver.vertices

    @property
    def dimension(self):
        return len(self.basis)

    @property
    def n(self):
        return len(self.presentation.quiver.vertices)

    @property
    def loewy_length(self):
        return 1 + max(p.length for p in self.basis)

    def __eq__(self, other):
        return isinstance(other, AlgebraModel) and self.presentation == other.presentation

    def __hash__(self):
        return hash(self.presentation)

    def __repr__(self):
        return f"AlgebraModel(n={self.n}, dim={self.dimension}, relations={len(self.presentation.relations)})"

    def __contains__(self, path):
        return path in self._index

    def index(self, path):
        try:
            return self._index[path]
        except KeyError:
            raise NotABasisPath(f"{path} is not a nonzero path") from None

    def path(self, *names):
        return self.quiver.path(*names)

    def trivial(self, v):
        return self.quiver.trivial(v)

    def multiply(self, p, q):
        """The path "p then q", or None when it is zero in the algebra."""
        if p.target != q.source:
            return None
        if not p.arrows:
            return q if q in self._index else None
        joined = Path(p.source, q.target, p.arrows + q.arrows)
        return joined if joined in self._index else None

    def paths_from(self, v):
        return [p for p in self.basis if p.source == v]

    def is_radical_square_zero(self):
        return self.loewy_length <= 2

    @cached_property
    def table(self):
        pos = self.quiver.vertex_position
        product = {}
        for y, p in enumerate(self.basis):
            for x, q in enumerate(self.basis):
                r = self.multiply(p, q)
                if r is not None:
                    product[(x, y)] = self._index[r]
        return MultiplicationTable(
            vertices=self.vertices,
            labels=tuple(str(p) for p in self.basis),
            source=tuple(pos[p.source] for p in self.basis),
            target=tuple(pos[p.target] for p in self.basis),
            idempotents=tuple(self._index[Path(v, v)] for v in self.vertices),
            arrows=tuple(i for i, p in enumerate(self.basis) if p.length == 1),
            product=product,
        )


def _basis_key(quiver):
    pos = quiver.vertex_position
    return lambda p: (p.length, p.arrows, pos[p.source])


def build_algebra(p):
    """Enumerate the nonzero paths of ``p`` and return the algebra model.

    Raises InfiniteDimensional when arbitrarily long nonzero paths exist.  The
    test is exact: nonzero continuation of a path depends only on its last
    ``m - 1`` arrows (``m`` the longest relation), so the algebra is infinite
    dimensional iff the automaton on those windows has a cycle.
    """
    if not isinstance(p, MonomialPresentation):
        raise InvalidPresentation("expected a MonomialPresentation")
    quiver = p.quiver
    rel_words = {r.arrows for r in p.relations}
    rel_lengths = sorted({len(w) for w in rel_words})
    window = max(1, max(rel_lengths, default=1) - 1)
    out = {v: quiver.arrows_from(v) for v in quiver.vertices}

    def extensions(path):
        for a in out[path.target]:
            word = path.arrows + (a.name,)
            if any(len(word) >= k and word[-k:] in rel_words for k in rel_lengths):
                continue
            yield Path(path.source, a.target, word)

    # automaton on windows of `window` arrows
    layer = [Path(v, v) for v in quiver.vertices]
    for _ in range(window):
        layer = [q for path in layer for q in extensions(path)]
    states = {q.arrows: q for q in layer}
    succ = {}
    for word, q in states.items():
        succ[word] = [ext.arrows[-window:] for ext in extensions(q)]
    indeg = {w: 0 for w in states}
    for w in states:
        for t in succ[w]:
            indeg[t] += 1
    queue = deque(w for w, d in indeg.items() if d == 0)
    seen = 0
    while queue:
        w = queue.popleft()
        seen += 1
        for t in succ[w]:
            indeg[t] -= 1
            if indeg[t] == 0:
                queue.append(t)
    if seen < len(states):
        raise InfiniteDimensional("a nonzero cycle survives every relation")

    basis = []
    layer = [Path(v, v) for v in quiver.vertices]
    while layer:
        basis.extend(layer)
        layer = [q for path in layer for q in extensions(path)]
    basis.sort(key=_basis_key(quiver))
    return AlgebraModel(p, basis)


def opposite(a):
    return build_algebra(a.presentation.reversed())


def dim_radical(a):
    return a.dimension - a.n
