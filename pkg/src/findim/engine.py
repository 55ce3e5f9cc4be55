"""Field-independent syzygy calculus for monomial algebras.

Over ``kQ/I`` with ``I`` generated by paths, the kernel of
``Lambda e_t -> Lambda p, x |-> x . p`` is spanned by the paths ``x`` with
``p then x = 0``.  That set is closed under extension, so it is the direct sum
of the ideals ``Lambda q`` over its minimal elements ``q`` (no proper prefix
in the set).  The isomorphism type of ``Lambda p`` only depends on its top
vertex and on the set of paths that survive after ``p``, which is the key
used for every cyclic module the engine meets (simples included).
"""

from __future__ import annotations

import math
import weakref
from collections import Counter
from dataclasses import dataclass, field

from .algebra import AlgebraModel, Path
from .errors import NotABasisPath
from .terms import Ideal, LayerMatrix, Simple

__all__ = [
    "INFINITY",
    "PathIdealSum",
    "IdealClass",
    "SyzygyGraph",
    "SyzygyEngine",
    "engine_for",
    "syzygy_of_ideal",
    "syzygy_of_simple",
    "syzygy",
    "syzygy_power",
    "syzygy_graph",
    "pdim_ideal",
    "pdim_simple",
    "pdim",
    "gl_dim",
    "strongly_connected_components",
]

INFINITY = math.inf


class PathIdealSum:
    """A finite direct sum of simples and principal path ideals, as a multiset."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        if isinstance(terms, (Simple, Ideal)):
            terms = [terms]
        counter = Counter()
        if isinstance(terms, (Counter, dict)):
            for t, k in terms.items():
                if k:
                    counter[t] += k
        else:
            for t in terms:
                counter[t] += 1
        for t in counter:
            if not isinstance(t, (Simple, Ideal)):
                raise TypeError(f"{t!r} is not a simple or a path ideal")
        self.terms = counter

    def __eq__(self, other):
        return isinstance(other, PathIdealSum) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        return PathIdealSum(self.terms + other.terms)

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return sum(self.terms.values())

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: _term_key(kv[0]))

    def expand(self):
        for t, k in self.items():
            for _ in range(k):
                yield t

    def __repr__(self):
        return "PathIdealSum(" + " + ".join(
            (f"{k} " if k > 1 else "") + str(t) for t, k in self.items()) + ")"


def _term_key(t):
    if isinstance(t, Simple):
        return (0, t.vertex, 0, ())
    return (1, t.path.source, t.path.length, t.path.arrows)


@dataclass(frozen=True)
class IdealClass:
    """Isomorphism class of a cyclic module ``Lambda e_vertex / U`` with ``U``
    spanned by paths; ``future`` is the complement of ``U`` (the surviving
    paths from ``vertex``).  ``Lambda p`` has ``vertex = target(p)`` and
    ``future = {x : p then x != 0}``; the simple ``S_v`` has ``future = (e_v,)``.
    """

    vertex: str
    future: tuple[Path, ...]
    representative: object = field(default=None, compare=False, hash=False)

    @property
    def dimension(self):
        return len(self.future)

    def label(self):
        r = self.representative
        if isinstance(r, Path):
            return str(Ideal(r))
        if isinstance(r, Simple):
            return str(r)
        return f"C({self.vertex}; {len(self.future)})"

    def __str__(self):
        return self.label()


def strongly_connected_components(nodes, successors):
    """Tarjan's algorithm, iterative.  Components come out in reverse
    topological order (sinks first)."""
    index, low, on_stack = {}, {}, set()
    stack, out = [], []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(successors(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(successors(w))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(comp)
    return out


@dataclass
class SyzygyGraph:
    """Closure of the first-syzygy map on the classes reachable from a module."""

    algebra: AlgebraModel
    start: PathIdealSum
    nodes: list
    children: dict
    projective: dict
    pdim: dict

    def nonprojective(self):
        return [c for c in self.nodes if not self.projective[c]]


class SyzygyEngine:
    """Memoized syzygy computations over one algebra.

    Tables are filled once per key and never mutated afterwards, so concurrent
    readers see either nothing or the final value.
    """

    def __init__(self, algebra):
        self.algebra = algebra
        self._children = {}
        self._pdim = {}
        self._paths_from = {v: tuple(algebra.paths_from(v)) for v in algebra.vertices}

    # -- classes ---------------------------------------------------------
    def future_set(self, p):
        a = self.algebra
        return tuple(x for x in self._paths_from[p.target] if a.multiply(p, x) is not None)

    def class_of(self, term):
        if isinstance(term, Simple):
            v = str(term.vertex)
            return IdealClass(v, (Path(v, v),), term)
        if isinstance(term, Ideal):
            p = term.path
            if p not in self.algebra:
                raise NotABasisPath(f"{p} is not a nonzero path")
            return IdealClass(p.target, self.future_set(p), p)
        raise TypeError(f"{term!r} is not a simple or a path ideal")

    def is_projective(self, cls):
        return len(cls.future) == len(self._paths_from[cls.vertex])

    def kernel_generators(self, cls):
        """Minimal paths from ``cls.vertex`` outside the future set."""
        alive = set(cls.future)
        out = []
        for q in self._paths_from[cls.vertex]:
            if q in alive:
                continue
            parent = q.prefix(q.length - 1, self.algebra.quiver) if q.length else None
            if parent is not None and parent in alive:
                out.append(q)
        kernel_dim = len(self._paths_from[cls.vertex]) - len(alive)
        if sum(len(self.future_set(q)) for q in out) != kernel_dim:
            raise RuntimeError("kernel is not the direct sum of its minimal path ideals")
        return out

    def children(self, cls):
        out = self._children.get(cls)
        if out is None:
            out = Counter()
            for q in self.kernel_generators(cls):
                out[self.class_of(Ideal(q))] += 1
            self._children[cls] = out
        return out

    def layer_matrix(self, cls):
        pos = self.algebra.quiver.vertex_position
        depth = max((x.length for x in cls.future), default=-1) + 1
        rows = [[0] * self.algebra.n for _ in range(depth)]
        for x in cls.future:
            rows[x.length][pos[x.target]] += 1
        return LayerMatrix(rows)

    # -- modules ---------------------------------------------------------
    def syzygy(self, m):
        out = Counter()
        for term, mult in m.terms.items():
            for q in self.kernel_generators(self.class_of(term)):
                out[Ideal(q)] += mult
        return PathIdealSum(out)

    def classes(self, m):
        out = Counter()
        for term, mult in m.terms.items():
            out[self.class_of(term)] += mult
        return out

    def module_layer_matrix(self, m):
        total = LayerMatrix()
        for term, mult in m.items():
            total = total + self.layer_matrix(self.class_of(term)).scaled(mult)
        return total

    # -- graph -----------------------------------------------------------
    def graph(self, start):
        roots = list(self.classes(start))
        seen = set(roots)
        order = list(roots)
        i = 0
        while i < len(order):
            for child in self.children(order[i]):
                if child not in seen:
                    seen.add(child)
                    order.append(child)
            i += 1
        for c in order:
            self._resolve_pdim(c)
        return SyzygyGraph(
            algebra=self.algebra,
            start=start,
            nodes=order,
            children={c: self.children(c) for c in order},
            projective={c: self.is_projective(c) for c in order},
            pdim={c: self._pdim[c] for c in order},
        )

    def _resolve_pdim(self, cls):
        if cls in self._pdim:
            return self._pdim[cls]
        # closure of unresolved classes below cls
        todo = [cls]
        region = {cls}
        while todo:
            c = todo.pop()
            for child in self.children(c):
                if child not in region and child not in self._pdim:
                    region.add(child)
                    todo.append(child)
        comps = strongly_connected_components(
            sorted(region, key=lambda c: (c.vertex, c.future and tuple(str(x) for x in c.future))),
            lambda c: [d for d in self.children(c) if d in region])
        result = {}
        for comp in comps:
            cyclic = len(comp) > 1 or comp[0] in self.children(comp[0])
            for c in comp:
                if self.is_projective(c):
                    result[c] = 0
                elif cyclic:
                    result[c] = INFINITY
                else:
                    kids = [self._pdim.get(d, result.get(d)) for d in self.children(c)]
                    result[c] = 1 + max(kids)
        self._pdim.update(result)
        return self._pdim[cls]

    def pdim(self, term_or_class):
        cls = term_or_class if isinstance(term_or_class, IdealClass) else self.class_of(term_or_class)
        return self._resolve_pdim(cls)


_ENGINES = weakref.WeakKeyDictionary()


def engine_for(a):
    eng = _ENGINES.get(a)
    if eng is None or eng.algebra is not a:
        eng = SyzygyEngine(a)
        _ENGINES[a] = eng
    return eng


def _check_ideal_path(a, p):
    if p not in a:
        raise NotABasisPath(f"{p} is not a nonzero path")
    if p.length < 1:
        raise NotABasisPath(f"{p} must have positive length")


def syzygy_of_ideal(a, p):
    _check_ideal_path(a, p)
    return engine_for(a).syzygy(PathIdealSum([Ideal(p)]))


def syzygy_of_simple(a, i):
    return engine_for(a).syzygy(PathIdealSum([Simple(str(i))]))


def syzygy(a, m):
    return engine_for(a).syzygy(m)


def syzygy_power(a, m, k):
    for _ in range(k):
        m = syzygy(a, m)
    return m


def syzygy_graph(a, start):
    if isinstance(start, (Simple, Ideal)):
        start = PathIdealSum([start])
    return engine_for(a).graph(start)


def pdim_ideal(a, p):
    _check_ideal_path(a, p)
    return engine_for(a).pdim(Ideal(p))


def pdim_simple(a, i):
    return engine_for(a).pdim(Simple(str(i)))


def pdim(a, m):
    """Projective dimension of a PathIdealSum (max over its summands; 0 for 0)."""
    eng = engine_for(a)
    return max((eng.pdim(t) for t in m.terms), default=0)


def gl_dim(a):
    return max((pdim_simple(a, v) for v in a.vertices), default=0)
