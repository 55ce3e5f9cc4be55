"""Finite dimensional modules as exact matrix representations.

Everything here works from the multiplication table of the algebra only;
nothing consults the combinatorial syzygy engine.
"""

from __future__ import annotations

from fractions import Fraction

from ..algebra import AlgebraModel
from ..errors import NonParallelElement, NotABasisPath
from ..terms import Ideal, LayerMatrix, Quotient, Simple
from .linalg import Subspace, apply, compose, is_zero_matrix, nullspace

__all__ = [
    "MatrixModule",
    "simple_module",
    "free_module",
    "direct_sum",
    "module_from",
    "radical",
    "top",
    "projective_cover",
    "syzygy_matrix",
    "layer_matrix",
    "socle_dims",
]


class MatrixModule:
    """A left module given by one matrix per arrow.

    ``dims[v]`` is the dimension of the space at vertex ``v`` (an index into
    ``table.vertices``); ``actions[a]`` is the matrix of arrow ``a`` (a table
    index) as a list of sparse columns, one per basis vector at ``source(a)``.
    """

    def __init__(self, table, dims, actions, validate=True):
        self.table = table
        self.dims = tuple(dims)
        self.actions = actions
        self._elements = {}
        for a in table.arrows:
            cols = actions.setdefault(a, [{} for _ in range(self.dims[table.source[a]])])
            if len(cols) != self.dims[table.source[a]] or any(
                    k >= self.dims[table.target[a]] for c in cols for k in c):
                raise ValueError(f"action of {table.labels[a]} has the wrong shape")
        if validate:
            self.validate()

    @property
    def dimension(self):
        return sum(self.dims)

    def __repr__(self):
        return f"MatrixModule(dims={self.dims})"

    def element_matrix(self, b):
        """Matrix of basis element ``b`` from its source space to its target space."""
        m = self._elements.get(b)
        if m is None:
            t = self.table
            fac = t.factor[b]
            if fac is None:
                m = [{i: 1} for i in range(self.dims[t.source[b]])]
            else:
                a, rest = fac
                m = compose(self.actions[a], self.element_matrix(rest))
            self._elements[b] = m
        return m

    def validate(self):
        """Check that every arrow composes with every basis element as the
        multiplication table says; this is exactly the module axiom on a
        generating set, so all relations of the algebra hold."""
        t = self.table
        for a in t.arrows:
            for y in range(t.dimension):
                if t.target[y] != t.source[a] or t.factor[y] is None:
                    continue
                lhs = compose(self.actions[a], self.element_matrix(y))
                z = t.product.get((a, y))
                if z is None:
                    if not is_zero_matrix(lhs):
                        raise ValueError(f"{t.labels[a]}.{t.labels[y]} = 0 fails in the module")
                elif lhs != self.element_matrix(z):
                    raise ValueError(f"{t.labels[a]}.{t.labels[y]} = {t.labels[z]} fails in the module")

    def is_zero(self):
        return self.dimension == 0


def simple_module(table, v):
    dims = [0] * table.n
    dims[v] = 1
    return MatrixModule(table, dims, {}, validate=False)


def free_module(table, tops):
    """``P = sum_k Lambda e_{tops[k]}``.

    Returns ``(P, position)`` where ``position[(k, b)] = (vertex, index)``
    locates the basis element ``b`` of the ``k``-th summand.
    """
    position = {}
    dims = [0] * table.n
    for k, v in enumerate(tops):
        for b in table.starting_at[v]:
            w = table.target[b]
            position[(k, b)] = (w, dims[w])
            dims[w] += 1
    actions = {a: [None] * dims[table.source[a]] for a in table.arrows}
    for (k, b), (w, i) in position.items():
        for a in table.arrows:
            if table.source[a] != w:
                continue
            z = table.product.get((a, b))
            actions[a][i] = {position[(k, z)][1]: 1} if z is not None else {}
    return MatrixModule(table, dims, actions, validate=False), position


def direct_sum(modules, table=None):
    modules = list(modules)
    if not modules:
        if table is None:
            raise ValueError("empty direct sum needs the algebra table")
        return MatrixModule(table, [0] * table.n, {}, validate=False)
    table = modules[0].table
    dims = [sum(m.dims[v] for m in modules) for v in range(table.n)]
    actions = {}
    for a in table.arrows:
        s, t = table.source[a], table.target[a]
        cols = []
        off_t = 0
        for m in modules:
            cols.extend({off_t + k: x for k, x in c.items()} for c in m.actions[a])
            off_t += m.dims[t]
        actions[a] = cols
        assert len(cols) == dims[s]
    return MatrixModule(table, dims, actions, validate=False)


def _restrict(module, spaces):
    """The submodule with per-vertex bases ``spaces`` (Subspaces closed under the action)."""
    t = module.table
    dims = [s.dim for s in spaces]
    actions = {}
    for a in t.arrows:
        target = spaces[t.target[a]]
        actions[a] = [target.coordinates(apply(module.actions[a], u)) for u in spaces[t.source[a]].basis()]
    return MatrixModule(t, dims, actions, validate=False)


def _quotient(module, spaces):
    t = module.table
    comp = [s.complement() for s in spaces]
    where = [{c: i for i, c in enumerate(cs)} for cs in comp]
    actions = {}
    for a in t.arrows:
        s_, t_ = t.source[a], t.target[a]
        cols = []
        for c in comp[s_]:
            img = spaces[t_].reduce(module.actions[a][c])
            cols.append({where[t_][k]: x for k, x in img.items()})
        actions[a] = cols
    return MatrixModule(t, [len(c) for c in comp], actions, validate=False)


def generated_subspaces(module, generators):
    """Per-vertex Subspaces of the submodule generated by ``(vertex, vector)`` pairs."""
    t = module.table
    spaces = [Subspace(d) for d in module.dims]
    out_arrows = [[a for a in t.arrows if t.source[a] == v] for v in range(t.n)]
    queue = [(v, vec) for v, vec in generators]
    while queue:
        v, vec = queue.pop()
        if not spaces[v].add(vec):
            continue
        for a in out_arrows[v]:
            img = apply(module.actions[a], vec)
            if img:
                queue.append((t.target[a], img))
    return spaces


def submodule(module, generators):
    return _restrict(module, generated_subspaces(module, generators))


def quotient(module, generators):
    return _quotient(module, generated_subspaces(module, generators))


def _radical_spaces(module, spaces=None):
    """Per-vertex subspaces ``J X`` for the submodule ``X`` given by ``spaces``."""
    t = module.table
    out = [Subspace(d) for d in module.dims]
    for a in t.arrows:
        src = spaces[t.source[a]].basis() if spaces is not None else (
            {i: 1} for i in range(module.dims[t.source[a]]))
        for u in src:
            img = apply(module.actions[a], u)
            if img:
                out[t.target[a]].add(img)
    return out


def radical(module):
    return _restrict(module, _radical_spaces(module))


def top(module):
    return _quotient(module, _radical_spaces(module))


def top_multiplicities(module):
    return tuple(d - s.dim for d, s in zip(module.dims, _radical_spaces(module)))


def projective_cover(module):
    """Returns ``(P, maps)`` with ``maps[w]`` the matrix ``P_w -> M_w`` of the cover."""
    t = module.table
    rad = _radical_spaces(module)
    lifts = [(v, c) for v in range(t.n) for c in rad[v].complement()]
    P, position = free_module(t, [v for v, _ in lifts])
    maps = [[None] * P.dims[w] for w in range(t.n)]
    for (k, b), (w, i) in position.items():
        maps[w][i] = module.element_matrix(b)[lifts[k][1]]
    return P, maps


def syzygy_matrix(module):
    """Kernel of the projective cover, as a submodule of the cover."""
    P, maps = projective_cover(module)
    spaces = []
    for w, f in enumerate(maps):
        eqs = {}
        for c, col in enumerate(f):
            for r, x in col.items():
                eqs.setdefault(r, {})[c] = x
        spaces.append(Subspace(P.dims[w], nullspace(eqs.values(), P.dims[w])))
    omega = _restrict(P, spaces)
    assert omega.dimension == P.dimension - module.dimension
    return omega


def layer_matrix(module):
    spaces = [Subspace(d, ({i: 1} for i in range(d))) for d in module.dims]
    rows = []
    while any(s.dim for s in spaces):
        nxt = _radical_spaces(module, spaces)
        rows.append([s.dim - n.dim for s, n in zip(spaces, nxt)])
        spaces = nxt
    return LayerMatrix(rows)


def socle_dims(module):
    t = module.table
    out = []
    for v in range(t.n):
        eqs = []
        for a in t.arrows:
            if t.source[a] != v:
                continue
            m = module.actions[a]
            rows = {}
            for c, col in enumerate(m):
                for r, x in col.items():
                    rows.setdefault(r, {})[c] = x
            eqs.extend(rows.values())
        out.append(len(nullspace(eqs, module.dims[v])))
    return tuple(out)


def _path_value(algebra, table, path):
    """Basis index of ``path`` in the table, or None when it is zero."""
    if isinstance(algebra, AlgebraModel):
        return algebra._index.get(path)
    by_name = {table.labels[a]: a for a in table.arrows}
    cur = table.idempotents[table.vertices.index(path.source)]
    for name in path.arrows:
        cur = table.product.get((by_name[name], cur))
        if cur is None:
            return None
    return cur


def _term_module(algebra, term):
    table = algebra.table
    vindex = {v: i for i, v in enumerate(table.vertices)}
    if isinstance(term, Simple):
        return simple_module(table, vindex[term.vertex])
    if isinstance(term, Ideal):
        p = term.path
        b = _path_value(algebra, table, p)
        if b is None:
            raise NotABasisPath(f"{p} is zero in the algebra")
        P, position = free_module(table, [vindex[p.source]])
        w, i = position[(0, b)]
        return submodule(P, [(w, {i: 1})])
    if isinstance(term, Quotient):
        v = vindex[term.vertex]
        targets = {p.target for _, p in term.element}
        if len(targets) > 1 or any(p.source != term.vertex for _, p in term.element):
            raise NonParallelElement(f"element of {term} is not a combination of parallel paths from {term.vertex}")
        P, position = free_module(table, [v])
        vec = {}
        w = None
        for c, p in term.element:
            b = _path_value(algebra, table, p)
            if b is None:
                continue
            w, i = position[(0, b)]
            vec[i] = vec.get(i, 0) + Fraction(c)
        vec = {i: x for i, x in vec.items() if x}
        if not vec:
            return P
        return quotient(P, [(w, vec)])
    raise TypeError(f"cannot build a module from {term!r}")


def module_from(algebra, summands):
    """Matrix module for a summand, an iterable of summands or a PathIdealSum."""
    if isinstance(summands, (Simple, Ideal, Quotient)):
        return _term_module(algebra, summands)
    terms = list(summands.expand()) if hasattr(summands, "expand") else list(summands)
    return direct_sum([_term_module(algebra, t) for t in terms], table=algebra.table)
