"""Seeded generators of random monomial algebras, modules and documents."""

from __future__ import annotations

from fractions import Fraction

from .algebra import Arrow, MonomialPresentation, Path, Quiver, _is_factor, build_algebra
from .errors import InfiniteDimensional
from .formats import AlgebraDocument
from .oracle.modules import free_module, quotient
from .terms import Ideal, Quotient, Simple

__all__ = [
    "random_quiver",
    "random_monomial_algebra",
    "radical_square_zero_algebra",
    "radical_cube_zero_algebra",
    "loop_algebra",
    "random_quotient_term",
    "random_module",
    "random_document",
]


def random_quiver(rng, max_vertices=5, max_arrows=8):
    n = rng.randint(1, max_vertices)
    vertices = [str(i + 1) for i in range(n)]
    m = rng.randint(0, max_arrows)
    arrows = [Arrow(f"a{k}", rng.choice(vertices), rng.choice(vertices)) for k in range(m)]
    return Quiver(tuple(vertices), tuple(arrows))


def _random_walk(rng, quiver, length):
    starts = [a for a in quiver.arrows]
    if not starts:
        return None
    a = rng.choice(starts)
    word = [a]
    for _ in range(length - 1):
        nxt = quiver.arrows_from(word[-1].target)
        if not nxt:
            return None
        word.append(rng.choice(nxt))
    return Path(word[0].source, word[-1].target, tuple(x.name for x in word))


def _add_relation(relations, path):
    """Insert ``path`` keeping the set reduced; False if it is already implied."""
    if any(_is_factor(r.arrows, path.arrows) for r in relations):
        return False
    for r in [r for r in relations if _is_factor(path.arrows, r.arrows)]:
        relations.remove(r)
    relations.append(path)
    return True


def random_monomial_algebra(rng, max_vertices=5, max_arrows=8, max_relations=12, max_dim=40,
                            max_length=3, attempts=200):
    """A finite dimensional monomial algebra drawn from ``rng``.

    Relations are added along random walks until the algebra is finite
    dimensional, then a few more are sprinkled in; drafts that overshoot the
    relation or dimension budget are discarded.
    """
    for _ in range(attempts):
        q = random_quiver(rng, max_vertices, max_arrows)
        relations = []
        extra = rng.randint(0, 3)
        ok = False
        for _ in range(4 * max_relations):
            try:
                a = build_algebra(MonomialPresentation(q, frozenset(relations)))
            except InfiniteDimensional:
                a = None
            if a is not None:
                if extra == 0 or len(relations) >= max_relations:
                    ok = True
                    break
                extra -= 1
            if len(relations) >= max_relations:
                break
            walk = _random_walk(rng, q, rng.randint(2, max_length))
            if walk is not None:
                _add_relation(relations, walk)
        if ok and a.dimension <= max_dim:
            return a
    raise RuntimeError("could not draw a finite dimensional algebra within the budget")


def _all_paths(quiver, length):
    layer = [Path(a.source, a.target, (a.name,)) for a in quiver.arrows]
    for _ in range(length - 1):
        layer = [Path(p.source, a.target, p.arrows + (a.name,))
                 for p in layer for a in quiver.arrows_from(p.target)]
    return layer


def radical_square_zero_algebra(rng, max_vertices=5, max_arrows=8):
    q = random_quiver(rng, max_vertices, max_arrows)
    return build_algebra(MonomialPresentation(q, frozenset(_all_paths(q, 2))))


def radical_cube_zero_algebra(rng, max_vertices=5, max_arrows=8, keep=0.5):
    """``J^3 = 0``: a random set of length-two relations plus every length-three
    path avoiding them."""
    q = random_quiver(rng, max_vertices, max_arrows)
    short = [p for p in _all_paths(q, 2) if rng.random() > keep]
    long_ = [p for p in _all_paths(q, 3) if not any(_is_factor(r.arrows, p.arrows) for r in short)]
    return build_algebra(MonomialPresentation(q, frozenset(short + long_)))


def loop_algebra(n):
    """A loop ``l_i`` and an arrow ``c_i: i -> i+1`` (cyclically) at each of
    ``n`` vertices, all paths of length three set to zero."""
    vertices = tuple(str(i + 1) for i in range(n))
    arrows = []
    for i in range(n):
        arrows.append(Arrow(f"l{i + 1}", vertices[i], vertices[i]))
        arrows.append(Arrow(f"c{i + 1}", vertices[i], vertices[(i + 1) % n]))
    q = Quiver(vertices, tuple(arrows))
    return build_algebra(MonomialPresentation(q, frozenset(_all_paths(q, 3))))


def _random_coeff(rng):
    num = rng.choice([-3, -2, -1, 1, 1, 1, 2, 3])
    den = rng.choice([1, 1, 1, 2, 3])
    return Fraction(num, den)


def random_quotient_term(rng, a):
    """``Q(v; x)`` with ``x`` a random combination of parallel basis paths."""
    v = rng.choice(a.vertices)
    groups = {}
    for p in a.paths_from(v):
        groups.setdefault(p.target, []).append(p)
    w = rng.choice(sorted(groups))
    paths = groups[w]
    chosen = rng.sample(paths, rng.randint(1, min(3, len(paths))))
    chosen.sort(key=lambda p: a.index(p))
    return Quotient(v, tuple((_random_coeff(rng), p) for p in chosen))


def random_module(rng, a, max_generators=2):
    """A quotient of a free module by random elements, as a MatrixModule."""
    tops = [rng.randrange(a.n) for _ in range(rng.randint(1, max_generators))]
    t = a.table
    P, position = free_module(t, tops)
    gens = []
    for _ in range(rng.randint(0, 2)):
        w = rng.randrange(t.n)
        if not P.dims[w]:
            continue
        vec = {}
        for i in rng.sample(range(P.dims[w]), rng.randint(1, min(3, P.dims[w]))):
            vec[i] = _random_coeff(rng)
        gens.append((w, vec))
    return quotient(P, gens) if gens else P


def random_document(rng, max_modules=3):
    a = random_monomial_algebra(rng)
    modules = []
    for k in range(rng.randint(0, max_modules)):
        terms = []
        for _ in range(rng.randint(1, 3)):
            kind = rng.randrange(4)
            if kind == 0:
                terms.append(Simple(rng.choice(a.vertices)))
            elif kind == 1:
                terms.append(Ideal(rng.choice(a.basis)))
            else:
                terms.append(random_quotient_term(rng, a))
        modules.append((f"M{k}", tuple(terms)))
    pres = a.presentation
    relations = sorted(pres.relations, key=lambda p: (p.length, p.arrows))
    name = rng.choice(["", "alg", f"corpus{rng.randrange(1000)}"])
    return AlgebraDocument(name, pres.quiver.vertices, pres.quiver.arrows, tuple(relations), tuple(modules))
