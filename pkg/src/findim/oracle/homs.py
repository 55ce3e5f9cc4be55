"""Hom spaces, isomorphism testing and direct-sum decomposition."""

from __future__ import annotations

import logging
import random
from fractions import Fraction

from ..errors import DimensionBoundExceeded
from .linalg import Subspace, add_scaled, compose, nullspace, rank
from .modules import _restrict, layer_matrix, socle_dims

__all__ = ["hom_space", "are_isomorphic", "decompose", "iso_invariants", "PRIME"]

log = logging.getLogger(__name__)

# 2**61 - 1; a single evaluation of a nonzero determinant polynomial of
# degree <= 60 vanishes with probability < 2**-55
PRIME = (1 << 61) - 1

DEFAULT_DIM_BOUND = 60
EXACT_FALLBACK_DIM = 12


def hom_space(m, n):
    """Basis of Hom(m, n); each map is a list (per vertex) of matrices ``m_v -> n_v``."""
    t = m.table
    offsets, size = [], 0
    for v in range(t.n):
        offsets.append(size)
        size += n.dims[v] * m.dims[v]

    def var(v, r, c):
        # entry (r, c) of the block at v, stored column-major
        return offsets[v] + c * n.dims[v] + r

    eqs = []
    for a in t.arrows:
        s, tg = t.source[a], t.target[a]
        if not m.dims[s] or not n.dims[tg]:
            continue
        na, ma = n.actions[a], m.actions[a]
        for c in range(m.dims[s]):
            rows = {}
            # (N_a X_s)[r, c] = sum_k N_a[r, k] X_s[k, c]
            for k in range(n.dims[s]):
                for r, x in na[k].items():
                    rows.setdefault(r, {})
                    add_scaled(rows[r], {var(s, k, c): x}, 1)
            # - (X_t M_a)[r, c] = - sum_k X_t[r, k] M_a[k, c]
            for k, x in ma[c].items():
                for r in range(n.dims[tg]):
                    rows.setdefault(r, {})
                    add_scaled(rows[r], {var(tg, r, k): x}, -1)
            eqs.extend(rows.values())
    maps = []
    for vec in nullspace(eqs, size):
        blocks = []
        for v in range(t.n):
            cols = [{} for _ in range(m.dims[v])]
            for c in range(m.dims[v]):
                for r in range(n.dims[v]):
                    x = vec.get(var(v, r, c))
                    if x:
                        cols[c][r] = x
            blocks.append(cols)
        maps.append(blocks)
    return maps


def _combine(maps, coeffs, dims_src):
    blocks = []
    for v, d in enumerate(dims_src):
        cols = [{} for _ in range(d)]
        for h, c in zip(maps, coeffs):
            if c:
                for j, col in enumerate(h[v]):
                    add_scaled(cols[j], col, c)
        blocks.append(cols)
    return blocks


def iso_invariants(m):
    """Cheap isomorphism invariants used to bucket modules before exact tests."""
    return (m.dims, tuple(layer_matrix(m)), socle_dims(m))


def _det_mod_p(cols, d, p):
    a = [[0] * d for _ in range(d)]
    for j, col in enumerate(cols):
        for i, x in col.items():
            x = Fraction(x)
            a[i][j] = x.numerator * pow(x.denominator, -1, p) % p
    det = 1
    for c in range(d):
        piv = next((r for r in range(c, d) if a[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det = det * a[c][c] % p
        inv = pow(a[c][c], -1, p)
        for r in range(c + 1, d):
            if a[r][c]:
                f = a[r][c] * inv % p
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[c])]
    return det % p


def _symbolic_nonsingular(maps, dims):
    """Exact test that some combination of ``maps`` is invertible (small dims)."""
    import sympy

    xs = sympy.symbols(f"c0:{len(maps)}")
    for v, d in enumerate(dims):
        if not d:
            continue
        mat = sympy.zeros(d, d)
        for h, x in zip(maps, xs):
            for j, col in enumerate(h[v]):
                for i, val in col.items():
                    mat[i, j] += sympy.Rational(Fraction(val).numerator, Fraction(val).denominator) * x
        if sympy.expand(mat.det(method="berkowitz")) == 0:
            return False
    return True


def are_isomorphic(m1, m2, seed=0, dim_bound=DEFAULT_DIM_BOUND, trials=2):
    if m1.dims != m2.dims:
        return False
    if m1.dimension > dim_bound:
        raise DimensionBoundExceeded(m1.dimension, dim_bound)
    if m1.dimension == 0:
        return True
    if iso_invariants(m1) != iso_invariants(m2):
        return False
    maps = hom_space(m1, m2)
    if not maps:
        return False
    if len(hom_space(m1, m1)) != len(maps) or len(hom_space(m2, m2)) != len(maps):
        return False
    rng = random.Random(seed)
    for _ in range(trials):
        coeffs = [rng.randrange(PRIME) for _ in maps]
        phi = _combine(maps, coeffs, m1.dims)
        if all(_det_mod_p(phi[v], d, PRIME) for v, d in enumerate(m1.dims) if d):
            # a nonzero value certifies a nonzero determinant polynomial over Q
            return True
    if m1.dimension <= EXACT_FALLBACK_DIM:
        return _symbolic_nonsingular(maps, m1.dims)
    return False


# --- decomposition --------------------------------------------------------


def _components(m):
    """Split along connected components of the support graph of the basis.

    Sound for any basis: each component spans a submodule and they are
    independent, so this is a genuine direct-sum decomposition (possibly
    coarser than the indecomposable one).
    """
    t = m.table
    offsets, total = [], 0
    for d in m.dims:
        offsets.append(total)
        total += d
    parent = list(range(total))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in t.arrows:
        s, tg = t.source[a], t.target[a]
        for c, col in enumerate(m.actions[a]):
            for r in col:
                ra, rb = find(offsets[s] + c), find(offsets[tg] + r)
                if ra != rb:
                    parent[ra] = rb
    groups = {}
    for v, d in enumerate(m.dims):
        for i in range(d):
            groups.setdefault(find(offsets[v] + i), []).append((v, i))
    if len(groups) <= 1:
        return [m]
    parts = []
    for members in groups.values():
        spaces = [Subspace(d) for d in m.dims]
        for v, i in members:
            spaces[v].add({i: 1})
        parts.append(_restrict(m, spaces))
    return parts


def _block_charpoly(cols, d):
    """Characteristic polynomial coefficients (highest first) by Berkowitz."""
    a = [[Fraction(0)] * d for _ in range(d)]
    for j, col in enumerate(cols):
        for i, x in col.items():
            a[i][j] = Fraction(x)
    # Berkowitz: build the product of Toeplitz matrices
    poly = [Fraction(1)]
    for k in range(d):
        # leading principal submatrix of size k+1; last row/col split off
        r = a[k][:k]
        c = [a[i][k] for i in range(k)]
        akk = a[k][k]
        sub = [row[:k] for row in a[:k]]
        col = [Fraction(1), -akk]
        v = c[:]
        for _ in range(k):
            col.append(-sum(x * y for x, y in zip(r, v)))
            v = [sum(sub[i][j] * v[j] for j in range(k)) for i in range(k)]
        new = [Fraction(0)] * (k + 2)
        for i in range(k + 2):
            new[i] = sum(col[i - j] * poly[j] for j in range(len(poly)) if 0 <= i - j < len(col))
        poly = new
    return poly


def _polymul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(q):
            out[i + j] += x * y
    return out


def _eval_poly_at(poly, phi, dims):
    """Blockwise ``poly(phi)`` by Horner; ``poly`` is highest-degree first."""
    out = []
    for v, d in enumerate(dims):
        acc = [{} for _ in range(d)]
        for coeff in poly:
            acc = compose(phi[v], acc)
            if coeff:
                for j in range(d):
                    add_scaled(acc[j], {j: coeff}, 1)
        out.append(acc)
    return out


def _fitting_split(m, g):
    """``M = ker g^N (+) im g^N`` for an endomorphism ``g``."""
    d = m.dimension
    power = g
    for _ in range(max(1, d.bit_length())):
        power = [compose(b, b) for b in power]
    ker_spaces, im_spaces = [], []
    for v, dv in enumerate(m.dims):
        cols = power[v]
        eqs = {}
        for c, col in enumerate(cols):
            for r, x in col.items():
                eqs.setdefault(r, {})[c] = x
        ker_spaces.append(Subspace(dv, nullspace(eqs.values(), dv)))
        im_spaces.append(Subspace(dv, (col for col in cols if col)))
    return _restrict(m, ker_spaces), _restrict(m, im_spaces)


def _try_split(m, phi):
    import sympy

    x = sympy.Symbol("x")
    total = [Fraction(1)]
    for v, d in enumerate(m.dims):
        if d:
            total = _polymul(total, _block_charpoly(phi[v], d))
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in total], x, domain="QQ")
    _, factors = poly.factor_list()
    if len(factors) < 2:
        return None
    f = factors[0][0]
    coeffs = [Fraction(int(c.p), int(c.q)) for c in f.all_coeffs()]
    g = _eval_poly_at(coeffs, phi, m.dims)
    kernel, image = _fitting_split(m, g)
    if kernel.dimension and image.dimension:
        return kernel, image
    return None


def _split_indecomposable(m, rng, tries):
    """Either ``[m]`` when End(m) is local, or a nontrivial splitting."""
    if m.dimension <= 1:
        return [m]
    ends = hom_space(m, m)
    if len(ends) <= 1:
        return [m]
    # rad End = {x : tr(x y) = 0 for all y} in characteristic 0
    gram = []
    for x in ends:
        row = {}
        for j, y in enumerate(ends):
            tr = 0
            for v in range(m.table.n):
                xy = compose(x[v], y[v])
                tr += sum(col.get(i, 0) for i, col in enumerate(xy))
            if tr:
                row[j] = tr
        gram.append(row)
    if rank(gram, len(ends)) == 1:
        return [m]
    candidates = list(ends)
    for _ in range(tries):
        coeffs = [rng.randint(-3, 3) for _ in ends]
        candidates.append(_combine(ends, coeffs, m.dims))
    for phi in candidates:
        parts = _try_split(m, phi)
        if parts is not None:
            return list(parts)
    log.warning("no splitting found for a module whose endomorphism ring is not local; "
                "treating it as indecomposable")
    return [m]


def _sort_key(m):
    return (m.dimension, tuple(layer_matrix(m)), m.dims)


def decompose(m, seed=0, dim_bound=DEFAULT_DIM_BOUND, tries=20):
    """Indecomposable summands of ``m``, sorted by (dimension, layer matrix)."""
    if m.dimension > dim_bound:
        raise DimensionBoundExceeded(m.dimension, dim_bound)
    if m.dimension == 0:
        return []
    rng = random.Random(seed)
    pending = _components(m)
    done = []
    while pending:
        x = pending.pop()
        parts = _split_indecomposable(x, rng, tries)
        if len(parts) == 1:
            done.append(parts[0])
        else:
            for p in parts:
                pending.extend(_components(p))
    done.sort(key=_sort_key)
    return done
