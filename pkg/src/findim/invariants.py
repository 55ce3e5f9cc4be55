"""Finitistic dimension intervals, repetition indices and classical bounds."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .algebra import AlgebraModel, Path, build_algebra, dim_radical, opposite
from .engine import INFINITY, PathIdealSum, engine_for
from .errors import DimensionBoundExceeded
from .oracle.homs import DEFAULT_DIM_BOUND
from .oracle.modules import MatrixModule, direct_sum, free_module, quotient, simple_module
from .oracle.tower import DEFAULT_CUTOFF, Exceeded, SyzygyOracle, Undetermined
from .terms import Ideal, Quotient, Simple
from .tiled import ExponentMatrix, NonMonomial, import_tiled_order

__all__ = [
    "FindimInterval",
    "BoundEntry",
    "BoundsReport",
    "IZBounds",
    "TiledReport",
    "compute_s",
    "findim_interval",
    "repetition_index",
    "iz_bounds",
    "classical_bounds",
    "loewy_length",
    "tiled_findim",
    "lattice_reduction",
]


@dataclass(frozen=True)
class FindimInterval:
    s: int
    witness_path: Path | None = None

    @property
    def lower(self):
        return self.s + 1

    @property
    def upper(self):
        return self.s + 2

    @property
    def witness(self):
        """``Lambda e / Lambda q`` for a path ``q`` with ``pdim Lambda q = s``."""
        q = self.witness_path
        if q is None:
            return None
        return Quotient(q.source, ((1, q),))


def _finite_ideal_pdims(a):
    eng = engine_for(a)
    for p in a.basis:
        if p.length:
            d = eng.pdim(Ideal(p))
            if d != INFINITY:
                yield d, p


def compute_s(a):
    """Largest finite pdim of a positive-length path ideal, or -1."""
    return max((d for d, _ in _finite_ideal_pdims(a)), default=-1)


def findim_interval(a):
    best = None
    for d, p in _finite_ideal_pdims(a):
        if best is None or d > best[0]:
            best = (d, p)
    if best is None:
        return FindimInterval(-1)
    return FindimInterval(best[0], best[1])


def _support_rho(start, children, projective):
    """Least ``i`` with every non-projective class of step ``i`` recurring forever.

    ``start`` is the set of classes of the module, ``children(c)`` the classes
    of its syzygy.  The support set of step ``i + 1`` is a function of the
    support set of step ``i``, so the sequence is eventually periodic and the
    classes seen infinitely often are those in the sets on the cycle.
    """
    supports = [frozenset(c for c in start if not projective(c))]
    seen = {supports[0]: 0}
    while True:
        nxt = frozenset(d for c in supports[-1] for d in children(c) if not projective(d))
        if nxt in seen:
            recurrent = frozenset().union(*supports[seen[nxt]:])
            return next(i for i, sup in enumerate(supports) if sup <= recurrent)
        seen[nxt] = len(supports)
        supports.append(nxt)


def repetition_index(a, m):
    """Repetition index of a PathIdealSum, computed exactly on ideal classes."""
    if isinstance(m, (Simple, Ideal)):
        m = PathIdealSum([m])
    eng = engine_for(a)
    return _support_rho(set(eng.classes(m)), eng.children, eng.is_projective)


def _all_simples(a):
    return PathIdealSum([Simple(v) for v in a.vertices])


@dataclass(frozen=True)
class IZBounds:
    rho_right: int
    rho_left: int
    dim_j: int

    @property
    def dim_j_check(self):
        return self.rho_right <= self.dim_j


def iz_bounds(a):
    """Repetition index of ``Lambda/J`` on both sides, with the ``dim J`` check.

    The right module is treated as a left module over the opposite algebra.
    """
    op = opposite(a)
    return IZBounds(
        rho_right=repetition_index(op, _all_simples(op)),
        rho_left=repetition_index(a, _all_simples(a)),
        dim_j=dim_radical(a),
    )


# --- classical bounds ---------------------------------------------------------


@dataclass(frozen=True)
class BoundEntry:
    name: str
    hypothesis: str
    applies: bool
    value: int | None = None
    note: str = ""


@dataclass(frozen=True)
class BoundsReport:
    entries: tuple[BoundEntry, ...]

    def __getitem__(self, name):
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def applicable(self):
        return [e for e in self.entries if e.applies and e.value is not None]


def loewy_length(alg):
    if isinstance(alg, AlgebraModel):
        return alg.loewy_length
    return 1 + max((p.length for p, _ in alg.nonzero_paths()), default=0)


def _is_infinite(d):
    return d == INFINITY


def classical_bounds(alg, simple_pdims, rho_right=None, findim_lambda=None):
    """Evaluate each bound whose hypothesis holds on ``alg``.

    ``simple_pdims`` lists the projective dimensions of the simples (engine
    values, ``math.inf``, or oracle ``Exceeded`` markers).  A supremum over an
    empty set is taken to be -1 and flagged in the entry note.  ``rho_right``
    and ``findim_lambda`` feed the entries that need them; pass ``None`` when
    they are unknown.  ``findim_lambda`` marks a tiled reduction.
    """
    n = alg.n
    ll = loewy_length(alg)
    dim_j = alg.dimension - n
    pdims = list(simple_pdims)
    unknown = any(isinstance(d, Exceeded) for d in pdims)
    finite = [d for d in pdims if not isinstance(d, Exceeded) and not _is_infinite(d)]
    n_inf = sum(1 for d in pdims if not isinstance(d, Exceeded) and _is_infinite(d))
    sup = max(finite, default=-1)
    empty_note = "sup over the empty set taken as -1" if not finite else ""
    undetermined = "simple pdims beyond the cutoff; finiteness undetermined"
    j2, j3 = ll <= 2, ll <= 3

    def sup_entry(name, hyp, holds, formula):
        if not holds:
            return BoundEntry(name, hyp, False)
        if unknown:
            return BoundEntry(name, hyp, True, None, undetermined)
        return BoundEntry(name, hyp, True, formula(), empty_note)

    entries = [
        sup_entry("mochizuki_j2", "J^2 = 0", j2, lambda: 1 + sup),
        sup_entry("gzh_mixed_j3", "J^3 = 0", j3, lambda: 1 + sup + 2 * n_inf),
    ]
    all_inf = not unknown and n_inf == n
    if not j3:
        entries.append(BoundEntry("gzh_2n_j3", "J^3 = 0 and every simple has infinite pdim", False))
    elif unknown:
        entries.append(BoundEntry("gzh_2n_j3", "J^3 = 0 and every simple has infinite pdim", True,
                                  None, undetermined))
    else:
        entries.append(BoundEntry("gzh_2n_j3", "J^3 = 0 and every simple has infinite pdim",
                                  all_inf, 2 * n if all_inf else None))
    entries.append(BoundEntry("gzh_n2plus1_j3", "J^3 = 0", j3, n * n + 1 if j3 else None))
    if rho_right is None or isinstance(rho_right, Undetermined):
        entries.append(BoundEntry("iz_rho_right", "repetition index of the right module Lambda/J is known",
                                  False, None, str(rho_right) if rho_right is not None else ""))
    else:
        entries.append(BoundEntry("iz_rho_right", "repetition index of the right module Lambda/J is known",
                                  True, rho_right))
    entries.append(BoundEntry("iz_dimJ", "always", True, dim_j))
    if findim_lambda is None:
        entries.append(BoundEntry("tiled_shift", "algebra is the reduction of a tiled order", False))
    else:
        entries.append(BoundEntry("tiled_shift", "algebra is the reduction of a tiled order", True,
                                  1 + findim_lambda))
    return BoundsReport(tuple(entries))


# --- tiled orders ---------------------------------------------------------------


def lattice_reduction(table, lam, mu):
    """``L / pi L`` for the lattice with exponent column ``mu`` (requires
    ``lam[i][j] + mu[j] >= mu[i]``): one dimension per vertex, and the
    generator from ``j`` to ``i`` acts as 1 iff equality holds."""
    n = len(lam)
    if any(lam[i][j] + mu[j] < mu[i] for i in range(n) for j in range(n)):
        raise ValueError("mu does not define a lattice")
    acts = {}
    for a in table.arrows:
        s, t = table.source[a], table.target[a]
        acts[a] = [{0: 1}] if lam[t][s] + mu[s] == mu[t] else [{}]
    return MatrixModule(table, [1] * n, acts)


def _lattice_columns(lam):
    n = len(lam)
    top = max(max(row) for row in lam)
    for mu in itertools.product(range(top + 1), repeat=n):
        if min(mu) == 0 and all(lam[i][j] + mu[j] >= mu[i] for i in range(n) for j in range(n)):
            yield mu


@dataclass
class TiledReport:
    n: int
    dimension: int
    monomial: bool
    identifications: int
    simple_pdims: list
    rho_simples: list
    rho_left: object
    rho_right: object
    findim_lower: int
    findim_upper: object
    lower_witness: str
    gl_dim_infinite: bool | None
    bounds: BoundsReport | None = None
    notes: list = field(default_factory=list)

    @property
    def findim_exact(self):
        return self.findim_upper == self.findim_lower

    @property
    def order_findim_lower(self):
        return 1 + self.findim_lower

    @property
    def order_findim_upper(self):
        return None if self.findim_upper is None else 1 + self.findim_upper

    @property
    def max_rho_simples(self):
        vals = [r for r in self.rho_simples if isinstance(r, int)]
        if len(vals) < len(self.rho_simples):
            return None
        return max(vals, default=0)


def _gl_dim_verdict(pdims):
    """True when some simple has certified infinite pdim, None when some
    simple only exceeded the cutoff, False otherwise."""
    if any(_is_infinite(d) for d in pdims):
        return True
    if any(isinstance(d, Exceeded) for d in pdims):
        return None
    return False


def _oracle_sum_of_simples(table):
    return direct_sum([simple_module(table, v) for v in range(table.n)], table=table)


def tiled_findim(m, cutoff=DEFAULT_CUTOFF, dim_bound=DEFAULT_DIM_BOUND, seed=0):
    if not isinstance(m, ExponentMatrix):
        m = ExponentMatrix(m)
    based, pres = import_tiled_order(m)
    if not isinstance(pres, NonMonomial):
        return _tiled_monomial(m, based, build_algebra(pres))
    return _tiled_oracle(m, based, pres, cutoff, dim_bound, seed)


def _tiled_monomial(m, based, a):
    eng = engine_for(a)
    pdims = [eng.pdim(Simple(v)) for v in a.vertices]
    interval = findim_interval(a)
    iz = iz_bounds(a)
    upper = min(interval.upper, iz.rho_right)
    witness = str(interval.witness) if interval.witness is not None else "projective modules"
    report = TiledReport(
        n=a.n,
        dimension=a.dimension,
        monomial=True,
        identifications=0,
        simple_pdims=pdims,
        rho_simples=[repetition_index(a, Simple(v)) for v in a.vertices],
        rho_left=iz.rho_left,
        rho_right=iz.rho_right,
        findim_lower=interval.lower,
        findim_upper=upper,
        lower_witness=witness,
        gl_dim_infinite=_gl_dim_verdict(pdims),
    )
    report.bounds = classical_bounds(a, pdims, iz.rho_right,
                                     upper if report.findim_exact else None)
    return report


def _tiled_oracle(m, based, flag, cutoff, dim_bound, seed):
    table = based.table
    left = SyzygyOracle(table, seed, dim_bound)
    right = SyzygyOracle(table.opposite(), seed, dim_bound)
    notes = []

    simples = [simple_module(table, v) for v in range(table.n)]
    pdims = [left.pdim_certified(s, cutoff) for s in simples]
    rho_simples = [left.repetition_index(s, cutoff) for s in simples]
    rho_left = left.repetition_index(_oracle_sum_of_simples(table), cutoff)
    rho_right = right.repetition_index(_oracle_sum_of_simples(right.table), cutoff)

    # lower bound: largest finite pdim over a bounded family of modules
    best, witness = 0, "projective modules"

    def consider(module, label):
        nonlocal best, witness
        try:
            d = left.pdim_upto(module, cutoff)
        except DimensionBoundExceeded:
            notes.append(f"skipped {label}: dimension bound")
            return
        if isinstance(d, int) and d > best:
            best, witness = d, label

    for v, s in enumerate(simples):
        consider(s, f"S({table.vertices[v]})")
    for v in range(table.n):
        P, position = free_module(table, [v])
        for b in table.starting_at[v]:
            if b in table.idempotents:
                continue
            w, i = position[(0, b)]
            consider(quotient(P, [(w, {i: 1})]), f"P({table.vertices[v]})/({table.labels[b]})")
    for mu in _lattice_columns(m.lam):
        consider(lattice_reduction(table, m.lam, mu), "lattice reduction mu=(" + ",".join(map(str, mu)) + ")")

    upper = rho_right if isinstance(rho_right, int) else None
    if upper is not None and best > upper:
        raise AssertionError("certified lower bound exceeds the repetition index upper bound")
    report = TiledReport(
        n=table.n,
        dimension=table.dimension,
        monomial=False,
        identifications=len(flag.identifications),
        simple_pdims=pdims,
        rho_simples=rho_simples,
        rho_left=rho_left,
        rho_right=rho_right,
        findim_lower=best,
        findim_upper=upper,
        lower_witness=witness,
        gl_dim_infinite=_gl_dim_verdict(pdims),
        notes=notes,
    )
    report.bounds = classical_bounds(based, pdims, rho_right, upper if report.findim_exact else None)
    return report
