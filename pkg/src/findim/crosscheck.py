"""Agreement checks between the combinatorial engine and the matrix oracle."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .engine import INFINITY, PathIdealSum, engine_for
from .invariants import findim_interval, iz_bounds
from .oracle.homs import DEFAULT_DIM_BOUND
from .oracle.modules import module_from
from .oracle.tower import DEFAULT_CUTOFF, Exceeded, SyzygyOracle
from .terms import Ideal, Simple

__all__ = ["Mismatch", "crosscheck_algebra", "crosscheck_corpus"]


@dataclass(frozen=True)
class Mismatch:
    algebra: str
    module: str
    kind: str
    detail: str

    def __str__(self):
        return f"{self.algebra}: {self.module}: {self.kind}: {self.detail}"


def _engine_layers(eng, m, k):
    out = []
    for _ in range(k + 1):
        out.append(eng.module_layer_matrix(m))
        m = eng.syzygy(m)
    return out


def crosscheck_algebra(a, cutoff=DEFAULT_CUTOFF, seed=0, dim_bound=DEFAULT_DIM_BOUND, label=None):
    """Compare syzygy layers, pdims, the interval witness and the repetition
    index bounds on every simple and every positive-length path ideal."""
    label = label or repr(a)
    eng = engine_for(a)
    oracle = SyzygyOracle(a.table, seed, dim_bound)
    bad = []
    terms = [Simple(v) for v in a.vertices] + [Ideal(p) for p in a.basis if p.length]
    for term in terms:
        mod = module_from(a, term)
        tower = oracle.tower(mod, cutoff)
        theirs = [oracle.layer_matrix(level) for level in tower]
        ours = _engine_layers(eng, PathIdealSum([term]), cutoff)
        for k, (x, y) in enumerate(zip(ours, theirs)):
            if x != y:
                bad.append(Mismatch(label, str(term), f"layers of syzygy {k}", f"engine {list(x)} oracle {list(y)}"))
                break
        d_engine = eng.pdim(term)
        d_oracle = oracle.pdim_upto(mod, cutoff)
        if d_engine == INFINITY:
            if not isinstance(d_oracle, Exceeded):
                bad.append(Mismatch(label, str(term), "pdim", f"engine infinity oracle {d_oracle}"))
        elif d_engine <= cutoff and d_oracle != d_engine:
            bad.append(Mismatch(label, str(term), "pdim", f"engine {d_engine} oracle {d_oracle}"))

    interval = findim_interval(a)
    if interval.witness is not None:
        d = oracle.pdim_upto(module_from(a, interval.witness), cutoff)
        if d != interval.lower:
            bad.append(Mismatch(label, str(interval.witness), "witness", f"oracle pdim {d}, expected {interval.lower}"))
    iz = iz_bounds(a)
    if iz.rho_right > iz.dim_j:
        bad.append(Mismatch(label, "Lambda/J", "rho_right > dim J", f"{iz.rho_right} > {iz.dim_j}"))
    if interval.lower > iz.rho_right:
        bad.append(Mismatch(label, "Lambda/J", "s+1 > rho_right", f"{interval.lower} > {iz.rho_right}"))
    return bad


def crosscheck_corpus(samples, seed=0, cutoff=DEFAULT_CUTOFF, dim_bound=DEFAULT_DIM_BOUND, generator=None):
    """Run ``crosscheck_algebra`` on ``samples`` seeded random algebras.

    Returns ``(algebras, mismatches)`` in sample order.
    """
    from .corpus import random_monomial_algebra

    generator = generator or random_monomial_algebra
    algebras, bad = [], []
    for i in range(samples):
        rng = random.Random(f"{seed}:{i}")
        a = generator(rng)
        algebras.append(a)
        bad.extend(crosscheck_algebra(a, cutoff, seed, dim_bound, label=f"sample {i}"))
    return algebras, bad
