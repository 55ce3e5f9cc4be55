"""Syzygy sequences tracked up to isomorphism.

Syzygies of direct sums are direct sums of syzygies, so a syzygy sequence is
stored as multisets of isomorphism classes of indecomposables.  That keeps
the cost linear in the number of classes met even when multiplicities grow
exponentially.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from ..terms import LayerMatrix
from .homs import DEFAULT_DIM_BOUND, are_isomorphic, decompose, iso_invariants
from .modules import syzygy_matrix

__all__ = ["Exceeded", "Undetermined", "SyzygyOracle", "pdim_upto", "repetition_index_bounded"]

DEFAULT_CUTOFF = 12


@dataclass(frozen=True)
class Exceeded:
    """The projective dimension is larger than ``cutoff`` (possibly infinite)."""

    cutoff: int

    def __str__(self):
        return f">{self.cutoff}"


@dataclass(frozen=True)
class Undetermined:
    """No periodicity of the syzygy class sets was found within ``cutoff`` steps."""

    cutoff: int

    def __str__(self):
        return f"undetermined(cutoff={self.cutoff})"


class SyzygyOracle:
    """Registry of indecomposable isomorphism classes over one algebra."""

    def __init__(self, table, seed=0, dim_bound=DEFAULT_DIM_BOUND):
        self.table = table
        self.seed = seed
        self.dim_bound = dim_bound
        self.classes = []
        self.layers = []
        self._buckets = {}
        self._syzygy = {}

    def classify(self, m):
        """Class id of the indecomposable module ``m``."""
        key = iso_invariants(m)
        bucket = self._buckets.setdefault(key, [])
        for cid in bucket:
            if are_isomorphic(m, self.classes[cid], seed=self.seed, dim_bound=self.dim_bound):
                return cid
        cid = len(self.classes)
        self.classes.append(m)
        self.layers.append(LayerMatrix(key[1]))
        bucket.append(cid)
        return cid

    def split(self, m):
        return Counter(self.classify(x) for x in decompose(m, seed=self.seed, dim_bound=self.dim_bound))

    def syzygy_classes(self, cid):
        out = self._syzygy.get(cid)
        if out is None:
            out = self.split(syzygy_matrix(self.classes[cid]))
            self._syzygy[cid] = out
        return out

    def is_projective(self, cid):
        return not self.syzygy_classes(cid)

    def step(self, level):
        nxt = Counter()
        for cid, mult in level.items():
            for child, k in self.syzygy_classes(cid).items():
                nxt[child] += mult * k
        return nxt

    def tower(self, m, k):
        """``[Omega^0, ..., Omega^k]`` of ``m`` as Counters of class ids."""
        level = self.split(m) if not isinstance(m, Counter) else m
        out = [level]
        for _ in range(k):
            level = self.step(level)
            out.append(level)
        return out

    def layer_matrix(self, level):
        total = LayerMatrix()
        for cid, mult in sorted(level.items()):
            total = total + self.layers[cid].scaled(mult)
        return total

    def pdim_upto(self, m, cutoff=DEFAULT_CUTOFF):
        level = self.split(m) if not isinstance(m, Counter) else m
        for k in range(cutoff + 1):
            if all(self.is_projective(c) for c in level):
                return k
            level = self.step(level)
        return Exceeded(cutoff)

    def pdim_certified(self, m, cutoff=DEFAULT_CUTOFF):
        """Like ``pdim_upto`` but returns ``math.inf`` when the sets of
        non-projective classes repeat while nonempty, which forces every later
        syzygy to be non-projective."""
        level = self.split(m) if not isinstance(m, Counter) else m
        support = self.nonprojective_support(level)
        seen = set()
        for k in range(cutoff + 1):
            if not support:
                return k
            if support in seen:
                return math.inf
            seen.add(support)
            support = frozenset(x for c in support for x in self.syzygy_classes(c)
                                if not self.is_projective(x))
        return Exceeded(cutoff)

    def nonprojective_support(self, level):
        return frozenset(c for c in level if not self.is_projective(c))

    def repetition_index(self, m, cutoff=DEFAULT_CUTOFF):
        """Least ``i`` such that every non-projective indecomposable summand of
        ``Omega^i`` recurs in infinitely many later syzygies.

        The set of classes in ``Omega^(i+1)`` is a function of the set in
        ``Omega^i``, so once a set repeats the sequence is periodic and the
        classes recurring infinitely often are those on the cycle.
        """
        level = self.split(m) if not isinstance(m, Counter) else m
        supports = [self.nonprojective_support(level)]
        seen = {supports[0]: 0}
        for j in range(1, cutoff + 1):
            nxt = set()
            for c in supports[-1]:
                nxt.update(x for x in self.syzygy_classes(c) if not self.is_projective(x))
            s = frozenset(nxt)
            if s in seen:
                start = seen[s]
                recurrent = frozenset().union(*supports[start:])
                return next(i for i, sup in enumerate(supports) if sup <= recurrent)
            seen[s] = j
            supports.append(s)
        return Undetermined(cutoff)


def pdim_upto(m, cutoff=DEFAULT_CUTOFF, seed=0, dim_bound=DEFAULT_DIM_BOUND):
    """Least ``k <= cutoff`` with ``Omega^k(m)`` projective, else Exceeded(cutoff)."""
    if cutoff < 0:
        raise ValueError("cutoff must be nonnegative")
    return SyzygyOracle(m.table, seed, dim_bound).pdim_upto(m, cutoff)


def repetition_index_bounded(m, cutoff=DEFAULT_CUTOFF, seed=0, dim_bound=DEFAULT_DIM_BOUND):
    return SyzygyOracle(m.table, seed, dim_bound).repetition_index(m, cutoff)


def syzygy_layers(m, k, seed=0, dim_bound=DEFAULT_DIM_BOUND):
    """Layer matrices of ``Omega^0 .. Omega^k`` of ``m``."""
    oracle = SyzygyOracle(m.table, seed, dim_bound)
    return [oracle.layer_matrix(level) for level in oracle.tower(m, k)]
