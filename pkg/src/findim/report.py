"""Loading inputs and assembling JSON-ready reports."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from importlib import resources

from . import __version__
from .algebra import AlgebraModel, build_algebra, opposite
from .engine import INFINITY, PathIdealSum, engine_for
from .engine import pdim as engine_pdim
from .errors import DimensionBoundExceeded, DSLSyntaxError
from .formats import parse_algebra, parse_exponent_matrix, parse_module_expr
from .invariants import (
    classical_bounds,
    findim_interval,
    iz_bounds,
    loewy_length,
    repetition_index,
    tiled_findim,
)
from .oracle.modules import direct_sum, layer_matrix, module_from, simple_module
from .oracle.tower import Exceeded, SyzygyOracle, Undetermined
from .terms import Ideal, Simple
from .tiled import NonMonomial, import_tiled_order

__all__ = [
    "Context",
    "load_input",
    "load_text",
    "value_json",
    "value_text",
    "analyze",
    "syzygy_trace",
    "pdim_report",
    "gldim_report",
    "repindex_report",
    "import_tiled_report",
    "dumps",
    "load_schema",
]


@dataclass
class Context:
    """A parsed input: the engine algebra when monomial, and always the table."""

    kind: str
    digest: str
    name: str
    algebra: AlgebraModel | None
    based: object
    table: object
    quiver: object
    document: object = None
    matrix: object = None
    identifications: tuple = ()

    @property
    def monomial(self):
        return self.algebra is not None

    @property
    def vertices(self):
        return self.table.vertices

    @property
    def model(self):
        """Whatever the oracle should build modules over."""
        return self.algebra if self.algebra is not None else self.based


def load_text(text, kind):
    digest = "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()
    if kind == "tord":
        m = parse_exponent_matrix(text)
        based, pres = import_tiled_order(m)
        if isinstance(pres, NonMonomial):
            return Context("tord", digest, "", None, based, based.table, based.quiver(), matrix=m,
                           identifications=pres.identifications)
        a = build_algebra(pres)
        return Context("tord", digest, "", a, based, a.table, a.quiver, matrix=m)
    if not text.strip():
        raise DSLSyntaxError("empty input", 1, 1)
    doc = parse_algebra(text)
    a = build_algebra(doc.presentation())
    return Context("qalg", digest, doc.name, a, None, a.table, a.quiver, document=doc)


def load_input(path):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    kind = "tord" if str(path).endswith(".tord") else "qalg"
    return load_text(text, kind)


# --- value rendering -----------------------------------------------------------


def value_json(v):
    """Natural numbers, infinity and cutoff markers as tagged JSON objects."""
    if isinstance(v, Exceeded):
        return {"finite": None, "value": None, "exceeds_cutoff": v.cutoff}
    if isinstance(v, Undetermined):
        return {"finite": None, "value": None, "undetermined_at_cutoff": v.cutoff}
    if v == INFINITY:
        return {"finite": False, "value": None}
    return {"finite": True, "value": int(v)}


def value_text(v):
    if isinstance(v, Exceeded):
        return f">{v.cutoff} (cutoff)"
    if isinstance(v, Undetermined):
        return f"undetermined (cutoff {v.cutoff})"
    if v is None:
        return "unknown"
    if v == INFINITY:
        return "infinity"
    return str(int(v))


def _is_uncertain(v):
    return isinstance(v, (Exceeded, Undetermined)) or v is None


def dumps(report):
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False)


def load_schema():
    text = resources.files("findim").joinpath("schema/report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


# --- shared pieces ---------------------------------------------------------------


class _Session:
    """Per-report oracle registries, created lazily."""

    def __init__(self, ctx, seed, cutoff, dim_bound):
        self.ctx = ctx
        self.seed = seed
        self.cutoff = cutoff
        self.dim_bound = dim_bound
        self._left = None
        self._right = None
        self.undetermined = []

    @property
    def left(self):
        if self._left is None:
            self._left = SyzygyOracle(self.ctx.table, self.seed, self.dim_bound)
        return self._left

    @property
    def right(self):
        if self._right is None:
            self._right = SyzygyOracle(self.ctx.table.opposite(), self.seed, self.dim_bound)
        return self._right

    def note(self, what, v):
        if _is_uncertain(v):
            self.undetermined.append(f"{what}: {value_text(v)}")
        return v

    def guarded(self, what, fn):
        try:
            return self.note(what, fn())
        except DimensionBoundExceeded as exc:
            self.undetermined.append(f"{what}: {exc}")
            return None


def _engine_terms(terms):
    return all(isinstance(t, (Simple, Ideal)) for t in terms)


def _module_pdim(session, terms):
    ctx = session.ctx
    if ctx.monomial and _engine_terms(terms):
        return engine_pdim(ctx.algebra, PathIdealSum(terms))
    mod = module_from(ctx.model, terms)
    return session.guarded(_describe(terms), lambda: session.left.pdim_certified(mod, session.cutoff))


def _describe(terms):
    return " + ".join(str(t) for t in terms)


def _header(ctx, seed, cutoff, dim_bound, command):
    alg = ctx.algebra if ctx.algebra is not None else ctx.based
    return {
        "tool": "findim",
        "version": __version__,
        "command": command,
        "input": {"kind": ctx.kind, "digest": ctx.digest},
        "seed": seed,
        "cutoff": cutoff,
        "dim_bound": dim_bound,
        "algebra": {
            "name": ctx.name,
            "vertices": list(ctx.vertices),
            "n": alg.n,
            "dimension": alg.dimension,
            "dim_radical": alg.dimension - alg.n,
            "loewy_length": loewy_length(alg),
            "monomial": ctx.monomial,
            "based": ctx.based is not None,
        },
    }


def _simple_pdims(session, side="left"):
    ctx = session.ctx
    if ctx.monomial:
        a = ctx.algebra if side == "left" else _opposite_algebra(ctx)
        eng = engine_for(a)
        return [eng.pdim(Simple(v)) for v in a.vertices]
    oracle = session.left if side == "left" else session.right
    return [session.guarded(f"pdim of {side} S({v})",
                            lambda i=i: oracle.pdim_certified(simple_module(oracle.table, i), session.cutoff))
            for i, v in enumerate(ctx.vertices)]


def _opposite_algebra(ctx):
    return opposite(ctx.algebra)


def _rho_block(session, side):
    ctx = session.ctx
    out = {}
    if ctx.monomial:
        a = ctx.algebra
        iz = iz_bounds(a)
        if side in ("left", "both"):
            out["left_simples"] = [{"vertex": v, "value": value_json(repetition_index(a, Simple(v)))}
                                   for v in a.vertices]
            out["left"] = value_json(iz.rho_left)
        if side in ("right", "both"):
            out["right"] = value_json(iz.rho_right)
        out["dim_radical"] = iz.dim_j
        return out, iz.rho_right
    table = ctx.table
    rho_right = None
    if side in ("left", "both"):
        out["left_simples"] = [
            {"vertex": v, "value": _opt_json(session.guarded(
                f"rho of S({v})", lambda i=i: session.left.repetition_index(simple_module(table, i), session.cutoff)))}
            for i, v in enumerate(ctx.vertices)]
        top = direct_sum([simple_module(table, i) for i in range(table.n)], table=table)
        out["left"] = _opt_json(session.guarded(
            "rho of left Lambda/J", lambda: session.left.repetition_index(top, session.cutoff)))
    if side in ("right", "both"):
        rt = session.right.table
        top = direct_sum([simple_module(rt, i) for i in range(rt.n)], table=rt)
        rho_right = session.guarded("rho of right Lambda/J", lambda: session.right.repetition_index(top, session.cutoff))
        out["right"] = _opt_json(rho_right)
    out["dim_radical"] = table.dimension - table.n
    return out, rho_right


def _opt_json(v):
    return None if v is None else value_json(v)


def _bounds_json(report):
    return [{"name": e.name, "hypothesis": e.hypothesis, "applies": e.applies, "value": e.value, "note": e.note}
            for e in report.entries]


# --- commands ---------------------------------------------------------------------


def analyze(ctx, seed=0, cutoff=12, dim_bound=60, side="both"):
    session = _Session(ctx, seed, cutoff, dim_bound)
    out = _header(ctx, seed, cutoff, dim_bound, "analyze")
    out["side"] = side
    left_pdims = _simple_pdims(session, "left")
    out["simple_pdims"] = [{"vertex": v, "pdim": _opt_json(d)} for v, d in zip(ctx.vertices, left_pdims)]
    if side in ("right", "both"):
        right = _simple_pdims(session, "right")
        out["right_simple_pdims"] = [{"vertex": v, "pdim": _opt_json(d)} for v, d in zip(ctx.vertices, right)]

    if ctx.monomial:
        a = ctx.algebra
        interval = findim_interval(a)
        witness = interval.witness
        w_pdim = None
        if witness is not None:
            w_pdim = session.guarded("witness pdim", lambda: session.left.pdim_upto(module_from(a, witness), cutoff))
        out["s"] = interval.s
        out["findim_interval"] = {
            "lower": interval.lower,
            "upper": interval.upper,
            "empty_sup": interval.s == -1,
            "witness": str(witness) if witness is not None else None,
            "witness_oracle_pdim": _opt_json(w_pdim),
        }
    else:
        out["s"] = None
        out["findim_interval"] = None

    rho, rho_right = _rho_block(session, side)
    out["rho"] = rho

    tiled = None
    if ctx.kind == "tord":
        tr = tiled_findim(ctx.matrix, cutoff=cutoff, dim_bound=dim_bound, seed=seed)
        for note in tr.notes:
            session.undetermined.append(note)
        if tr.findim_upper is None:
            session.undetermined.append("upper bound for fin dim: repetition index undetermined")
        tiled = {
            "findim_lambda": {"lower": tr.findim_lower, "upper": tr.findim_upper, "exact": tr.findim_exact,
                              "lower_witness": tr.lower_witness},
            "findim_order": {"lower": tr.order_findim_lower, "upper": tr.order_findim_upper,
                             "exact": tr.findim_exact},
            "gl_dim_infinite": tr.gl_dim_infinite,
            "identifications": [[str(p), str(q), z] for p, q, z in ctx.identifications],
        }
        if rho_right is None and side == "left" and isinstance(tr.rho_right, int):
            rho_right = tr.rho_right
        findim_lambda = tr.findim_lower if tr.findim_exact else None
    else:
        findim_lambda = None
    out["tiled"] = tiled

    alg = ctx.algebra if ctx.algebra is not None else ctx.based
    bounds = classical_bounds(alg, [d if d is not None else Exceeded(cutoff) for d in left_pdims],
                              rho_right if not _is_uncertain(rho_right) else None, findim_lambda)
    out["bounds"] = _bounds_json(bounds)

    modules = []
    if ctx.document is not None:
        for name, terms in ctx.document.modules:
            d = _module_pdim(session, list(terms))
            entry = {"name": name, "expression": _describe(terms), "pdim": _opt_json(d)}
            try:
                entry["layers"] = [list(r) for r in layer_matrix(module_from(ctx.model, list(terms)))]
            except DimensionBoundExceeded:
                entry["layers"] = None
            modules.append(entry)
    out["modules"] = modules
    out["undetermined"] = session.undetermined
    return out


def _parse_expr(ctx, expr):
    return list(parse_module_expr(expr, ctx.quiver))


def syzygy_trace(ctx, expr, k, seed=0, cutoff=12, dim_bound=60):
    session = _Session(ctx, seed, cutoff, dim_bound)
    terms = _parse_expr(ctx, expr)
    out = _header(ctx, seed, cutoff, dim_bound, "syzygy")
    out["module"] = _describe(terms)
    steps = []
    if ctx.monomial and _engine_terms(terms):
        eng = engine_for(ctx.algebra)
        m = PathIdealSum(terms)
        for i in range(k + 1):
            lm = eng.module_layer_matrix(m)
            steps.append({"k": i, "dimension": lm.total, "layers": [list(r) for r in lm],
                          "summands": [{"module": str(t), "multiplicity": c} for t, c in m.items()]})
            m = eng.syzygy(m)
        out["method"] = "engine"
    else:
        oracle = session.left
        try:
            levels = oracle.tower(module_from(ctx.model, terms), k)
        except DimensionBoundExceeded as exc:
            session.undetermined.append(str(exc))
            levels = []
        for i, level in enumerate(levels):
            lm = oracle.layer_matrix(level)
            steps.append({"k": i, "dimension": lm.total, "layers": [list(r) for r in lm], "summands": [
                {"module": f"class {cid} (dim {oracle.classes[cid].dimension})", "multiplicity": c}
                for cid, c in sorted(level.items())]})
        out["method"] = "oracle"
    out["steps"] = steps
    out["undetermined"] = session.undetermined
    return out


def pdim_report(ctx, expr, seed=0, cutoff=12, dim_bound=60):
    session = _Session(ctx, seed, cutoff, dim_bound)
    terms = _parse_expr(ctx, expr)
    out = _header(ctx, seed, cutoff, dim_bound, "pdim")
    out["module"] = _describe(terms)
    out["method"] = "engine" if ctx.monomial and _engine_terms(terms) else "oracle"
    out["pdim"] = _opt_json(_module_pdim(session, terms))
    out["undetermined"] = session.undetermined
    return out


def gldim_report(ctx, seed=0, cutoff=12, dim_bound=60):
    session = _Session(ctx, seed, cutoff, dim_bound)
    out = _header(ctx, seed, cutoff, dim_bound, "gldim")
    pdims = _simple_pdims(session, "left")
    out["simple_pdims"] = [{"vertex": v, "pdim": _opt_json(d)} for v, d in zip(ctx.vertices, pdims)]
    if any(d == INFINITY for d in pdims if not _is_uncertain(d)):
        gl = INFINITY
    elif any(_is_uncertain(d) for d in pdims):
        gl = Exceeded(cutoff)
    else:
        gl = max(pdims, default=0)
    out["gl_dim"] = value_json(gl)
    out["undetermined"] = session.undetermined
    return out


def repindex_report(ctx, expr, seed=0, cutoff=12, dim_bound=60):
    session = _Session(ctx, seed, cutoff, dim_bound)
    terms = _parse_expr(ctx, expr)
    out = _header(ctx, seed, cutoff, dim_bound, "repindex")
    out["module"] = _describe(terms)
    if ctx.monomial and _engine_terms(terms):
        out["method"] = "engine"
        out["rho_value"] = value_json(repetition_index(ctx.algebra, PathIdealSum(terms)))
    else:
        out["method"] = "oracle"
        mod = module_from(ctx.model, terms)
        out["rho_value"] = _opt_json(session.guarded(
            "repetition index", lambda: session.left.repetition_index(mod, cutoff)))
    out["undetermined"] = session.undetermined
    return out


def import_tiled_report(ctx, seed=0, cutoff=12, dim_bound=60):
    out = _header(ctx, seed, cutoff, dim_bound, "import-tiled")
    q = ctx.quiver if ctx.algebra is None else ctx.based.quiver()
    out["arrows"] = [{"name": a.name, "source": a.source, "target": a.target} for a in q.arrows]
    if ctx.monomial:
        rels = sorted(ctx.algebra.presentation.relations, key=lambda p: (p.length, p.arrows))
        out["relations"] = [str(r) for r in rels]
        out["identifications"] = []
    else:
        out["relations"] = None
        out["identifications"] = [[str(p), str(q_), z] for p, q_, z in ctx.identifications]
    out["undetermined"] = []
    return out
