"""Cohomology of the model: page-3 tables, Euler characteristic, audits.

The differential preserves the balance #x - #y of one-form symbols, so every
bidegree splits into weight blocks and ranks are computed blockwise.  The
weight-refined dimensions are exactly the torus-weight multiplicities used
for the representation-theoretic tables of the braid case.

Non-essential arrangements are handled by splitting off torus factors:
Betti data of the product is the core data convolved with the cohomology of
one curve, (1, 2, 1), once per factor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import arrangement as arr_mod
from . import exactlin
from .arrangement import Arrangement
from .model import BigradedDGA, TensorModel


@dataclass
class BettiTable:
    """Sparse bigraded dimension table, with torus-weight refinement."""

    page: int
    entries: dict = field(default_factory=dict)           # (p,q) -> dim
    weights: dict = field(default_factory=dict)           # (p,q) -> {a: dim}
    ambient_n: int = 0
    rank: int = 0
    e_factors: int = 0

    def dim(self, p: int, q: int) -> int:
        return self.entries.get((p, q), 0)

    def weight_dim(self, p: int, q: int, a: int) -> int:
        return self.weights.get((p, q), {}).get(a, 0)

    def sl2_multiplicity(self, p: int, q: int, k: int) -> int:
        """Multiplicity of the (k+1)-dimensional torus-graded block."""
        return self.weight_dim(p, q, k) - self.weight_dim(p, q, k + 2)

    def total_betti(self) -> list[int]:
        if not self.entries:
            return [0]
        top = max(p + q for p, q in self.entries)
        out = [0] * (top + 1)
        for (p, q), d in self.entries.items():
            out[p + q] += d
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return out

    def euler(self) -> int:
        return sum((-1) ** ((p + q) % 2) * d for (p, q), d in self.entries.items())


def essentialize(arr: Arrangement) -> tuple[Arrangement, list[list[int]], int]:
    """Split an arrangement as (essential core, row transform, torus factors).

    The transform U is unimodular with U*N zero below the first r rows; the
    core is the truncation, an essential arrangement of the same divisors in
    a rank-many-dimensional ambient.  Essential inputs are returned as-is.
    """
    n = arr.n
    mat = arr.matrix()
    r = exactlin.rational_rank(mat) if arr.size else 0
    if r == n:
        return arr, exactlin.identity(n), 0
    snf = exactlin.smith_normal_form(mat)
    un = exactlin.mat_mul(snf.u, mat)
    core_cols = tuple(tuple(un[i][j] for i in range(r)) for j in range(arr.size))
    core = Arrangement(r, core_cols, arr.offsets)
    return core, snf.u, n - r


def full_model(arr: Arrangement) -> TensorModel:
    """Tensor model of any arrangement: essential core times torus factors."""
    core_arr, transform, nbars = essentialize(arr)
    return TensorModel(BigradedDGA(core_arr), nbars, transform)


def page2_table(dga: BigradedDGA) -> BettiTable:
    entries = {}
    weights = {}
    for (p, q) in dga.bidegrees():
        monos = dga.basis(p, q)
        if not monos:
            continue
        entries[(p, q)] = len(monos)
        wd: dict[int, int] = {}
        for m in monos:
            a = dga.weight_of(m)
            wd[a] = wd.get(a, 0) + 1
        weights[(p, q)] = wd
    return BettiTable(page=2, entries=entries, weights=weights,
                      ambient_n=dga.n, rank=dga.poset.top_rank)


class _RankEngine:
    """Weight-blocked exact ranks of the differential, cached per bidegree."""

    def __init__(self, dga: BigradedDGA):
        self.dga = dga
        self._ranks: dict[tuple[int, int], dict[int, int]] = {}

    def ranks(self, p: int, q: int) -> dict[int, int]:
        """Rank of d: (p,q) -> (p+2,q-1), per weight block."""
        key = (p, q)
        got = self._ranks.get(key)
        if got is not None:
            return got
        out: dict[int, int] = {}
        if q >= 1 and self.dga.dim(p, q) and self.dga.dim(p + 2, q - 1):
            tgt_index = self.dga.index(p + 2, q - 1)
            by_weight: dict[int, list[dict[int, Fraction]]] = {}
            for mono in self.dga.basis(p, q):
                col = {tgt_index[m]: c for m, c in self.dga.d_monomial(mono).items()}
                if col:
                    by_weight.setdefault(self.dga.weight_of(mono), []).append(col)
            for a, cols in by_weight.items():
                out[a] = exactlin.sparse_rank(cols)
        self._ranks[key] = out
        return out


def page3_table(dga: BigradedDGA, engine: Optional[_RankEngine] = None) -> BettiTable:
    """Cohomology of (page 2, d) computed by exact ranks, weight by weight."""
    engine = engine or _RankEngine(dga)
    page2 = page2_table(dga)
    entries = {}
    weights = {}
    for (p, q), wd in sorted(page2.weights.items()):
        out_r = engine.ranks(p, q)
        in_r = engine.ranks(p - 2, q + 1)
        wd3 = {}
        for a, d in wd.items():
            v = d - out_r.get(a, 0) - in_r.get(a, 0)
            if v:
                wd3[a] = v
        if wd3:
            weights[(p, q)] = wd3
            entries[(p, q)] = sum(wd3.values())
    return BettiTable(page=3, entries=entries, weights=weights,
                      ambient_n=dga.n, rank=dga.poset.top_rank)


def tensor_with_curve(table: BettiTable, nfactors: int) -> BettiTable:
    """Tensor a table with the cohomology of a curve, (1,2,1), per factor.

    The degree-1 part carries torus weights +1 and -1, the ends weight 0.
    """
    entries = dict(table.entries)
    weights = {k: dict(v) for k, v in table.weights.items()}
    for _ in range(nfactors):
        new_w: dict = {}
        for (p, q), wd in weights.items():
            for a, d in wd.items():
                for dp, da, mult in ((0, 0, 1), (1, 1, 1), (1, -1, 1), (2, 0, 1)):
                    tgt = new_w.setdefault((p + dp, q), {})
                    tgt[a + da] = tgt.get(a + da, 0) + d * mult
        weights = new_w
        entries = {k: sum(v.values()) for k, v in weights.items()}
    return BettiTable(page=table.page, entries=entries, weights=weights,
                      ambient_n=table.ambient_n + nfactors, rank=table.rank,
                      e_factors=table.e_factors + nfactors)


def betti_page3(dga: BigradedDGA) -> BettiTable:
    """Page-3 table of an essential model; alias for ``page3_table``."""
    return page3_table(dga)


def betti_tables(arr: Arrangement, jobs: int = 1) -> tuple[BettiTable, BettiTable]:
    """(page 2, page 3) tables of an arbitrary arrangement.

    With ``jobs`` > 1 the per-bidegree rank computations are dispatched to a
    worker pool; results are identical to the sequential run.
    """
    core_arr, _, nbars = essentialize(arr)
    dga = BigradedDGA(core_arr)
    engine = _RankEngine(dga)
    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor
        degs = [bd for bd in dga.bidegrees() if dga.dim(*bd)]
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            list(pool.map(lambda bd: engine.ranks(*bd), degs))
    t2 = page2_table(dga)
    t3 = page3_table(dga, engine)
    if nbars:
        t2 = tensor_with_curve(t2, nbars)
        t3 = tensor_with_curve(t3, nbars)
    return t2, t3


def euler_characteristic(source) -> int:
    """Alternating sum over page 2; equals the page-3 sum by exactness.

    Accepts a table, a model, or an arrangement.  No rank computation is
    needed, and any split-off curve factor forces zero.
    """
    if isinstance(source, BettiTable):
        return source.euler()
    if isinstance(source, BigradedDGA):
        return page2_table(source).euler()
    core_arr, _, nbars = essentialize(source)
    if nbars:
        return 0
    return page2_table(BigradedDGA(core_arr)).euler()


def verify_vanishing(arr: Arrangement, page3_full: BettiTable,
                     page2_core: Optional[BettiTable] = None,
                     page3_core: Optional[BettiTable] = None) -> dict:
    """Check the vanishing bound and the support triangles.

    Total cohomology must vanish above 2n - r; the core tables must live in
    the page-2 triangle p + 2q <= 2r and the page-3 triangle p + q <= r.
    """
    n = arr.n
    r = arr_mod.arrangement_rank(arr)
    violations = []
    for (p, q), d in sorted(page3_full.entries.items()):
        if d and p + q > 2 * n - r:
            violations.append({"table": "page3", "p": p, "q": q, "dim": d,
                               "bound": "p+q <= 2n-r = %d" % (2 * n - r)})
    if page2_core is not None:
        for (p, q), d in sorted(page2_core.entries.items()):
            if d and p + 2 * q > 2 * r:
                violations.append({"table": "page2-core", "p": p, "q": q,
                                   "dim": d, "bound": "p+2q <= 2r = %d" % (2 * r)})
    if page3_core is not None:
        for (p, q), d in sorted(page3_core.entries.items()):
            if d and p + q > r:
                violations.append({"table": "page3-core", "p": p, "q": q,
                                   "dim": d, "bound": "p+q <= r = %d" % r})
    return {"ok": not violations, "violations": violations,
            "ambient_n": n, "rank": r}


def verify_first_column(dga: BigradedDGA) -> dict:
    """Injectivity of d on the first column: no page-3 classes at p = 0, q > 0."""
    engine = _RankEngine(dga)
    failures = []
    for q in sorted(dga.poset.by_rank):
        if q == 0:
            continue
        dim = dga.dim(0, q)
        rank = sum(engine.ranks(0, q).values())
        if rank != dim:
            failures.append({"q": q, "dim": dim, "rank": rank})
    return {"ok": not failures, "failures": failures}
