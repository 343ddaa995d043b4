"""Arrangements of divisors on a product of elliptic curves.

A divisor is encoded by an integer column (its group equation) plus an
optional torsion offset, one rational mod 1 per circle coordinate of the
curve.  Layers are connected components of divisor intersections; they are
identified by the saturated lattice of their defining equations together
with the component label, which makes deduplication and containment tests
exact and cheap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

from . import exactlin
from .exactlin import frac_mod1

Offset = tuple[Fraction, Fraction]


class ArrangementError(ValueError):
    pass


@dataclass(frozen=True)
class Arrangement:
    """n-dimensional ambient, one integer column per divisor.

    Columns must be nonzero with coprime entries (a divisor is connected
    exactly when the gcd of its coefficients is 1).  The column order is
    fixed and meaningful: broken circuits, bases and signs depend on it.
    """

    n: int
    columns: tuple[tuple[int, ...], ...]
    offsets: tuple[Offset, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise ArrangementError("ambient dimension must be >= 0")
        cols = tuple(tuple(int(x) for x in c) for c in self.columns)
        object.__setattr__(self, "columns", cols)
        for k, c in enumerate(cols):
            if len(c) != self.n:
                raise ArrangementError(
                    "column %d has length %d, expected %d" % (k, len(c), self.n))
            g = 0
            for x in c:
                g = gcd(g, abs(x))
            if g != 1:
                raise ArrangementError(
                    "column %d has gcd %d; a divisor is connected only if the "
                    "gcd of its coefficients is 1" % (k, g))
        if self.offsets:
            offs = tuple((frac_mod1(Fraction(a)), frac_mod1(Fraction(b)))
                         for a, b in self.offsets)
        else:
            offs = tuple((Fraction(0), Fraction(0)) for _ in cols)
        if len(offs) != len(cols):
            raise ArrangementError("need one offset per divisor")
        object.__setattr__(self, "offsets", offs)

    @property
    def size(self) -> int:
        return len(self.columns)

    def matrix(self) -> list[list[int]]:
        """Defining matrix: columns are the divisor equations."""
        return [[self.columns[j][i] for j in range(self.size)]
                for i in range(self.n)]

    def submatrix_t(self, indices: Iterable[int]) -> list[list[int]]:
        """Rows of the transposed system for the chosen divisors."""
        return [list(self.columns[i]) for i in indices]


@dataclass(frozen=True)
class Layer:
    """A connected component of a divisor intersection.

    ``lattice`` is the Hermite basis of the saturated equation lattice and
    ``t1``/``t2`` are the lattice pairings of any point of the layer, per
    circle coordinate; together they determine the layer as a point set.
    """

    rank: int
    lattice: tuple[tuple[int, ...], ...]
    t1: tuple[Fraction, ...]
    t2: tuple[Fraction, ...]
    witness1: tuple[Fraction, ...]
    witness2: tuple[Fraction, ...]
    flat: frozenset[int] = field(compare=False)
    index: int = field(default=-1, compare=False)

    @property
    def key(self):
        return (self.lattice, self.t1, self.t2)


def _pairing(lattice, point) -> tuple[Fraction, ...]:
    return tuple(frac_mod1(sum(Fraction(r[k]) * point[k]
                               for k in range(len(point))))
                 for r in lattice)


class _RankCache:
    """Rank oracle for column subsets of one arrangement."""

    def __init__(self, arr: Arrangement):
        self.arr = arr
        self._cache: dict[frozenset[int], int] = {frozenset(): 0}

    def rank(self, indices) -> int:
        key = frozenset(indices)
        got = self._cache.get(key)
        if got is None:
            got = exactlin.rational_rank(self.arr.submatrix_t(sorted(key)))
            self._cache[key] = got
        return got

    def is_independent(self, indices) -> bool:
        idx = frozenset(indices)
        return self.rank(idx) == len(idx)

    def in_closure(self, j: int, indices) -> bool:
        return self.rank(frozenset(indices) | {j}) == self.rank(indices)


def independent_sets(arr: Arrangement,
                     cache: Optional[_RankCache] = None) -> list[tuple[int, ...]]:
    """All independent column index sets, in lexicographic order.

    Depth-first growth with an integer echelon carried along each branch;
    rows are kept primitive to bound entry growth.
    """
    cache = cache or _RankCache(arr)
    out: list[tuple[int, ...]] = []

    def reduce_against(rows, vec):
        v = list(vec)
        for lead, row in rows:
            if v[lead]:
                a, b = row[lead], v[lead]
                v = [x * a - b * y for x, y in zip(v, row)]
        for lead, x in enumerate(v):
            if x:
                g = 0
                for y in v:
                    g = gcd(g, abs(y))
                return lead, [y // g for y in v]
        return None

    def extend(prefix: tuple[int, ...], rows):
        out.append(prefix)
        start = prefix[-1] + 1 if prefix else 0
        for j in range(start, arr.size):
            red = reduce_against(rows, arr.columns[j])
            if red is not None:
                extend(prefix + (j,), rows + [red])

    extend((), [])
    return out


def circuits(arr: Arrangement) -> list[tuple[int, ...]]:
    """Minimal dependent sets, in lexicographic order.

    Every circuit arises as the fundamental circuit of some element over an
    independent set, so scanning extensions of the independent sets finds
    them all.
    """
    cache = _RankCache(arr)
    found: set[tuple[int, ...]] = set()
    for ind in independent_sets(arr, cache):
        iset = set(ind)
        for e in range(arr.size):
            if e in iset:
                continue
            if cache.in_closure(e, ind):
                found.add(fundamental_circuit(arr, e, ind))
    return sorted(found)


def fundamental_circuit(arr: Arrangement, e: int,
                        independent: Sequence[int]) -> tuple[int, ...]:
    """The unique circuit inside independent + {e}, given e in its span."""
    cols = sorted(independent)
    mat = [[arr.columns[j][i] for j in cols] for i in range(arr.n)]
    rhs = [[arr.columns[e][i]] for i in range(arr.n)]
    sol = exactlin.solve_linear(mat, rhs)
    if sol is None:
        raise ArrangementError("element %d is not in the span of %s" % (e, cols))
    members = [e] + [cols[k] for k in range(len(cols)) if sol[k][0]]
    return tuple(sorted(members))


def circuit_support_coefficients(arr: Arrangement, circuit: Sequence[int]
                                 ) -> list[Fraction]:
    """Coefficients of the (unique up to scale) dependency on a circuit."""
    c = sorted(circuit)
    mat = [[arr.columns[j][i] for j in c] for i in range(arr.n)]
    ker = exactlin.kernel_basis(mat)
    if len(ker) != 1:
        raise ArrangementError("%s is not a circuit" % (c,))
    return list(ker[0])


_FZERO = Fraction(0)


def _components_raw(arr: Arrangement, idx: tuple[int, ...]):
    """Component data (rank, lattice, keys, witnesses) without flats."""
    zero = tuple(_FZERO for _ in range(arr.n))
    if not idx:
        return [(0, (), (), (), zero, zero)]
    system = arr.submatrix_t(idx)           # |I| x n rows c_i^T
    q1 = [arr.offsets[i][0] for i in idx]
    q2 = [arr.offsets[i][1] for i in idx]
    if not any(q1) and not any(q2):
        divisors = exactlin.elementary_divisors(system)
        if all(d == 1 for d in divisors):
            # connected intersection through the origin
            lattice = exactlin.hermite_row_basis(system)
            zk = tuple(_FZERO for _ in lattice)
            return [(len(idx), lattice, zk, zk, zero, zero)]
    snf = exactlin.smith_normal_form(system)
    sols1 = exactlin.torsion_from_snf(snf, len(idx), arr.n, q1)
    sols2 = exactlin.torsion_from_snf(snf, len(idx), arr.n, q2)
    vinv = exactlin.inv_unimodular(snf.v)
    lattice = exactlin.hermite_row_basis(vinv[:len(snf.divisors)])
    out = []
    for w1 in sols1:
        for w2 in sols2:
            out.append((len(idx), lattice, _pairing(lattice, w1),
                        _pairing(lattice, w2), w1, w2))
    return out


def components_of(arr: Arrangement, independent: Sequence[int],
                  cache: Optional[_RankCache] = None) -> list[Layer]:
    """One Layer per connected component of the intersection over ``independent``.

    The two circle coordinates of the curve are solved separately and the
    component sets multiply; the component count is the squared product of
    the elementary divisors.
    """
    idx = tuple(sorted(independent))
    cache = cache or _RankCache(arr)
    if not cache.is_independent(idx):
        raise ArrangementError("%s is a dependent set" % (idx,))
    layers = []
    for rank, lattice, t1, t2, w1, w2 in _components_raw(arr, idx):
        flat = _flat_of(arr, lattice, w1, w2)
        layers.append(Layer(rank=rank, lattice=lattice, t1=t1, t2=t2,
                            witness1=w1, witness2=w2, flat=flat))
    return layers


def _flat_of(arr, lattice, w1, w2) -> frozenset[int]:
    """Divisors containing the whole layer: span condition plus one point."""
    flat = set()
    for i, col in enumerate(arr.columns):
        if lattice:
            if not exactlin.in_row_span(lattice, col):
                continue
        elif any(col):
            continue
        v1 = sum(Fraction(col[k]) * w1[k] for k in range(arr.n) if col[k])
        v2 = sum(Fraction(col[k]) * w2[k] for k in range(arr.n) if col[k])
        if (frac_mod1(v1 - arr.offsets[i][0]) == 0
                and frac_mod1(v2 - arr.offsets[i][1]) == 0):
            flat.add(i)
    return frozenset(flat)


class LayerPoset:
    """Graded poset of layers, ordered so the whole space is the minimum.

    ``leq(a, b)`` means layer a contains layer b as point sets.  Layers are
    indexed in a deterministic order (rank, then lattice key, then component
    label), so downstream constructions are reproducible.
    """

    def __init__(self, arr: Arrangement, layers: list[Layer],
                 assoc: dict[frozenset[int], tuple[int, ...]],
                 rank_cache: _RankCache):
        self.arrangement = arr
        self.layers = layers
        self.assoc = assoc
        self._rank_cache = rank_cache
        self._above = [0] * len(layers)   # bitmask: j with leq(i, j)
        by_rank: dict[int, list[int]] = {}
        for lay in layers:
            by_rank.setdefault(lay.rank, []).append(lay.index)
        self.by_rank = by_rank
        for a in layers:
            mask = 0
            for b in layers:
                if self._contains(a, b):
                    mask |= 1 << b.index
            self._above[a.index] = mask

    @staticmethod
    def _contains(outer: Layer, inner: Layer) -> bool:
        if outer.rank > inner.rank:
            return False
        if not outer.flat <= inner.flat:
            return False
        return (_pairing(outer.lattice, inner.witness1) == outer.t1
                and _pairing(outer.lattice, inner.witness2) == outer.t2)

    def leq(self, a: int, b: int) -> bool:
        return bool(self._above[a] >> b & 1)

    @property
    def size(self) -> int:
        return len(self.layers)

    def rank(self, a: int) -> int:
        return self.layers[a].rank

    @property
    def top_rank(self) -> int:
        return max(self.by_rank) if self.by_rank else 0

    def covers(self) -> list[tuple[int, int]]:
        out = []
        for a in self.layers:
            for b in self.layers:
                if a.rank + 1 == b.rank and self.leq(a.index, b.index):
                    out.append((a.index, b.index))
        return sorted(out)

    def layers_associated(self, indices) -> tuple[int, ...]:
        return self.assoc.get(frozenset(indices), ())

    def component_inside(self, indices, inner: int) -> Optional[int]:
        """The layer associated to ``indices`` containing layer ``inner``."""
        for lid in self.layers_associated(indices):
            if self.leq(lid, inner):
                return lid
        return None

    def counts_by_rank(self) -> dict[int, int]:
        return {r: len(v) for r, v in sorted(self.by_rank.items())}


def build_poset(arr: Arrangement) -> LayerPoset:
    """All layers of all independent sets, deduplicated by point set.

    Flats are computed once per deduplicated layer, not per associated set.
    """
    cache = _RankCache(arr)
    seen: dict[tuple, tuple] = {}
    assoc_raw: dict[frozenset[int], list] = {}
    for ind in independent_sets(arr, cache):
        members = []
        for raw in _components_raw(arr, tuple(ind)):
            key = raw[1:4]
            if key not in seen:
                seen[key] = raw
            members.append(key)
        assoc_raw[frozenset(ind)] = members
    ordered = sorted(seen.values(), key=lambda r: (r[0], r[1], r[2], r[3]))
    layers = []
    index_of = {}
    for i, (rank, lattice, t1, t2, w1, w2) in enumerate(ordered):
        flat = _flat_of(arr, lattice, w1, w2)
        layers.append(Layer(rank=rank, lattice=lattice, t1=t1, t2=t2,
                            witness1=w1, witness2=w2, flat=flat, index=i))
        index_of[(lattice, t1, t2)] = i
    assoc = {iset: tuple(sorted(index_of[k] for k in keys))
             for iset, keys in assoc_raw.items()}
    return LayerPoset(arr, layers, assoc, cache)


def is_essential(arr: Arrangement) -> bool:
    return exactlin.rational_rank(arr.matrix()) == arr.n


def is_unimodular(arr: Arrangement) -> bool:
    """True when every divisor intersection is connected."""
    cache = _RankCache(arr)
    for ind in independent_sets(arr, cache):
        if not ind:
            continue
        snf = exactlin.smith_normal_form(arr.submatrix_t(ind))
        if any(d != 1 for d in snf.divisors):
            return False
    return True


def arrangement_rank(arr: Arrangement) -> int:
    return exactlin.rational_rank(arr.matrix())


def nbc_sets(arr: Arrangement, layer: Layer,
             _memo: Optional[dict] = None) -> list[tuple[int, ...]]:
    """Full-rank index sets associated to the layer with no broken circuit.

    The matroid is the one of the divisors containing the layer, with the
    global column order.  Enumeration walks the no-broken-circuit complex,
    which is closed under subsets, so pruning is safe.
    """
    ground = sorted(layer.flat)
    if _memo is not None:
        got = _memo.get((layer.flat, layer.rank))
        if got is not None:
            return got
    cache = _RankCache(arr)
    target = layer.rank
    out: list[tuple[int, ...]] = []

    def has_broken_circuit(iset: tuple[int, ...]) -> bool:
        mx = iset[-1]
        for e in ground:
            if e >= mx:
                break
            if e in iset:
                continue
            above = tuple(i for i in iset if i > e)
            if above and cache.in_closure(e, above):
                return True
        return False

    def extend(iset: tuple[int, ...]):
        if len(iset) == target:
            out.append(iset)
            return
        start = ground.index(iset[-1]) + 1 if iset else 0
        for pos in range(start, len(ground)):
            j = ground[pos]
            nxt = iset + (j,)
            if not cache.is_independent(nxt):
                continue
            if has_broken_circuit(nxt):
                continue
            extend(nxt)

    extend(())
    if _memo is not None:
        _memo[(layer.flat, layer.rank)] = out
    return out


def poset_isomorphic(p1: LayerPoset, p2: LayerPoset) -> Optional[dict[int, int]]:
    """A rank-preserving order isomorphism, or None.

    Candidates are narrowed by iterated refinement of an order-degree
    invariant before a backtracking search.
    """
    if p1.size != p2.size or p1.counts_by_rank() != p2.counts_by_rank():
        return None

    def refine(poset: LayerPoset) -> list:
        colors = [poset.rank(i) for i in range(poset.size)]
        while True:
            sigs = []
            for i in range(poset.size):
                below = sorted(colors[j] for j in range(poset.size)
                               if j != i and poset.leq(j, i))
                above = sorted(colors[j] for j in range(poset.size)
                               if j != i and poset.leq(i, j))
                sigs.append((colors[i], tuple(below), tuple(above)))
            palette = {s: c for c, s in enumerate(sorted(set(sigs)))}
            new = [palette[s] for s in sigs]
            if new == colors:
                return colors
            colors = new

    c1, c2 = refine(p1), refine(p2)
    if sorted(c1) != sorted(c2):
        return None
    order = sorted(range(p1.size), key=lambda i: (-_color_rarity(c1, c1[i]), i))
    targets: dict[int, list[int]] = {}
    for j in range(p2.size):
        targets.setdefault(c2[j], []).append(j)

    mapping: dict[int, int] = {}
    used: set[int] = set()

    def ok(i: int, j: int) -> bool:
        for a, b in mapping.items():
            if p1.leq(i, a) != p2.leq(j, b) or p1.leq(a, i) != p2.leq(b, j):
                return False
        return True

    def search(pos: int) -> bool:
        if pos == len(order):
            return True
        i = order[pos]
        for j in targets.get(c1[i], ()):
            if j in used or not ok(i, j):
                continue
            mapping[i] = j
            used.add(j)
            if search(pos + 1):
                return True
            del mapping[i]
            used.discard(j)
        return False

    if search(0):
        return dict(mapping)
    return None


def _color_rarity(colors, c) -> int:
    return -colors.count(c)
