"""Exact integer and rational linear algebra.

Everything here runs on arbitrary-precision ints and `fractions.Fraction`;
no floating point anywhere.  Matrices are plain lists of row lists, vectors
are sequences.  All functions are pure and return fresh objects, so results
can be shared freely between threads.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import NamedTuple, Optional, Sequence


class SnfDecomposition(NamedTuple):
    """Smith normal form ``u * m * v = d`` with unimodular ``u``, ``v``.

    ``divisors`` is the chain d1 | d2 | ... of positive elementary divisors.
    """

    u: list[list[int]]
    d: list[list[int]]
    v: list[list[int]]
    divisors: tuple[int, ...]


def shape(m: Sequence[Sequence]) -> tuple[int, int]:
    return (len(m), len(m[0]) if m else 0)


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    rows, inner = shape(a)
    inner2, cols = shape(b)
    if inner != inner2:
        raise ValueError("dimension mismatch %s vs %s" % (shape(a), shape(b)))
    out = []
    for i in range(rows):
        ai = a[i]
        row = []
        for j in range(cols):
            acc = 0
            for k in range(inner):
                if ai[k]:
                    acc += ai[k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def mat_vec(m, v):
    return [sum(mi[k] * v[k] for k in range(len(v))) for mi in m]


def transpose(m):
    rows, cols = shape(m)
    return [[m[i][j] for i in range(rows)] for j in range(cols)]


def smith_normal_form(m: Sequence[Sequence[int]]) -> SnfDecomposition:
    """Diagonalize an integer matrix by unimodular row/column operations.

    Pivots are chosen by minimal absolute value; at each step the pivot is
    made to divide every entry of the remaining block, which yields the
    divisibility chain directly.  Adequate for desk-scale matrices.
    """
    rows, cols = shape(m)
    a = [list(map(int, r)) for r in m]
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        arow, asrc = a[dst], a[src]
        for k in range(cols):
            arow[k] += c * asrc[k]
        urow, usrc = u[dst], u[src]
        for k in range(rows):
            urow[k] += c * usrc[k]

    def add_col(dst, src, c):
        for r in a:
            r[dst] += c * r[src]
        for r in v:
            r[dst] += c * r[src]

    t = 0
    limit = min(rows, cols)
    while t < limit:
        # locate a pivot of minimal absolute value in the remaining block
        piv = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                e = a[i][j]
                if e and (best is None or abs(e) < best):
                    best = abs(e)
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            # clear the pivot column
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(i, t, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        dirty = True
            if dirty:
                continue
            # clear the pivot row
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(j, t, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            # force the pivot to divide the rest of the block
            offender = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % a[t][t]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(t, offender, 1)
        if a[t][t] < 0:
            for k in range(cols):
                a[t][k] = -a[t][k]
            for k in range(rows):
                u[t][k] = -u[t][k]
        t += 1

    divisors = tuple(a[i][i] for i in range(min(rows, cols)) if a[i][i] != 0)
    return SnfDecomposition(u, a, v, divisors)


def elementary_divisors(m: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Elementary divisors only, skipping the transform bookkeeping."""
    rows, cols = shape(m)
    a = [list(map(int, r)) for r in m]
    t = 0
    limit = min(rows, cols)
    out = []
    while t < limit:
        piv = None
        best = None
        for i in range(t, rows):
            ai = a[i]
            for j in range(t, cols):
                e = ai[j]
                if e and (best is None or abs(e) < best):
                    best = abs(e)
                    piv = (i, j)
        if piv is None:
            break
        if piv[0] != t:
            a[t], a[piv[0]] = a[piv[0]], a[t]
        if piv[1] != t:
            for r in a:
                r[t], r[piv[1]] = r[piv[1]], r[t]
        while True:
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    if q:
                        a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        dirty = True
            if dirty:
                continue
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    for r in a:
                        r[j] -= q * r[t]
                    if a[t][j]:
                        for r in a:
                            r[t], r[j] = r[j], r[t]
                        dirty = True
            if dirty:
                continue
            offender = None
            for i in range(t + 1, rows):
                ai = a[i]
                for j in range(t + 1, cols):
                    if ai[j] % a[t][t]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[offender])]
        out.append(abs(a[t][t]))
        t += 1
    return tuple(out)


def det_int(m: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    n, c = shape(m)
    if n != c:
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
    a = [list(map(int, r)) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _scale_rows_to_int(m) -> list[list[int]]:
    out = []
    for row in m:
        fr = [Fraction(x) for x in row]
        den = 1
        for x in fr:
            den = den * x.denominator // gcd(den, x.denominator)
        out.append([int(x * den) for x in fr])
    return out


def rational_rank(m) -> int:
    """Exact rank over the rationals via fraction-free Bareiss elimination.

    Accepts int or Fraction entries; rows are rescaled to integers first,
    which does not change the rank.
    """
    rows, cols = shape(m)
    if rows == 0 or cols == 0:
        return 0
    a = _scale_rows_to_int(m)
    rank = 0
    prev = 1
    col = 0
    while rank < rows and col < cols:
        pivot_row = None
        for i in range(rank, rows):
            if a[i][col]:
                pivot_row = i
                break
        if pivot_row is None:
            col += 1
            continue
        a[rank], a[pivot_row] = a[pivot_row], a[rank]
        pv = a[rank][col]
        for i in range(rank + 1, rows):
            ai = a[i]
            f = ai[col]
            for j in range(col, cols):
                ai[j] = (ai[j] * pv - f * a[rank][j]) // prev
        prev = pv
        rank += 1
        col += 1
    return rank


def rref(m) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals.

    Returns (rref matrix, pivot column indices).  Deterministic: pivots are
    the first nonzero entries scanning columns left to right.
    """
    rows, cols = shape(m)
    a = [[Fraction(x) for x in row] for row in m]
    pivots = []
    r = 0
    for c in range(cols):
        pr = None
        for i in range(r, rows):
            if a[i][c]:
                pr = i
                break
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def kernel_basis(m) -> list[tuple[Fraction, ...]]:
    """Deterministic basis of the right null space over the rationals.

    One vector per free column of the reduced echelon form, with the free
    variable set to 1, free columns taken in increasing index order.
    """
    rows, cols = shape(m)
    if cols == 0:
        return []
    red, pivots = rref(m)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * cols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -red[r][fc]
        basis.append(tuple(vec))
    return basis


def solve_linear(m, rhs_cols) -> Optional[list[list[Fraction]]]:
    """Particular solution X with M X = B (columns of B solved jointly).

    Free variables are set to zero.  Returns None if any column is
    inconsistent.  ``rhs_cols`` is a matrix whose columns are the right-hand
    sides.
    """
    rows, cols = shape(m)
    nrhs = shape(rhs_cols)[1] if rhs_cols else 0
    aug = [[Fraction(m[i][j]) for j in range(cols)]
           + [Fraction(rhs_cols[i][k]) for k in range(nrhs)]
           for i in range(rows)]
    red, pivots = rref(aug)
    for c in pivots:
        if c >= cols:
            return None
    sol = [[Fraction(0)] * nrhs for _ in range(cols)]
    for r, pc in enumerate(pivots):
        for k in range(nrhs):
            sol[pc][k] = red[r][cols + k]
    return sol


def inv_unimodular(u: Sequence[Sequence[int]]) -> list[list[int]]:
    """Exact inverse of a unimodular integer matrix (entries stay integral)."""
    n, c = shape(u)
    if n != c:
        raise ValueError("inverse needs a square matrix")
    sol = solve_linear(u, identity(n))
    if sol is None:
        raise ValueError("matrix is singular")
    out = []
    for row in sol:
        irow = []
        for x in row:
            if x.denominator != 1:
                raise ValueError("matrix is not unimodular")
            irow.append(int(x))
        out.append(irow)
    return out


def hermite_row_basis(m: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Canonical Hermite basis of the row lattice of an integer matrix.

    Row-style HNF: echelon shape, positive pivots, entries above each pivot
    reduced into [0, pivot).  Zero rows are dropped, so the result is a
    canonical key for the lattice itself.
    """
    rows, cols = shape(m)
    a = [list(map(int, r)) for r in m]
    r = 0
    for c in range(cols):
        # gcd-reduce column c over rows r..
        while True:
            pivot_row = None
            best = None
            for i in range(r, rows):
                if a[i][c] and (best is None or abs(a[i][c]) < best):
                    best = abs(a[i][c])
                    pivot_row = i
            if pivot_row is None:
                break
            a[r], a[pivot_row] = a[pivot_row], a[r]
            done = True
            for i in range(r + 1, rows):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if a[i][c]:
                        done = False
            if done:
                break
        if pivot_row is None:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return tuple(tuple(row) for row in a[:r] if any(row))


def saturation_row_basis(m: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Canonical basis of the saturation of the row lattice of ``m``.

    The saturation is rowspace_Q(m) intersected with Z^cols; its basis is
    read off the inverse of the column transform of the Smith form and then
    canonicalized by Hermite reduction.
    """
    rows, cols = shape(m)
    if rows == 0 or cols == 0:
        return ()
    snf = smith_normal_form(m)
    r = len(snf.divisors)
    if r == 0:
        return ()
    vinv = inv_unimodular(snf.v)
    return hermite_row_basis([vinv[i] for i in range(r)])


def frac_mod1(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


def in_row_span(echelon_rows, vec) -> bool:
    """Is ``vec`` in the rational span of rows with increasing pivots?"""
    v = [Fraction(x) for x in vec]
    for row in echelon_rows:
        lead = next(k for k, x in enumerate(row) if x)
        if v[lead]:
            f = v[lead] / row[lead]
            for k in range(lead, len(v)):
                if row[k]:
                    v[k] -= f * row[k]
    return not any(v)


def solve_torsion(m: Sequence[Sequence[int]], q: Sequence[Fraction]
                  ) -> list[tuple[Fraction, ...]]:
    """All components of {v in (R/Z)^cols : m v = q mod 1}, one point each.

    Returns one representative per connected component of the solution set
    on a single circle factor (prod of elementary divisors many), or the
    empty list when the system has no solution.  Output is sorted, so it is
    reproducible.
    """
    rows, cols = shape(m)
    if cols == 0:
        if all(frac_mod1(Fraction(x)) == 0 for x in q):
            return [()]
        return []
    return torsion_from_snf(smith_normal_form(m), rows, cols, q)


def torsion_from_snf(snf: SnfDecomposition, rows: int, cols: int,
                     q: Sequence[Fraction]) -> list[tuple[Fraction, ...]]:
    """Component representatives of m v = q mod 1 from a precomputed SNF of m."""
    q = [Fraction(x) for x in q]
    if len(q) != rows:
        raise ValueError("right-hand side length mismatch")
    r = len(snf.divisors)
    rhs = [sum(Fraction(snf.u[i][k]) * q[k] for k in range(rows))
           for i in range(rows)]
    for i in range(r, rows):
        if frac_mod1(rhs[i]) != 0:
            return []
    reps = []
    counters = [0] * r
    while True:
        w = [Fraction(0)] * cols
        for i in range(r):
            w[i] = frac_mod1((rhs[i] + counters[i]) / snf.divisors[i])
        x = [frac_mod1(sum(Fraction(snf.v[i][k]) * w[k] for k in range(cols)))
             for i in range(cols)]
        reps.append(tuple(x))
        # odometer over Z/d1 x ... x Z/dr
        for i in range(r - 1, -1, -1):
            counters[i] += 1
            if counters[i] < snf.divisors[i]:
                break
            counters[i] = 0
        else:
            break
    return sorted(set(reps))


def sparse_rank(columns: list[dict[int, Fraction]]) -> int:
    """Exact rank of a sparse matrix given as a list of {row: value} columns.

    Gaussian elimination over Q with a Markowitz-style pivot rule plus a
    singleton-peeling fast path; exact regardless of pivot order.
    """
    cols = [dict(c) for c in columns if c]
    rank = 0
    # row -> set of column positions currently hitting it
    row_use: dict[int, set[int]] = {}
    for ci, col in enumerate(cols):
        for r in col:
            row_use.setdefault(r, set()).add(ci)
    alive = set(range(len(cols)))

    def remove_col(ci):
        for r in cols[ci]:
            s = row_use.get(r)
            if s is not None:
                s.discard(ci)
                if not s:
                    del row_use[r]
        alive.discard(ci)

    def eliminate(ci, prow):
        nonlocal rank
        pval = cols[ci][prow]
        users = list(row_use.get(prow, ()))
        for cj in users:
            if cj == ci:
                continue
            f = cols[cj][prow] / pval
            target = cols[cj]
            for r, v in cols[ci].items():
                nv = target.get(r, Fraction(0)) - f * v
                if nv:
                    if r not in target:
                        row_use.setdefault(r, set()).add(cj)
                    target[r] = nv
                else:
                    if r in target:
                        del target[r]
                        s = row_use.get(r)
                        if s is not None:
                            s.discard(cj)
                            if not s:
                                del row_use[r]
            if not target:
                alive.discard(cj)
        remove_col(ci)
        rank += 1

    while alive:
        for ci in [c for c in alive if not cols[c]]:
            alive.discard(ci)
        if not alive:
            break
        # Markowitz: minimize fill estimate (nnz_col-1)*(nnz_row-1)
        best = None
        best_score = None
        for ci in alive:
            col = cols[ci]
            r, score = None, None
            for rr in col:
                sc = len(row_use[rr])
                if score is None or sc < score:
                    r, score = rr, sc
            total = (len(col) - 1) * (score - 1)
            if best_score is None or total < best_score:
                best = (ci, r)
                best_score = total
                if total == 0:
                    break
        eliminate(*best)
    return rank
