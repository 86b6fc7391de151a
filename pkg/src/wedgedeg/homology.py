"""Integer homology of finite groups from the bar resolution.

Used as an oracle for the Schur multiplier: H_2(G; Z) is computed from the
inhomogeneous (non-normalized) bar complex with the boundaries

    d2[g|h]   = [h] - [gh] + [g]
    d3[g|h|k] = [h|k] - [gh|k] + [g|hk] - [g|h]

and the Smith normal form of d3.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import GroupTooLarge
from .groups import FiniteGroup

DEFAULT_MAX_ORDER = 24


@dataclass
class IntegerMatrix:
    """Sparse integer matrix: ``rows_data[i]`` maps column -> nonzero entry."""

    rows: int
    cols: int
    rows_data: list = field(default_factory=list)

    def __post_init__(self):
        if not self.rows_data:
            self.rows_data = [dict() for _ in range(self.rows)]
        if len(self.rows_data) != self.rows:
            raise ValueError("row storage does not match the row count")

    @classmethod
    def from_dense(cls, entries):
        entries = [list(r) for r in entries]
        ncols = len(entries[0]) if entries else 0
        data = []
        for r in entries:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
            data.append({j: int(v) for j, v in enumerate(r) if v})
        return cls(len(entries), ncols, data)

    def add(self, i, j, v):
        row = self.rows_data[i]
        w = row.get(j, 0) + v
        if w:
            row[j] = w
        else:
            row.pop(j, None)

    def to_dense(self):
        out = [[0] * self.cols for _ in range(self.rows)]
        for i, row in enumerate(self.rows_data):
            for j, v in row.items():
                out[i][j] = v
        return out

    def transpose(self):
        t = IntegerMatrix(self.cols, self.rows)
        for i, row in enumerate(self.rows_data):
            for j, v in row.items():
                t.rows_data[j][i] = v
        return t


@dataclass(frozen=True)
class SmithForm:
    invariant_factors: tuple
    rank: int

    def nontrivial(self):
        return [d for d in self.invariant_factors if d > 1]


def smith_normal_form(M) -> SmithForm:
    """Nonzero invariant factors d1 | d2 | ... of an integer matrix.

    Unit pivots are eliminated on the sparse form first (each contributes a
    factor 1); the remaining block is reduced densely, always pivoting on an
    entry of least absolute value.
    """
    if not isinstance(M, IntegerMatrix):
        M = IntegerMatrix.from_dense(M)
    units, rest = _eliminate_units(M)
    factors = [1] * units + _dense_snf(rest)
    return SmithForm(tuple(factors), len(factors))


def _eliminate_units(M: IntegerMatrix):
    rows = {i: dict(r) for i, r in enumerate(M.rows_data) if r}
    colidx = {}
    for i, r in rows.items():
        for j in r:
            colidx.setdefault(j, set()).add(i)
    units = 0
    progress = True
    while progress:
        progress = False
        # shortest rows first; within a row, the unit entry in the sparsest column
        for i in sorted(rows, key=lambda k: len(rows[k])):
            r = rows.get(i)
            if r is None:
                continue
            best = None
            for j, v in r.items():
                if v == 1 or v == -1:
                    c = len(colidx[j])
                    if best is None or c < best[0]:
                        best = (c, j)
            if best is None:
                continue
            _eliminate(rows, colidx, i, best[1])
            units += 1
            progress = True
    live_cols = sorted({j for r in rows.values() for j in r})
    pos = {j: k for k, j in enumerate(live_cols)}
    dense = []
    for r in rows.values():
        line = [0] * len(live_cols)
        for j, v in r.items():
            line[pos[j]] = v
        dense.append(line)
    return units, dense


def _eliminate(rows, colidx, pi, pj):
    """Clear column pj with the unit pivot at (pi, pj), then drop row pi and column pj."""
    prow = rows.pop(pi)
    pv = prow[pj]
    for j in prow:
        colidx[j].discard(pi)
    for i in list(colidx[pj]):
        r = rows[i]
        q = r[pj] * pv  # pv is +-1, so this is r[pj] / pv
        for j, v in prow.items():
            w = r.get(j, 0) - q * v
            if w:
                if j not in r:
                    colidx[j].add(i)
                r[j] = w
            elif j in r:
                del r[j]
                colidx[j].discard(i)
        if not r:
            del rows[i]
    del colidx[pj]


def _dense_snf(A):
    A = [list(r) for r in A if any(r)]
    if not A:
        return []
    m, n = len(A), len(A[0])
    diag = []
    t = 0
    while t < min(m, n):
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                v = A[i][j]
                if v and (piv is None or abs(v) < piv[0]):
                    piv = (abs(v), i, j)
        if piv is None:
            break
        _, i, j = piv
        A[t], A[i] = A[i], A[t]
        for r in A:
            r[t], r[j] = r[j], r[t]
        while True:
            p = A[t][t]
            moved = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    if q:
                        ri, rt = A[i], A[t]
                        for k in range(t, n):
                            ri[k] -= q * rt[k]
                    if A[i][t]:
                        moved = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    if q:
                        for r in A[t:]:
                            r[j] -= q * r[t]
                    if A[t][j]:
                        moved = True
            if moved:
                # a smaller remainder exists in row/column t: pivot on it
                best = None
                for i in range(t, m):
                    v = A[i][t]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, None)
                for j in range(t, n):
                    v = A[t][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), None, j)
                _, i, j = best
                if i is not None:
                    A[t], A[i] = A[i], A[t]
                else:
                    for r in A:
                        r[t], r[j] = r[j], r[t]
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            rb, rt = A[bad], A[t]
            for k in range(t, n):
                rt[k] += rb[k]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


def _check_size(G, max_order):
    if G.order > max_order:
        raise GroupTooLarge(f"bar complex for |G| = {G.order} exceeds cap {max_order}")


def boundary2(G: FiniteGroup) -> IntegerMatrix:
    """d2 : Z[G^2] -> Z[G], as a |G| x |G|^2 matrix."""
    n = G.order
    M = IntegerMatrix(n, n * n)
    t = G.table
    for g in range(n):
        for h in range(n):
            c = g * n + h
            M.add(h, c, 1)
            M.add(int(t[g, h]), c, -1)
            M.add(g, c, 1)
    return M


def boundary3_transposed(G: FiniteGroup) -> IntegerMatrix:
    """Transpose of d3 : Z[G^3] -> Z[G^2]; one row per 3-cell [g|h|k]."""
    n = G.order
    t = G.table
    rows = []
    for g in range(n):
        for h in range(n):
            gh = int(t[g, h])
            for k in range(n):
                r = {}
                for idx, v in ((h * n + k, 1), (gh * n + k, -1),
                               (g * n + int(t[h, k]), 1), (g * n + h, -1)):
                    w = r.get(idx, 0) + v
                    if w:
                        r[idx] = w
                    else:
                        r.pop(idx, None)
                rows.append(r)
    return IntegerMatrix(len(rows), n * n, rows)


def _homology_invariants(snf_in: SmithForm, kernel_dim):
    free = kernel_dim - snf_in.rank
    return sorted(snf_in.nontrivial()) + [0] * free


def bar_h1(G: FiniteGroup, max_order=DEFAULT_MAX_ORDER):
    """Invariants of H_1(G; Z) = Z[G] / im d2 (d1 is zero with trivial coefficients)."""
    _check_size(G, max_order)
    return _homology_invariants(smith_normal_form(boundary2(G)), G.order)


def bar_h2(G: FiniteGroup, max_order=DEFAULT_MAX_ORDER):
    """Invariants of H_2(G; Z) = ker d2 / im d3; zeros would mark free summands."""
    _check_size(G, max_order)
    n = G.order
    rank2 = smith_normal_form(boundary2(G)).rank
    snf3 = smith_normal_form(boundary3_transposed(G))
    return _homology_invariants(snf3, n * n - rank2)


def invariant_product(invariants):
    out = 1
    for d in invariants:
        out *= d
    return out


def normalize_invariants(factors):
    """Turn any list of cyclic orders into invariant-factor form (1s dropped)."""
    primes = {}
    for d in factors:
        d = int(d)
        p = 2
        while d > 1:
            if d % p == 0:
                e = 0
                while d % p == 0:
                    d //= p
                    e += 1
                primes.setdefault(p, []).append(e)
            p += 1
    width = max((len(v) for v in primes.values()), default=0)
    out = []
    for p, exps in primes.items():
        exps.sort(reverse=True)
    for i in range(width):
        d = 1
        for p, exps in primes.items():
            if i < len(exps):
                d *= p ** exps[i]
        out.append(d)
    return sorted(out)

