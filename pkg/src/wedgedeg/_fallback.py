"""Pure-Python kernels.

Mirrors ``_core.pyx`` function for function. Words are sequences of table
columns: generator ``i`` (0-based) uses column ``2*i`` and its inverse
column ``2*i + 1``, so ``col ^ 1`` is always the inverse column.
"""

from itertools import product

import numpy as np

from .errors import LimitExceeded


class _Full(Exception):
    pass


class _HLT:
    def __init__(self, ncols, relators, limit):
        self.ncols = ncols
        self.relators = [list(w) for w in relators if w]
        self.limit = limit
        self.table = [[-1] * ncols]
        self.p = [0]
        self.nlive = 1

    def rep(self, c):
        p = self.p
        r = c
        while p[r] != r:
            r = p[r]
        while p[c] != r:
            p[c], c = r, p[c]
        return r

    def define(self, c, x):
        if len(self.table) >= self.limit:
            raise _Full
        d = len(self.table)
        row = [-1] * self.ncols
        row[x ^ 1] = c
        self.table.append(row)
        self.p.append(d)
        self.table[c][x] = d
        self.nlive += 1
        return d

    def merge(self, k, l, queue):
        a = self.rep(k)
        b = self.rep(l)
        if a != b:
            if a > b:
                a, b = b, a
            self.p[b] = a
            self.nlive -= 1
            queue.append(b)

    def coincidence(self, a, b):
        table = self.table
        queue = []
        self.merge(a, b, queue)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            row = table[g]
            for x in range(self.ncols):
                d = row[x]
                if d < 0:
                    continue
                table[d][x ^ 1] = -1
                mu = self.rep(g)
                nu = self.rep(d)
                if table[mu][x] >= 0:
                    self.merge(nu, table[mu][x], queue)
                elif table[nu][x ^ 1] >= 0:
                    self.merge(mu, table[nu][x ^ 1], queue)
                else:
                    table[mu][x] = nu
                    table[nu][x ^ 1] = mu

    def scan(self, a, w, fill):
        table = self.table
        f = a
        b = a
        i = 0
        j = len(w) - 1
        while True:
            while i <= j and table[f][w[i]] >= 0:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != a:
                    self.coincidence(f, a)
                return
            while j >= i and table[b][w[j] ^ 1] >= 0:
                b = table[b][w[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if j == i:
                table[f][w[i]] = b
                table[b][w[i] ^ 1] = f
                return
            if not fill:
                return
            self.define(f, w[i])

    def lookahead(self):
        before = self.nlive
        for c in range(len(self.table)):
            if self.p[c] != c:
                continue
            for w in self.relators:
                self.scan(c, w, False)
                if self.p[c] != c:
                    break
        return self.nlive < before

    def compact(self):
        """Renumber live cosets in definition order; returns the old->new map."""
        live = [c for c in range(len(self.table)) if self.p[c] == c]
        new = {c: k for k, c in enumerate(live)}
        rows = []
        for c in live:
            rows.append([new[self.rep(e)] if e >= 0 else -1 for e in self.table[c]])
        mapping = [new[self.rep(c)] for c in range(len(self.table))]
        self.table = rows
        self.p = list(range(len(rows)))
        self.nlive = len(rows)
        return mapping

    def run(self, subgroup, lookahead):
        pending = [list(w) for w in subgroup if w]
        a = 0
        while True:
            try:
                while pending:
                    self.scan(0, pending[0], True)
                    pending.pop(0)
                while a < len(self.table):
                    if self.p[a] == a:
                        for w in self.relators:
                            self.scan(a, w, True)
                            if self.p[a] != a:
                                break
                        if self.p[a] == a:
                            row = self.table[a]
                            for x in range(self.ncols):
                                if row[x] < 0:
                                    self.define(a, x)
                    a += 1
                break
            except _Full:
                if not lookahead or not self.lookahead():
                    raise LimitExceeded(self.limit) from None
                mapping = self.compact()
                a = mapping[a] if a < len(mapping) else len(self.table)
        self.compact()
        return self.table


def enumerate_cosets(ncols, relators, subgroup, limit, lookahead=True):
    """HLT coset enumeration; returns the compacted table as an int32 array."""
    tab = _HLT(ncols, relators, limit).run(subgroup, lookahead)
    return np.asarray(tab, dtype=np.int32).reshape(len(tab), ncols)


def enumerate_cosets_felsch(ncols, relators, subgroup, limit):
    """Felsch-style enumeration: fill the first gap, then chase deductions.

    After any coincidence every live coset is rescanned; this is slow but only
    used to cross-check coset counts on small presentations.
    """
    e = _HLT(ncols, relators, limit)
    conj = [[] for _ in range(ncols)]
    for w in e.relators:
        for i in range(len(w)):
            cw = w[i:] + w[:i]
            conj[cw[0]].append(cw)

    def deduce(stack):
        while stack:
            c, x = stack.pop()
            c = e.rep(c)
            d = e.table[c][x]
            if d < 0:
                continue
            before = e.nlive
            for w in conj[x]:
                e.scan(c, w, False)
            d = e.table[e.rep(c)][x]
            if d >= 0:
                for w in conj[x ^ 1]:
                    e.scan(e.rep(d), w, False)
            if e.nlive < before:
                while e.lookahead():
                    pass
                stack.clear()

    try:
        for w in subgroup:
            if w:
                e.scan(0, list(w), True)
        while e.lookahead():
            pass
        while True:
            stack = []
            gap = None
            for c in range(len(e.table)):
                if e.p[c] != c:
                    continue
                row = e.table[c]
                for x in range(ncols):
                    if row[x] < 0:
                        gap = (c, x)
                        break
                if gap:
                    break
            if gap is None:
                break
            c, x = gap
            e.define(c, x)
            stack.append((c, x))
            deduce(stack)
        # every deduction was chased; a final pass catches anything missed
        while e.lookahead():
            pass
    except _Full:
        raise LimitExceeded(limit) from None
    e.compact()
    return np.asarray(e.table, dtype=np.int32).reshape(len(e.table), ncols)


def count_pairwise_tuples(rel, k):
    """Count k-tuples (t_1..t_k) with rel[t_i][t_j] true for all i, j."""
    n = rel.shape[0]
    rows = [list(map(bool, r)) for r in rel.tolist()]
    total = 0
    for t in product(range(n), repeat=k):
        ok = True
        for i in range(k):
            ri = rows[t[i]]
            for j in range(k):
                if not ri[t[j]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            total += 1
    return total
