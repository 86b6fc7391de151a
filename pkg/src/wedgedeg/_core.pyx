# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: HLT coset enumeration and brute-force tuple counting.

Same contracts as ``_fallback``; see that module for the column convention.
"""

from libc.stdlib cimport malloc, realloc, free
from libc.string cimport memset

import numpy as np
cimport numpy as cnp

from .errors import LimitExceeded

cnp.import_array()

DEF FULL = 1


cdef class _HLT:
    cdef int ncols
    cdef long n, cap, limit, nlive
    cdef int *table
    cdef long *p
    cdef long *queue
    cdef long qlen
    cdef int *rels
    cdef long *offs
    cdef long nrels

    def __cinit__(self, int ncols, relators, long limit):
        cdef long total = 0, k = 0, r
        self.ncols = ncols
        self.limit = limit
        rels = [list(w) for w in relators if len(w)]
        self.nrels = len(rels)
        for w in rels:
            total += len(w)
        self.rels = <int *> malloc(max(total, 1) * sizeof(int))
        self.offs = <long *> malloc((self.nrels + 1) * sizeof(long))
        self.offs[0] = 0
        for r in range(self.nrels):
            for x in rels[r]:
                self.rels[k] = x
                k += 1
            self.offs[r + 1] = k
        self.cap = 0
        self.table = NULL
        self.p = NULL
        self.queue = NULL
        self._grow(min(1024, limit))
        self.n = 1
        self.nlive = 1
        memset(self.table, 0xff, ncols * sizeof(int))
        self.p[0] = 0

    def __dealloc__(self):
        free(self.table)
        free(self.p)
        free(self.queue)
        free(self.rels)
        free(self.offs)

    cdef int _grow(self, long newcap) except -1:
        cdef int *t = <int *> realloc(self.table, newcap * self.ncols * sizeof(int))
        if t == NULL:
            raise MemoryError()
        self.table = t
        cdef long *pp = <long *> realloc(self.p, newcap * sizeof(long))
        if pp == NULL:
            raise MemoryError()
        self.p = pp
        cdef long *q = <long *> realloc(self.queue, newcap * sizeof(long))
        if q == NULL:
            raise MemoryError()
        self.queue = q
        self.cap = newcap
        return 0

    cdef inline long rep(self, long c) nogil:
        cdef long r = c, nxt
        while self.p[r] != r:
            r = self.p[r]
        while self.p[c] != r:
            nxt = self.p[c]
            self.p[c] = r
            c = nxt
        return r

    cdef int define(self, long c, int x) except -1:
        cdef long d
        if self.n >= self.limit:
            return FULL
        if self.n >= self.cap:
            self._grow(min(self.cap * 2, self.limit))
        d = self.n
        self.n += 1
        memset(&self.table[d * self.ncols], 0xff, self.ncols * sizeof(int))
        self.table[d * self.ncols + (x ^ 1)] = <int> c
        self.table[c * self.ncols + x] = <int> d
        self.p[d] = d
        self.nlive += 1
        return 0

    cdef inline void merge(self, long k, long l) nogil:
        cdef long a = self.rep(k), b = self.rep(l), t
        if a != b:
            if a > b:
                t = a
                a = b
                b = t
            self.p[b] = a
            self.nlive -= 1
            self.queue[self.qlen] = b
            self.qlen += 1

    cdef void coincidence(self, long a, long b) nogil:
        cdef long i = 0, g, d, mu, nu
        cdef int x
        cdef int nc = self.ncols
        cdef int *T = self.table
        self.qlen = 0
        self.merge(a, b)
        while i < self.qlen:
            g = self.queue[i]
            i += 1
            for x in range(nc):
                d = T[g * nc + x]
                if d < 0:
                    continue
                T[d * nc + (x ^ 1)] = -1
                mu = self.rep(g)
                nu = self.rep(d)
                if T[mu * nc + x] >= 0:
                    self.merge(nu, T[mu * nc + x])
                elif T[nu * nc + (x ^ 1)] >= 0:
                    self.merge(mu, T[nu * nc + (x ^ 1)])
                else:
                    T[mu * nc + x] = <int> nu
                    T[nu * nc + (x ^ 1)] = <int> mu

    cdef int scan(self, long a, long r, bint fill) except -1:
        cdef long lo = self.offs[r]
        cdef long i = lo, j = self.offs[r + 1] - 1
        cdef long f = a, b = a
        cdef int nc = self.ncols
        cdef int *w = self.rels
        cdef int rc
        while True:
            while i <= j and self.table[f * nc + w[i]] >= 0:
                f = self.table[f * nc + w[i]]
                i += 1
            if i > j:
                if f != a:
                    self.coincidence(f, a)
                return 0
            while j >= i and self.table[b * nc + (w[j] ^ 1)] >= 0:
                b = self.table[b * nc + (w[j] ^ 1)]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return 0
            if j == i:
                self.table[f * nc + w[i]] = <int> b
                self.table[b * nc + (w[i] ^ 1)] = <int> f
                return 0
            if not fill:
                return 0
            rc = self.define(f, w[i])
            if rc:
                return rc

    cdef bint lookahead(self) except -1:
        cdef long before = self.nlive, c, r
        for c in range(self.n):
            if self.p[c] != c:
                continue
            for r in range(self.nrels):
                self.scan(c, r, False)
                if self.p[c] != c:
                    break
        return self.nlive < before

    cdef long compact(self, long a) except -1:
        """Renumber live cosets in order; returns the new index of coset a."""
        cdef long c, k = 0, e, na
        cdef int x
        cdef int nc = self.ncols
        cdef long *new = <long *> malloc(self.n * sizeof(long))
        for c in range(self.n):
            if self.p[c] == c:
                new[c] = k
                k += 1
        na = new[self.rep(a)] if a < self.n else k
        for c in range(self.n):
            if self.p[c] != c:
                continue
            for x in range(nc):
                e = self.table[c * nc + x]
                if e >= 0:
                    self.table[new[c] * nc + x] = <int> new[self.rep(e)]
                else:
                    self.table[new[c] * nc + x] = -1
        # p must be rebuilt after all reps are resolved above
        for c in range(k):
            self.p[c] = c
        self.n = k
        self.nlive = k
        free(new)
        return na

    def run(self, subgroup, bint use_lookahead):
        cdef long a = 0, r
        cdef int x, rc
        cdef int nc = self.ncols
        pending = [list(w) for w in subgroup if len(w)]
        while True:
            rc = 0
            if pending:
                # subgroup words are scanned from coset 0 via a scratch relator table
                rc = self._scan_words(pending)
                if rc == 0:
                    pending = []
            if rc == 0:
                while a < self.n:
                    if self.p[a] == a:
                        for r in range(self.nrels):
                            rc = self.scan(a, r, True)
                            if rc or self.p[a] != a:
                                break
                        if rc:
                            break
                        if self.p[a] == a:
                            for x in range(nc):
                                if self.table[a * nc + x] < 0:
                                    rc = self.define(a, x)
                                    if rc:
                                        break
                            if rc:
                                break
                    a += 1
            if rc == 0:
                break
            if not use_lookahead or not self.lookahead():
                raise LimitExceeded(self.limit)
            a = self.compact(a)
        self.compact(0)
        out = np.empty((self.n, nc), dtype=np.int32)
        cdef int[:, ::1] view = out
        cdef long c
        for c in range(self.n):
            for x in range(nc):
                view[c, x] = self.table[c * nc + x]
        return out

    cdef int _scan_words(self, words) except -1:
        cdef long saved_rels_n = self.nrels
        cdef int *saved_rels = self.rels
        cdef long *saved_offs = self.offs
        cdef long total = 0, k = 0, r
        cdef int rc = 0
        for w in words:
            total += len(w)
        self.rels = <int *> malloc(total * sizeof(int))
        self.offs = <long *> malloc((len(words) + 1) * sizeof(long))
        self.offs[0] = 0
        for r in range(len(words)):
            for x in words[r]:
                self.rels[k] = x
                k += 1
            self.offs[r + 1] = k
        self.nrels = len(words)
        for r in range(self.nrels):
            rc = self.scan(0, r, True)
            if rc:
                break
        free(self.rels)
        free(self.offs)
        self.rels = saved_rels
        self.offs = saved_offs
        self.nrels = saved_rels_n
        return rc


def enumerate_cosets(int ncols, relators, subgroup, long limit, bint lookahead=True):
    """HLT coset enumeration; returns the compacted table as an int32 array."""
    return _HLT(ncols, relators, limit).run(subgroup, lookahead)


def count_pairwise_tuples(cnp.uint8_t[:, ::1] rel, int k):
    """Count k-tuples (t_1..t_k) with rel[t_i][t_j] nonzero for all i, j."""
    cdef int n = rel.shape[0]
    cdef unsigned long long total = 0
    cdef int i, j, pos
    cdef bint ok
    if k <= 0 or n == 0:
        return 1 if k <= 0 else 0
    cdef int *t = <int *> malloc(k * sizeof(int))
    for i in range(k):
        t[i] = 0
    with nogil:
        while True:
            ok = True
            for i in range(k):
                for j in range(k):
                    if not rel[t[i], t[j]]:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                total += 1
            pos = k - 1
            while pos >= 0:
                t[pos] += 1
                if t[pos] < n:
                    break
                t[pos] = 0
                pos -= 1
            if pos < 0:
                break
    free(t)
    return int(total)
