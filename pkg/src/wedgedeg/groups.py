"""Finite groups as Cayley tables over dense element indices.

Element 0 is always the identity. Subsets of a group are bitsets held in a
Python ``int`` (bit ``i`` set means element ``i`` is a member).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .errors import (
    NotAGroup,
    NotASubgroup,
    NotNormal,
    SizeLimitExceeded,
    TrivialGroupHasNoPrime,
)

DEFAULT_CLOSURE_CAP = 10**6
# full O(n^3) associativity check below this order, Light's test above
_FULL_ASSOC_MAX = 64


def _bits(indices) -> int:
    b = 0
    for i in indices:
        b |= 1 << int(i)
    return b


def _iter_bits(b: int):
    while b:
        low = b & -b
        yield low.bit_length() - 1
        b ^= low


class FiniteGroup:
    """A finite group given by its multiplication table.

    ``table[i, j]`` is the index of ``g_i * g_j``. Instances are treated as
    immutable; derived data (classes, centre, ...) is cached on first use.
    """

    def __init__(self, table, label=None, *, check=True):
        table = np.ascontiguousarray(table, dtype=np.int32)
        if check:
            _validate(table)
        self.table = table
        self.table.setflags(write=False)
        self.order = int(table.shape[0])
        self.identity = 0
        inv = np.empty(self.order, dtype=np.int32)
        rows, cols = np.nonzero(table == 0)
        inv[rows] = cols
        self.inverse = inv
        self.inverse.setflags(write=False)
        self.label = label
        self._cache = {}

    def __repr__(self):
        name = self.label or "FiniteGroup"
        return f"<{name} of order {self.order}>"

    def __len__(self):
        return self.order

    def mul(self, a, b):
        return int(self.table[a, b])

    def inv(self, a):
        return int(self.inverse[a])

    def conj(self, g, x):
        """Return g x g^-1."""
        return int(self.table[self.table[g, x], self.inverse[g]])

    def commutator(self, g, h):
        """Return [g, h] = g h g^-1 h^-1."""
        t = self.table
        return int(t[t[t[g, h], self.inverse[g]], self.inverse[h]])

    def power(self, x, k):
        r = 0
        for _ in range(k):
            r = int(self.table[r, x])
        return r

    def element_order(self, x):
        k, y = 1, x
        while y != 0:
            y = int(self.table[y, x])
            k += 1
        return k

    def element_orders(self):
        if "orders" not in self._cache:
            self._cache["orders"] = [self.element_order(x) for x in range(self.order)]
        return self._cache["orders"]

    @property
    def is_abelian(self):
        if "abelian" not in self._cache:
            self._cache["abelian"] = bool((self.table == self.table.T).all())
        return self._cache["abelian"]

    @property
    def is_cyclic(self):
        return self.order in self.element_orders()

    def full_set(self):
        return ElementSet(self, (1 << self.order) - 1, True)

    def trivial_set(self):
        return ElementSet(self, 1, True)

    def subset(self, indices, subgroup=False):
        return ElementSet(self, _bits(indices), subgroup)


@dataclass(frozen=True, eq=False)
class ElementSet:
    """A subset of a finite group stored as a bitset."""

    parent: FiniteGroup = field(repr=False)
    bits: int
    is_subgroup: bool = False

    def __len__(self):
        return self.bits.bit_count()

    def __iter__(self):
        return _iter_bits(self.bits)

    def __contains__(self, x):
        return bool(self.bits >> int(x) & 1)

    def __eq__(self, other):
        if not isinstance(other, ElementSet):
            return NotImplemented
        return self.parent is other.parent and self.bits == other.bits

    def __hash__(self):
        return hash((id(self.parent), self.bits))

    def __and__(self, other):
        sub = self.is_subgroup and other.is_subgroup
        return ElementSet(self.parent, self.bits & other.bits, sub)

    def __le__(self, other):
        return self.bits & ~other.bits == 0

    def __lt__(self, other):
        return self <= other and self.bits != other.bits

    def elements(self):
        return list(_iter_bits(self.bits))

    @property
    def order(self):
        return len(self)

    def is_trivial(self):
        return self.bits == 1

    def conjugate(self, g):
        """Return g S g^-1."""
        G = self.parent
        idx = np.fromiter(_iter_bits(self.bits), dtype=np.int64)
        img = G.table[G.table[g, idx], G.inverse[g]]
        return ElementSet(G, _bits(img.tolist()), self.is_subgroup)


def _validate(table):
    if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
        raise NotAGroup("table must be a non-empty square array")
    n = table.shape[0]
    if table.min() < 0 or table.max() >= n:
        raise NotAGroup("table entries out of range")
    ref = np.arange(n)
    srt = np.sort(table, axis=1)
    bad = np.nonzero((srt != ref).any(axis=1))[0]
    if bad.size:
        raise NotAGroup(f"row {int(bad[0])} is not a permutation")
    srt = np.sort(table, axis=0)
    bad = np.nonzero((srt != ref[:, None]).any(axis=0))[0]
    if bad.size:
        raise NotAGroup(f"column {int(bad[0])} is not a permutation")
    if not ((table[0] == ref).all() and (table[:, 0] == ref).all()):
        raise NotAGroup("element 0 is not the identity")
    if n <= _FULL_ASSOC_MAX:
        lhs = table[table[:, :, None], np.broadcast_to(ref, (n, n, n))]
        rhs = table[np.broadcast_to(ref[:, None, None], (n, n, n)), table[None, :, :]]
        bad = np.argwhere(lhs != rhs)
    else:
        # Light's test: associativity on triples (x, a, y) for a in a generating set
        bad = []
        for a in _greedy_generators(table):
            lhs = table[table[:, a][:, None], ref[None, :]]
            rhs = table[ref[:, None], table[a][None, :]]
            hit = np.argwhere(lhs != rhs)
            if hit.size:
                x, y = hit[0]
                bad = [(x, a, y)]
                break
        bad = np.asarray(bad)
    if len(bad):
        x, y, z = (int(v) for v in bad[0])
        raise NotAGroup(f"not associative at ({x}, {y}, {z})", triple=(x, y, z))


def _closure_bits(table, gens, start=1):
    seen = start
    frontier = list(_iter_bits(start))
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = int(table[x, g])
                if not seen >> y & 1:
                    seen |= 1 << y
                    nxt.append(y)
        frontier = nxt
    return seen


def _greedy_generators(table):
    n = table.shape[0]
    gens = []
    have = 1
    full = (1 << n) - 1
    while have != full:
        x = (~have & (have + 1)).bit_length() - 1
        gens.append(x)
        have = _closure_bits(table, gens, have | (1 << x))
    return gens


def _normalize_identity(table):
    n = table.shape[0]
    ids = [e for e in range(n) if (table[e] == np.arange(n)).all()]
    if not ids:
        raise NotAGroup("no identity element")
    e = ids[0]
    if e == 0:
        return table
    perm = np.arange(n)
    perm[0], perm[e] = e, 0
    # perm is an involution, so it relabels in both directions
    return perm[table[perm][:, perm]]


def from_cayley_table(table, label=None) -> FiniteGroup:
    """Validate a Cayley table and build the group.

    If the identity is not element 0 it is swapped into position 0.
    """
    arr = np.asarray(table)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.size == 0:
        raise NotAGroup("table must be a non-empty square array")
    n = arr.shape[0]
    if arr.min() < 0 or arr.max() >= n:
        raise NotAGroup("table entries out of range")
    ref = np.arange(n)
    for i in range(n):
        if not (np.sort(arr[i]) == ref).all():
            raise NotAGroup(f"row {i} is not a permutation")
    return FiniteGroup(_normalize_identity(arr.astype(np.int32)), label)


def table_from_right_action(rmul, parent, via, order=None):
    """Build a Cayley table from right multiplication by generators.

    ``rmul[s]`` maps element x to x*s for generator s. ``parent[j]`` and
    ``via[j]`` describe a spanning tree from element 0: j = parent[j] * s_via[j].
    Columns are filled in ``order`` (default: increasing index), which must
    list every parent before its children.
    """
    n = len(parent)
    table = np.empty((n, n), dtype=np.int32)
    table[:, 0] = np.arange(n)
    for j in (range(1, n) if order is None else order):
        if j:
            table[:, j] = rmul[via[j]][table[:, parent[j]]]
    return table


def from_permutation_generators(degree, generators, label=None, cap=DEFAULT_CLOSURE_CAP):
    """Close a set of permutations (image arrays) under composition.

    The product g*h applies g first, then h. Elements are numbered in BFS
    order from the identity, generator by generator.
    """
    gens = [np.asarray(g, dtype=np.int64) for g in generators]
    for g in gens:
        if g.shape != (degree,) or sorted(g.tolist()) != list(range(degree)):
            raise NotAGroup(f"not a permutation of degree {degree}: {g.tolist()}")
    ident = np.arange(degree, dtype=np.int64)
    elems = [ident]
    index = {ident.tobytes(): 0}
    parent = [0]
    via = [0]
    rmul = [[] for _ in gens]
    k = 0
    while k < len(elems):
        x = elems[k]
        for s, g in enumerate(gens):
            y = g[x]
            key = y.tobytes()
            j = index.get(key)
            if j is None:
                j = len(elems)
                if j >= cap:
                    raise SizeLimitExceeded(f"permutation closure exceeds {cap} elements")
                index[key] = j
                elems.append(y)
                parent.append(k)
                via.append(s)
            rmul[s].append(j)
        k += 1
    rmul = [np.asarray(r, dtype=np.int32) for r in rmul]
    table = table_from_right_action(rmul, parent, via)
    G = FiniteGroup(table, label, check=len(elems) <= _FULL_ASSOC_MAX)
    G._cache["perms"] = elems
    return G


def cyclic_group(n, label=None) -> FiniteGroup:
    r = np.arange(n)
    return FiniteGroup((r[:, None] + r[None, :]) % n, label or f"Z{n}", check=False)


def direct_product(G: FiniteGroup, H: FiniteGroup, label=None) -> FiniteGroup:
    """Componentwise product; element (g, h) has index g*|H| + h."""
    m = H.order
    gi = np.repeat(np.arange(G.order), m)
    hi = np.tile(np.arange(m), G.order)
    table = G.table[gi[:, None], gi[None, :]] * m + H.table[hi[:, None], hi[None, :]]
    if label is None and G.label and H.label:
        label = f"{G.label}x{H.label}"
    return FiniteGroup(table, label, check=False)


def subgroup_generated(G: FiniteGroup, gens) -> ElementSet:
    gens = [int(g) for g in gens]
    return ElementSet(G, _closure_bits(G.table, gens), True)


def generating_set(G: FiniteGroup):
    """A small generating set, picked greedily by lowest missing index."""
    if "gens" not in G._cache:
        G._cache["gens"] = _greedy_generators(G.table)
    return list(G._cache["gens"])


def check_subgroup(S: ElementSet) -> ElementSet:
    G = S.parent
    if not S.bits & 1:
        raise NotASubgroup("set does not contain the identity")
    idx = np.fromiter(S, dtype=np.int64)
    prods = G.table[idx[:, None], idx[None, :]].ravel()
    if _bits(np.unique(prods).tolist()) & ~S.bits:
        raise NotASubgroup("set is not closed under multiplication")
    return ElementSet(G, S.bits, True)


def is_normal(G: FiniteGroup, N: ElementSet) -> bool:
    idx = np.fromiter(N, dtype=np.int64)
    for g in generating_set(G) or [0]:
        img = G.table[G.table[g, idx], G.inverse[g]]
        if _bits(img.tolist()) != N.bits:
            return False
    return True


def conjugacy_classes(G: FiniteGroup) -> "ConjugacyClasses":
    if "classes" in G._cache:
        return G._cache["classes"]
    n = G.order
    class_of = np.full(n, -1, dtype=np.int64)
    reps, sizes = [], []
    allg = np.arange(n)
    for x in range(n):
        if class_of[x] >= 0:
            continue
        orbit = np.unique(G.table[G.table[allg, x], G.inverse])
        class_of[orbit] = len(reps)
        reps.append(x)
        sizes.append(int(orbit.size))
    cc = ConjugacyClasses(reps, class_of, sizes)
    G._cache["classes"] = cc
    return cc


@dataclass(frozen=True)
class ConjugacyClasses:
    representatives: list
    class_of: np.ndarray
    sizes: list

    def __len__(self):
        return len(self.representatives)

    def members(self, k):
        return np.nonzero(self.class_of == k)[0].tolist()


def conjugator_to_rep(G: FiniteGroup, x):
    """Return (r, g) with r the class representative of x and x = g r g^-1."""
    cc = conjugacy_classes(G)
    r = cc.representatives[cc.class_of[x]]
    for g in range(G.order):
        if G.conj(g, r) == x:
            return r, g
    raise AssertionError("unreachable: x is conjugate to its representative")


def centralizer(G: FiniteGroup, x) -> ElementSet:
    hits = np.nonzero(G.table[x] == G.table[:, x])[0]
    return ElementSet(G, _bits(hits.tolist()), True)


def center(G: FiniteGroup) -> ElementSet:
    if "center" not in G._cache:
        hits = np.nonzero((G.table == G.table.T).all(axis=1))[0]
        G._cache["center"] = ElementSet(G, _bits(hits.tolist()), True)
    return G._cache["center"]


def commutator_set(G: FiniteGroup):
    t = G.table
    c = t[t[t, G.inverse[:, None]], G.inverse[None, :]]
    return np.unique(c)


def derived_subgroup(G: FiniteGroup) -> ElementSet:
    if "derived" not in G._cache:
        G._cache["derived"] = subgroup_generated(G, commutator_set(G).tolist())
    return G._cache["derived"]


def normal_closure(G: FiniteGroup, xs) -> ElementSet:
    cc = conjugacy_classes(G)
    gens = set()
    for x in xs:
        gens.update(cc.members(cc.class_of[x]))
    return subgroup_generated(G, sorted(gens))


def normal_subgroups(G: FiniteGroup):
    """All normal subgroups, by closing normal closures of classes under joins."""
    if "normals" in G._cache:
        return G._cache["normals"]
    cc = conjugacy_classes(G)
    minimal = {normal_closure(G, [r]).bits for r in cc.representatives}
    found = set(minimal)
    frontier = set(minimal)
    while frontier:
        new = set()
        for a in frontier:
            for b in minimal:
                if a | b == a:
                    continue
                j = _closure_bits(G.table, list(_iter_bits(a | b)), a | b)
                if j not in found:
                    new.add(j)
        found |= new
        frontier = new
    out = [ElementSet(G, b, True) for b in sorted(found, key=lambda b: (b.bit_count(), b))]
    G._cache["normals"] = out
    return out


def quotient(G: FiniteGroup, N: ElementSet, label=None, return_map=False):
    """Coset table of G/N; coset k is represented by its least element."""
    if not N.is_subgroup:
        N = check_subgroup(N)
    if not is_normal(G, N):
        raise NotNormal("subgroup is not normal")
    idx = np.fromiter(N, dtype=np.int64)
    coset_min = G.table[:, idx].min(axis=1)
    reps = np.unique(coset_min)
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[reps] = np.arange(reps.size)
    proj = pos[coset_min]
    table = proj[G.table[reps[:, None], reps[None, :]]]
    Q = FiniteGroup(table, label, check=False)
    return (Q, proj) if return_map else Q


def smallest_prime_divisor(G) -> int:
    n = G.order if isinstance(G, FiniteGroup) else int(G)
    if n < 2:
        raise TrivialGroupHasNoPrime("the trivial group has no prime divisor")
    p = 2
    while n % p:
        p += 1
    return p


def prime_factors(n):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def abelian_invariants_from_orders(order, element_orders):
    """Invariant factors d1 | d2 | ... of a finite abelian group, 1s dropped.

    Uses only the counts |A[p^k]| = #{a : a^(p^k) = 1}: the number of cyclic
    p-factors of exponent >= k is log_p(|A[p^k]| / |A[p^(k-1)]|).
    """
    parts = {}
    for p in prime_factors(order):
        sizes = [1]
        k = 1
        while True:
            q = p**k
            sizes.append(sum(1 for o in element_orders if q % o == 0))
            if sizes[-1] == sizes[-2]:
                break
            k += 1
        ge = []
        for k in range(1, len(sizes)):
            ratio = sizes[k] // sizes[k - 1]
            c = 0
            while ratio > 1:
                ratio //= p
                c += 1
            ge.append(c)
        exps = []
        for k in range(len(ge)):
            nxt = ge[k + 1] if k + 1 < len(ge) else 0
            exps += [k + 1] * (ge[k] - nxt)
        parts[p] = sorted(exps, reverse=True)
    width = max((len(v) for v in parts.values()), default=0)
    factors = []
    for i in range(width):
        d = 1
        for p, exps in parts.items():
            if i < len(exps):
                d *= p ** exps[i]
        factors.append(d)
    return sorted(factors)


def abelian_invariants(G: FiniteGroup, S: ElementSet | None = None):
    """Invariant factors of an abelian group (or abelian subgroup S of G)."""
    if S is None:
        if not G.is_abelian:
            raise ValueError("group is not abelian")
        return abelian_invariants_from_orders(G.order, G.element_orders())
    orders = G.element_orders()
    return abelian_invariants_from_orders(len(S), [orders[x] for x in S])


def abelianization_invariants(G: FiniteGroup):
    Q = quotient(G, derived_subgroup(G))
    return abelian_invariants(Q)


def is_elementary_abelian_rank2(Q: FiniteGroup, p: int) -> bool:
    """Order p^2 with every non-identity element of order p."""
    if Q.order != p * p:
        return False
    return all(o == p for o in Q.element_orders()[1:])


def restrict(G: FiniteGroup, S: ElementSet, label=None):
    """The subgroup S as a group in its own right, plus the index map back to G."""
    if not S.is_subgroup:
        S = check_subgroup(S)
    idx = np.fromiter(S, dtype=np.int64)
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[idx] = np.arange(idx.size)
    table = pos[G.table[idx[:, None], idx[None, :]]]
    return FiniteGroup(table, label, check=False), idx


def relabel_by_words(G: FiniteGroup, gens_G, H: FiniteGroup, gens_H):
    """Map G -> H sending gens_G[i] to gens_H[i], if that defines an isomorphism.

    Walks G breadth first from the identity using the given generators and
    sends each element to the matching word in H; returns the element map or
    None when the assignment is inconsistent or not bijective.
    """
    if G.order != H.order or len(gens_G) != len(gens_H):
        return None
    phi = {0: 0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for a, b in zip(gens_G, gens_H):
            y = G.mul(x, a)
            z = H.mul(phi[x], b)
            if y in phi:
                if phi[y] != z:
                    return None
            else:
                phi[y] = z
                queue.append(y)
    if len(phi) != G.order or len(set(phi.values())) != H.order:
        return None
    m = np.array([phi[i] for i in range(G.order)])
    if not (H.table[m[:, None], m[None, :]] == m[G.table]).all():
        return None
    return m


def coprime(a, b):
    return gcd(a, b) == 1
