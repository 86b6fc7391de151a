"""Exact multiple commutativity and exterior degrees, and the bounds they obey.

d_n(G) is the fraction of (n+1)-tuples of G whose entries pairwise commute;
D_n(G) is the fraction whose entries pairwise satisfy x ^ y = 1 in G ^ G.
Both come from counting cliques in a relation graph on G:

    count_n(S) = sum_{x in S} count_{n-1}(S & row(x)),    count_0(S) = |S|

with the top level summed over conjugacy classes only.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np

from . import _kernels
from .errors import MissingExteriorStructure, NotCoprime, NotNormal, TooLarge
from .groups import (
    FiniteGroup,
    _iter_bits,
    center,
    centralizer,
    conjugacy_classes,
    derived_subgroup,
    direct_product,
    is_elementary_abelian_rank2,
    is_normal,
    normal_subgroups,
    quotient,
    smallest_prime_divisor,
)
from .wedge import (
    EXTERIOR,
    TensorStructure,
    exterior_center,
    exterior_centralizer,
    exterior_centralizers,
    exterior_square,
)

COMMUTING = "commuting"
WEDGE_TRIVIAL = "wedge-trivial"
BRUTE_FORCE_CAP = 10**7


@dataclass(frozen=True, eq=False)
class RelationGraph:
    parent: FiniteGroup
    rows: tuple
    kind: str

    def related(self, x, y):
        return bool(self.rows[x] >> y & 1)


def relation_graph(G: FiniteGroup, kind=COMMUTING, S: TensorStructure | None = None,
                   use_classes=True) -> RelationGraph:
    """Adjacency bitsets of the commuting or wedge-trivial relation on G.

    Wedge rows come from exterior centralizers of class representatives,
    conjugated to the rest of each class, unless ``use_classes`` is false.
    """
    if kind == COMMUTING:
        key = "graph-commuting"
        if key not in G._cache:
            G._cache[key] = RelationGraph(
                G, tuple(centralizer(G, x).bits for x in range(G.order)), COMMUTING)
        return G._cache[key]
    if kind != WEDGE_TRIVIAL:
        raise ValueError(f"unknown relation kind {kind!r}")
    if S is None or S.mode != EXTERIOR or S.base is not G:
        raise MissingExteriorStructure("the wedge relation needs the exterior square of G")
    if not use_classes:
        return RelationGraph(
            G, tuple(exterior_centralizer(S, x).bits for x in range(G.order)), WEDGE_TRIVIAL)
    key = "graph-wedge"
    if key not in S._cache:
        S._cache[key] = RelationGraph(
            G, tuple(C.bits for C in exterior_centralizers(S)), WEDGE_TRIVIAL)
    return S._cache[key]


def tuple_count(R: RelationGraph, S: int, n: int, memo=None) -> int:
    """Number of (n+1)-tuples from the bitset S whose entries are pairwise related."""
    if memo is None:
        memo = {}
    return _count(R.rows, S, n, memo)


def _count(rows, S, n, memo):
    if n == 0:
        return S.bit_count()
    if n == 1:
        return sum((S & rows[x]).bit_count() for x in _iter_bits(S))
    key = (S, n)
    hit = memo.get(key)
    if hit is not None:
        return hit
    total = 0
    for x in _iter_bits(S):
        total += _count(rows, S & rows[x], n - 1, memo)
    memo[key] = total
    return total


def _class_reduced(R: RelationGraph, n, rep_order=None, use_classes=True):
    G = R.parent
    if n == 0:
        return Fraction(1)
    memo = {}
    if not use_classes:
        total = tuple_count(R, (1 << G.order) - 1, n, memo)
    else:
        cc = conjugacy_classes(G)
        order = range(len(cc)) if rep_order is None else rep_order
        total = 0
        for k in order:
            r = cc.representatives[k]
            total += cc.sizes[k] * tuple_count(R, R.rows[r], n - 1, memo)
    return Fraction(total, G.order ** (n + 1))


def commutativity_degree_n(G: FiniteGroup, n: int, *, use_classes=True, rep_order=None) -> Fraction:
    """d_n(G) as an exact fraction."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return _class_reduced(relation_graph(G, COMMUTING), n, rep_order, use_classes)


def exterior_degree_n(G: FiniteGroup, S: TensorStructure, n: int, *, use_classes=True,
                      rep_order=None) -> Fraction:
    """D_n(G) as an exact fraction; wedges are always evaluated in G ^ G itself."""
    if n < 0:
        raise ValueError("n must be non-negative")
    R = relation_graph(G, WEDGE_TRIVIAL, S, use_classes)
    return _class_reduced(R, n, rep_order, use_classes)


def brute_force_degree(G: FiniteGroup, n: int, kind=COMMUTING, S: TensorStructure | None = None,
                       cap=BRUTE_FORCE_CAP) -> Fraction:
    """Degree by looping over every (n+1)-tuple; an oracle for the recursive count."""
    if G.order ** (n + 1) > cap:
        raise TooLarge(f"{G.order}^{n + 1} tuples exceeds the brute-force cap {cap}")
    if kind == COMMUTING:
        rel = (G.table == G.table.T)
    elif kind == WEDGE_TRIVIAL:
        if S is None or S.mode != EXTERIOR:
            raise MissingExteriorStructure("the wedge relation needs the exterior square of G")
        rel = (S.symbol == 0)
    else:
        raise ValueError(f"unknown relation kind {kind!r}")
    rel = np.ascontiguousarray(rel, dtype=np.uint8)
    count = _kernels.count_pairwise_tuples(rel, n + 1)
    return Fraction(count, G.order ** (n + 1))


def dihedral_closed_form(n: int, m: int) -> Fraction:
    """(n^m + 2^(m+1) - 1) / (2 (2n)^m) for the dihedral group of order 2n."""
    if n < 2 or m < 1:
        raise ValueError("need n >= 2 and m >= 1")
    return Fraction(n**m + 2 ** (m + 1) - 1, 2 * (2 * n) ** m)


def quaternion_closed_form(n: int, m: int) -> Fraction:
    """Same expression, for the generalized quaternion group of order 4n."""
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    return Fraction(n**m + 2 ** (m + 1) - 1, 2 * (2 * n) ** m)


class DegreeProfile:
    """Cached degrees and structural data for one group and its exterior square."""

    def __init__(self, G: FiniteGroup, S: TensorStructure | None = None):
        self.G = G
        self.S = S
        self._d = {}
        self._D = {}

    def d(self, n):
        if n not in self._d:
            self._d[n] = commutativity_degree_n(self.G, n)
        return self._d[n]

    def D(self, n):
        if self.S is None:
            raise MissingExteriorStructure("exterior degrees need the exterior square of G")
        if n not in self._D:
            self._D[n] = exterior_degree_n(self.G, self.S, n)
        return self._D[n]

    @property
    def center(self):
        return center(self.G)

    @property
    def exterior_center(self):
        return exterior_center(self.S)


@dataclass
class TheoremEntry:
    """One bound lhs <= rhs, evaluated exactly.

    ``equality_rule`` is "iff" when equality must hold exactly when the
    structural condition does, "implies" when the condition forces equality,
    and None when no equality statement is attached.
    """

    theorem: str
    n: int
    applicable: bool
    lhs: Fraction | None = None
    rhs: Fraction | None = None
    holds: bool | None = None
    equality: bool | None = None
    equality_condition_met: bool | None = None
    equality_rule: str | None = None
    detail: str = ""

    @property
    def ok(self):
        if not self.applicable:
            return True
        if not self.holds:
            return False
        if self.equality_rule == "iff":
            return self.equality == self.equality_condition_met
        if self.equality_rule == "implies" and self.equality_condition_met:
            return bool(self.equality)
        return True

    def to_json(self):
        out = asdict(self)
        for k in ("lhs", "rhs"):
            out[k] = fraction_str(out[k]) if out[k] is not None else None
        out["ok"] = self.ok
        return out


@dataclass
class TheoremReport:
    entries: list = field(default_factory=list)

    def add(self, theorem, n, applicable, lhs=None, rhs=None, *, condition=None, rule=None,
            detail=""):
        if not applicable:
            e = TheoremEntry(theorem, n, False, detail=detail)
        else:
            e = TheoremEntry(theorem, n, True, lhs, rhs, lhs <= rhs, lhs == rhs, condition, rule,
                             detail)
        self.entries.append(e)
        return e

    @property
    def ok(self):
        return all(e.ok for e in self.entries)

    def failures(self):
        return [e for e in self.entries if not e.ok]

    def find(self, theorem, n=None):
        return [e for e in self.entries if e.theorem == theorem and (n is None or e.n == n)]

    def extend(self, other):
        self.entries.extend(other.entries)

    def to_json(self):
        return [e.to_json() for e in self.entries]


def fraction_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def verify_bounds(G: FiniteGroup, S: TensorStructure, n: int, *, profile: DegreeProfile = None,
                  quotients=True) -> TheoremReport:
    """Evaluate every bound on d_n(G) and D_n(G) whose hypotheses can be checked.

    Bounds whose hypotheses fail are recorded with ``applicable=False``.
    """
    if n < 1:
        raise ValueError("bounds are stated for n >= 1")
    P = profile or DegreeProfile(G, S)
    rep = TheoremReport()
    order = G.order
    trivial = order == 1
    p = None if trivial else smallest_prime_divisor(G)
    abelian = G.is_abelian
    cyclic = G.is_cyclic
    Z = center(G)
    Zw = exterior_center(S)
    dn, Dn = P.d(n), P.D(n)
    d1, D1 = P.d(1), P.D(1)

    rep.add("d_n.abelian_iff_one", n, True, dn, Fraction(1), condition=abelian, rule="iff")
    if trivial or abelian:
        rep.add("d_n.nonabelian_bound", n, False, detail="group is abelian")
    else:
        Q = quotient(G, Z)
        rep.add("d_n.nonabelian_bound", n, True, dn,
                Fraction(p ** (n + 1) + p**n - 1, p ** (2 * n + 1)),
                condition=is_elementary_abelian_rank2(Q, p), rule="iff")
    meets = (Z & derived_subgroup(G)).is_trivial()
    if trivial or abelian or not meets:
        rep.add("d_n.center_meets_derived_trivially", n, False,
                detail="needs a non-abelian group with Z(G) & G' = 1")
    else:
        rep.add("d_n.center_meets_derived_trivially", n, True, dn, Fraction(1, p**n))

    if quotients:
        for N in normal_subgroups(G):
            if N.is_trivial() or len(N) == order:
                continue
            GN = quotient(G, N)
            cond = (N & derived_subgroup(G)).is_trivial()
            rep.add("d_n.quotient_monotone", n, True, dn, commutativity_degree_n(GN, n),
                    condition=cond, rule="implies", detail=f"|N| = {len(N)}")

    if trivial:
        for name in ("d_wedge.center_gap", "d_wedge.noncyclic_bound",
                     "d_wedge.unicentral_failure_bound", "D_n.recursive_bound",
                     "D_n.noncyclic_bound", "D_n.proper_exterior_center_bound",
                     "D_n.capable_bound"):
            rep.add(name, n, False, detail="trivial group has no prime divisor")
    else:
        rep.add("d_wedge.center_gap", n, True, D1,
                d1 - Fraction(p - 1, p) * Fraction(len(Z) - len(Zw), order))
        if (abelian and not cyclic) or not abelian:
            rep.add("d_wedge.noncyclic_bound", n, True, D1, Fraction(p * p + p - 1, p**3))
        else:
            rep.add("d_wedge.noncyclic_bound", n, False, detail="group is cyclic")
        proper = Zw < Z
        if not abelian and proper:
            rep.add("d_wedge.unicentral_failure_bound", n, True, D1,
                    Fraction(p**3 + p - 1, p**4))
        else:
            rep.add("d_wedge.unicentral_failure_bound", n, False,
                    detail="needs a non-abelian group with Z^(G) < Z(G)")
        rhs = (Fraction(1, p ** (n - 1)) * d1
               + Fraction((1 - p) * len(Z), p**n * order)
               - (1 - p**n * P.D(n - 1)) * Fraction(len(Zw), p**n * order))
        rep.add("D_n.recursive_bound", n, True, Dn, rhs)
        if cyclic:
            rep.add("D_n.noncyclic_bound", n, False, detail="group is cyclic")
        else:
            Q = quotient(G, Zw)
            rep.add("D_n.noncyclic_bound", n, True, Dn,
                    Fraction(p ** (n + 1) + p**n - 1, p ** (2 * n + 1)),
                    condition=is_elementary_abelian_rank2(Q, p), rule="iff")
        if not abelian and proper:
            rep.add("D_n.proper_exterior_center_bound", n, True, Dn,
                    Fraction(p ** (2 * n + 1) * (p + 1) + p ** (2 * n) - 1,
                             p ** (3 * n + 1) * (p + 1)))
        else:
            rep.add("D_n.proper_exterior_center_bound", n, False,
                    detail="needs a non-abelian group with Z^(G) < Z(G)")
        if not abelian and Zw.is_trivial():
            rep.add("D_n.capable_bound", n, True, Dn, Fraction(1, p**n))
        else:
            rep.add("D_n.capable_bound", n, False, detail="needs a non-abelian capable group")

    rep.add("d_wedge.cyclic_iff_one", n, True, D1, Fraction(1), condition=cyclic, rule="iff")
    rep.add("D_n.cyclic_iff_one", n, True, Dn, Fraction(1), condition=cyclic, rule="iff")
    rep.add("D_n.descending", n, True, Dn, P.D(n - 1))
    rep.add("D_n.below_d_n", n, True, Dn, dn)
    return rep


@dataclass(frozen=True)
class QuotientCheck:
    n: int
    degree: Fraction
    quotient_degree: Fraction
    holds: bool
    equality_expected: bool


def verify_quotient_monotonicity(G: FiniteGroup, N, ns=(1, 2, 3)):
    """d_n(G) <= d_n(G/N), with equality required when N & G' = 1."""
    if not is_normal(G, N):
        raise NotNormal("N is not normal in G")
    Q = quotient(G, N)
    expected = (N & derived_subgroup(G)).is_trivial()
    out = []
    for n in ns:
        a = commutativity_degree_n(G, n)
        b = commutativity_degree_n(Q, n)
        ok = a <= b and (a == b or not expected)
        out.append(QuotientCheck(n, a, b, ok, expected))
    return out


@dataclass(frozen=True)
class ProductCheck:
    n: int
    lhs: Fraction
    rhs: Fraction
    holds: bool


def verify_coprime_multiplicativity(G: FiniteGroup, H: FiniteGroup, n: int, *, S_G=None,
                                    S_H=None, S_GH=None, GH=None, **kw) -> ProductCheck:
    """D_n(G x H) against D_n(G) * D_n(H), with G x H's exterior square built directly."""
    if gcd(G.order, H.order) != 1:
        raise NotCoprime(f"|G| = {G.order} and |H| = {H.order} are not coprime")
    GH = GH or direct_product(G, H)
    S_G = S_G or exterior_square(G, **kw)
    S_H = S_H or exterior_square(H, **kw)
    S_GH = S_GH or exterior_square(GH, **kw)
    lhs = exterior_degree_n(GH, S_GH, n)
    rhs = exterior_degree_n(G, S_G, n) * exterior_degree_n(H, S_H, n)
    return ProductCheck(n, lhs, rhs, lhs == rhs)


@dataclass(frozen=True)
class UnidegreeFlags:
    is_unicentral: bool
    is_unidegree: bool
    is_multiple_unidegree: bool


def unidegree_flags(G: FiniteGroup, S: TensorStructure, max_n: int,
                    profile: DegreeProfile = None) -> UnidegreeFlags:
    if max_n < 1:
        raise ValueError("max_n must be at least 1")
    P = profile or DegreeProfile(G, S)
    unicentral = center(G) == exterior_center(S)
    unideg = P.d(1) == P.D(1)
    multiple = all(P.d(n) == P.D(n) for n in range(1, max_n + 1))
    return UnidegreeFlags(unicentral, unideg, multiple)
