"""Nonabelian tensor and exterior squares via the groups nu(G) and tau(G).

nu(G) is generated by two copies of G (generators ``1..n`` and ``n+1..2n``)
subject to the multiplication tables of both copies and the compatibility
relations

    x [g, h'] x^-1 = [xgx^-1, (xhx^-1)'] = x' [g, h'] x'^-1,

where ``'`` marks the second copy. tau(G) adds [g, g'] = 1. The subgroup
[G, G'] is the tensor square (in nu) or the exterior square (in tau), with
g (x) h realized as the commutator [g, h'].
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import GroupTooLarge, WedgedegError, WrongMode
from .groups import (
    ElementSet,
    FiniteGroup,
    abelian_invariants,
    conjugacy_classes,
    conjugator_to_rep,
    check_subgroup,
    derived_subgroup,
    generating_set,
    subgroup_generated,
    table_from_right_action,
)
from .presentation import (
    Presentation,
    RegularAction,
    coset_action_to_group,
    col,
    todd_coxeter,
)

TENSOR = "tensor"
EXTERIOR = "exterior"
DEFAULT_MAX_ORDER = 32


class ConstructionError(WedgedegError):
    """A post-condition of the nu/tau construction failed."""


def build_pair_presentation(G: FiniteGroup, mode=EXTERIOR, *, full_compatibility=False,
                            max_order=DEFAULT_MAX_ORDER) -> Presentation:
    """Presentation of nu(G) (tensor mode) or tau(G) (exterior mode) on 2|G| generators.

    With ``full_compatibility`` the conjugation relators are emitted for every
    x in G; otherwise only for x in a generating set, which defines the same
    group because the relations for x and y imply those for xy.
    """
    if mode not in (TENSOR, EXTERIOR):
        raise WrongMode(f"unknown mode {mode!r}")
    n = G.order
    if n > max_order:
        raise GroupTooLarge(f"|G| = {n} exceeds the cap {max_order} for tensor constructions")
    t = G.table
    rels = []
    for off in (0, n):
        for i in range(n):
            for j in range(n):
                rels.append((off + i + 1, off + j + 1, -(off + int(t[i, j]) + 1)))
    if mode == EXTERIOR:
        for g in range(n):
            rels.append((g + 1, n + g + 1, -(g + 1), -(n + g + 1)))
    xs = range(1, n) if full_compatibility else generating_set(G)
    for x in xs:
        for g in range(n):
            gx = G.conj(x, g)
            for h in range(n):
                hx = G.conj(x, h)
                inner = (g + 1, n + h + 1, -(g + 1), -(n + h + 1))
                back = (n + hx + 1, gx + 1, -(n + hx + 1), -(gx + 1))
                for xc in (x + 1, n + x + 1):
                    rels.append((xc,) + inner + (-xc,) + back)
    P = Presentation(2 * n, tuple(rels))
    seen = set()
    uniq = []
    for w in P.relators:
        if w and w not in seen:
            seen.add(w)
            uniq.append(w)
    return Presentation(2 * n, tuple(uniq))


@dataclass(frozen=True, eq=False)
class TensorStructure:
    """nu(G) or tau(G) realized concretely, with the pairing subgroup [G, G'].

    ``ambient`` is the regular coset action of nu(G)/tau(G). ``pairing`` is
    [G, G'] as a standalone group; ``symbol[x, y]`` is the pairing element
    x (x) y (or x ^ y), and ``commutator_map[k]`` is its image in G under the
    map sending both copies of G to G.
    """

    base: FiniteGroup
    mode: str
    presentation: Presentation = field(repr=False)
    ambient: RegularAction = field(repr=False)
    left_embed: np.ndarray = field(repr=False)
    right_embed: np.ndarray = field(repr=False)
    pairing: FiniteGroup = field(repr=False)
    pairing_cosets: np.ndarray = field(repr=False)
    symbol: np.ndarray = field(repr=False)
    commutator_map: np.ndarray = field(repr=False)
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def pairing_subgroup(self):
        """The pairing subgroup as a set of ambient elements."""
        return frozenset(self.pairing_cosets.tolist())

    @property
    def ambient_order(self):
        return self.ambient.order

    def ambient_group(self):
        """The ambient group as a FiniteGroup (only for small ambients)."""
        G, _ = coset_action_to_group(self.ambient.table, self.presentation)
        return G


def _pair_structure(G: FiniteGroup, mode, *, limit=None, strategy="hlt",
                    full_compatibility=False, max_order=DEFAULT_MAX_ORDER) -> TensorStructure:
    n = G.order
    P = build_pair_presentation(G, mode, full_compatibility=full_compatibility,
                                max_order=max_order)
    T = todd_coxeter(P, (), limit=limit, strategy=strategy)
    R = RegularAction(T, P)
    act = T.action
    ca = np.array([col(g + 1) for g in range(n)])
    cb = np.array([col(n + g + 1) for g in range(n)])
    left = act[0, ca].astype(np.int64)
    right = act[0, cb].astype(np.int64)
    for emb, cols in ((left, ca), (right, cb)):
        if len(set(emb.tolist())) != n:
            raise ConstructionError("embedding of G is not injective")
        # emb(g) * h lands on emb(gh)
        if not (act[emb[:, None], cols[None, :]] == emb[G.table]).all():
            raise ConstructionError("embedding of G is not a homomorphism")

    _check_projection(G, P)

    # symbol[x, y] as an ambient element: 0 . x y' x^-1 y'^-1
    c = act[left[:, None], cb[None, :]]
    c = act[c, (ca ^ 1)[:, None]]
    c = act[c, (cb ^ 1)[None, :]].astype(np.int64)

    # close the pairing subgroup under right multiplication by the symbols
    gen_cosets, gen_first = np.unique(c.ravel(), return_index=True)
    gen_xy = [divmod(int(k), n) for k in gen_first]
    gen_words = [(int(ca[x]), int(cb[y]), int(ca[x]) ^ 1, int(cb[y]) ^ 1) for x, y in gen_xy]
    gen_comm = [G.commutator(x, y) for x, y in gen_xy]
    elems = [0]
    index = {0: 0}
    image = [0]
    parent = [0]
    via = [0]
    rmul = [[] for _ in gen_words]
    k = 0
    while k < len(elems):
        e = elems[k]
        for s, w in enumerate(gen_words):
            f = R.trace(e, w)
            img = G.mul(image[k], gen_comm[s])
            j = index.get(f)
            if j is None:
                j = len(elems)
                index[f] = j
                elems.append(f)
                image.append(img)
                parent.append(k)
                via.append(s)
            elif image[j] != img:
                raise ConstructionError("commutator map is not well defined")
            rmul[s].append(j)
        k += 1
    rmul = [np.asarray(r, dtype=np.int64) for r in rmul]
    ptable = table_from_right_action(rmul, parent, via)
    pairing = FiniteGroup(ptable, f"{G.label or 'G'}{'^' if mode == EXTERIOR else '(x)'}"
                          f"{G.label or 'G'}", check=len(elems) <= 64)
    pos = {f: j for j, f in enumerate(elems)}
    symbol = np.vectorize(pos.__getitem__, otypes=[np.int64])(c)
    if R.order != n * n * len(elems):
        raise ConstructionError(
            f"|ambient| = {R.order} but |G|^2 * |pairing| = {n * n * len(elems)}")
    return TensorStructure(G, mode, P, R, left, right, pairing,
                           np.asarray(elems, dtype=np.int64), symbol,
                           np.asarray(image, dtype=np.int64))


def _check_projection(G: FiniteGroup, P: Presentation):
    """The map sending both copies of G onto G kills every relator."""
    n = G.order
    t = G.table
    inv = G.inverse
    for w in P.relators:
        e = 0
        for s in w:
            g = (abs(s) - 1) % n
            e = int(t[e, g if s > 0 else inv[g]])
        if e != 0:
            raise ConstructionError(f"relator {w} does not map to the identity of G")


def exterior_square(G: FiniteGroup, **kw) -> TensorStructure:
    """Build tau(G); its pairing subgroup is G ^ G."""
    return _pair_structure(G, EXTERIOR, **kw)


def tensor_square(G: FiniteGroup, **kw) -> TensorStructure:
    """Build nu(G); its pairing subgroup is G (x) G."""
    return _pair_structure(G, TENSOR, **kw)


def _require(S: TensorStructure, mode):
    if S.mode != mode:
        raise WrongMode(f"operation needs a {mode} structure, got {S.mode}")


def wedge(S: TensorStructure, x, y) -> int:
    """x ^ y as an element index of ``S.pairing``."""
    _require(S, EXTERIOR)
    return int(S.symbol[x, y])


def tensor(S: TensorStructure, x, y) -> int:
    _require(S, TENSOR)
    return int(S.symbol[x, y])


@dataclass(frozen=True)
class SchurData:
    multiplier: ElementSet
    multiplier_order: int
    abelian_invariants: list


def _kernel(S: TensorStructure) -> ElementSet:
    hits = np.nonzero(S.commutator_map == 0)[0]
    return S.pairing.subset(hits.tolist(), subgroup=True)


def schur_multiplier(S: TensorStructure) -> SchurData:
    """M(G) as the kernel of the commutator map G ^ G -> G'."""
    _require(S, EXTERIOR)
    if "schur" in S._cache:
        return S._cache["schur"]
    M = check_subgroup(_kernel(S))
    W = S.pairing
    idx = np.fromiter(M, dtype=np.int64)
    if not (W.table[idx[:, None], np.arange(W.order)[None, :]]
            == W.table[np.arange(W.order)[None, :], idx[:, None]]).all():
        raise ConstructionError("multiplier is not central in the exterior square")
    derived = derived_subgroup(S.base)
    if set(S.commutator_map.tolist()) != set(derived):
        raise ConstructionError("commutator map is not onto G'")
    if len(M) * len(derived) != W.order:
        raise ConstructionError("|M(G)| * |G'| != |G ^ G|")
    data = SchurData(M, len(M), abelian_invariants(W, M))
    S._cache["schur"] = data
    return data


def exterior_centralizer(S: TensorStructure, x) -> ElementSet:
    """{y : x ^ y = 1}, checked to be a subgroup."""
    _require(S, EXTERIOR)
    hits = np.nonzero(S.symbol[x] == 0)[0]
    return check_subgroup(S.base.subset(hits.tolist()))


def exterior_centralizers(S: TensorStructure):
    """All exterior centralizers, computed on class representatives and conjugated."""
    _require(S, EXTERIOR)
    if "centralizers" not in S._cache:
        G = S.base
        cc = conjugacy_classes(G)
        by_rep = {r: exterior_centralizer(S, r) for r in cc.representatives}
        out = []
        for x in range(G.order):
            r, g = conjugator_to_rep(G, x)
            out.append(by_rep[r] if g == 0 else by_rep[r].conjugate(g))
        S._cache["centralizers"] = out
    return S._cache["centralizers"]


def exterior_center(S: TensorStructure) -> ElementSet:
    _require(S, EXTERIOR)
    if "center" not in S._cache:
        bits = S.base.full_set().bits
        for C in exterior_centralizers(S):
            bits &= C.bits
        S._cache["center"] = ElementSet(S.base, bits, True)
    return S._cache["center"]


def is_capable(S: TensorStructure) -> bool:
    """Ellis: G is capable iff its exterior centre is trivial."""
    return exterior_center(S).is_trivial()


def nabla_and_j2(T: TensorStructure):
    """(nabla(G), J2(G)) inside the tensor square ``T.pairing``."""
    _require(T, TENSOR)
    n = T.base.order
    diag = [int(T.symbol[g, g]) for g in range(n)]
    nabla = subgroup_generated(T.pairing, diag)
    j2 = check_subgroup(_kernel(T))
    return nabla, j2
