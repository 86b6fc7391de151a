"""Finitely presented groups and Todd-Coxeter coset enumeration.

Words are tuples of signed 1-based generator indices; ``-k`` is the inverse
of generator ``k``. In a coset table generator ``k`` owns column ``2(k-1)``
and its inverse column ``2(k-1)+1``.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import IncompleteTable, InputError, SizeLimitExceeded
from .groups import FiniteGroup, table_from_right_action

DEFAULT_COSET_LIMIT = 2**20
# coset_action_to_group refuses to materialize Cayley tables beyond this
MAX_TABLE_ORDER = 6000


def default_coset_limit():
    env = os.environ.get("WEDGEDEG_COSET_LIMIT")
    return int(env) if env else DEFAULT_COSET_LIMIT


def free_reduce(word):
    out = []
    for s in word:
        if out and out[-1] == -s:
            out.pop()
        else:
            out.append(s)
    return tuple(out)


def invert(word):
    return tuple(-s for s in reversed(word))


def col(s):
    return 2 * (s - 1) if s > 0 else 2 * (-s - 1) + 1


def to_columns(word):
    return [col(s) for s in word]


@dataclass(frozen=True)
class Presentation:
    generator_count: int
    relators: tuple

    def __post_init__(self):
        if self.generator_count < 1:
            raise InputError("a presentation needs at least one generator")
        rels = []
        for w in self.relators:
            for s in w:
                if s == 0 or abs(s) > self.generator_count:
                    raise InputError(f"relator {list(w)} references a missing generator")
            rels.append(free_reduce(w))
        object.__setattr__(self, "relators", tuple(rels))

    @classmethod
    def from_json(cls, data):
        if isinstance(data, (str, bytes)):
            data = json.loads(data)
        return cls(int(data["generators"]), tuple(tuple(int(s) for s in w) for w in data["relators"]))

    def to_json(self):
        return {"generators": self.generator_count, "relators": [list(w) for w in self.relators]}


@dataclass(frozen=True)
class CosetTable:
    coset_count: int
    action: np.ndarray
    complete: bool = True

    def image(self, coset, word):
        """Follow ``word`` from ``coset`` (right action)."""
        c = coset
        for s in word:
            c = int(self.action[c, col(s)])
        return c


def todd_coxeter(P: Presentation, subgroup=(), limit=None, strategy="hlt", lookahead=True):
    """Enumerate the cosets of the subgroup generated by ``subgroup`` words.

    Coset 0 is the subgroup itself; cosets are numbered by definition order.
    Raises LimitExceeded if more than ``limit`` cosets are needed at once.
    """
    if limit is None:
        limit = default_coset_limit()
    if limit < 1:
        raise InputError("coset limit must be positive")
    ncols = 2 * P.generator_count
    rels = [to_columns(w) for w in P.relators if w]
    sub = [to_columns(free_reduce(w)) for w in subgroup]
    sub = [w for w in sub if w]
    if strategy == "hlt":
        action = _kernels.enumerate_cosets(ncols, rels, sub, int(limit), lookahead)
    elif strategy == "felsch":
        action = _kernels.enumerate_cosets_felsch(ncols, rels, sub, int(limit))
    else:
        raise InputError(f"unknown strategy {strategy!r}")
    complete = bool((action >= 0).all())
    return CosetTable(int(action.shape[0]), action, complete)


def relators_hold(T: CosetTable, P: Presentation) -> bool:
    """Every relator fixes every coset."""
    cosets = np.arange(T.coset_count)
    for w in P.relators:
        c = cosets
        for s in w:
            c = T.action[c, col(s)]
        if not (c == cosets).all():
            return False
    return True


class RegularAction:
    """A group realized by its regular action on the cosets of the trivial subgroup.

    Element ``c`` is the group element carrying coset 0 to coset ``c``, so
    products are computed by tracing a word for the right factor. Nothing of
    size order^2 is stored, which keeps groups with ~10^4 elements cheap.
    """

    def __init__(self, T: CosetTable, P: Presentation):
        if not T.complete:
            raise IncompleteTable("coset table has undefined entries")
        self.table = T
        self.presentation = P
        self.order = T.coset_count
        n = self.order
        parent = np.full(n, -1, dtype=np.int64)
        via = np.zeros(n, dtype=np.int64)
        parent[0] = 0
        order = [0]
        k = 0
        act = T.action
        while k < len(order):
            c = order[k]
            k += 1
            for x in range(act.shape[1]):
                d = int(act[c, x])
                if parent[d] < 0:
                    parent[d] = c
                    via[d] = x
                    order.append(d)
        if len(order) != n:
            raise IncompleteTable("coset graph is not connected")
        self.bfs_order = order
        self._parent = parent
        self._via = via
        self._words = {0: ()}

    def word(self, c):
        """Column word carrying coset 0 to coset c."""
        w = self._words.get(c)
        if w is None:
            path = []
            d = c
            while d != 0 and d not in self._words:
                path.append(int(self._via[d]))
                d = int(self._parent[d])
            w = self._words[d] + tuple(reversed(path))
            self._words[c] = w
        return w

    def trace(self, c, cols):
        act = self.table.action
        for x in cols:
            c = int(act[c, x])
        return c

    def generator(self, s):
        return int(self.table.action[0, col(s)])

    def mul(self, a, b):
        return self.trace(a, self.word(b))

    def inv(self, a):
        return self.trace(0, [x ^ 1 for x in reversed(self.word(a))])

    def evaluate(self, word):
        return self.table.image(0, word)


def coset_action_to_group(T: CosetTable, P: Presentation, label=None):
    """Cayley table of the group acting regularly on the cosets.

    Returns ``(G, images)`` where ``images[k-1]`` is the element for generator k.
    """
    if not T.complete:
        raise IncompleteTable("coset table has undefined entries")
    n = T.coset_count
    if n > MAX_TABLE_ORDER:
        raise SizeLimitExceeded(f"refusing to build a {n}x{n} Cayley table")
    R = RegularAction(T, P)
    rmul = [T.action[:, x] for x in range(T.action.shape[1])]
    table = table_from_right_action(rmul, R._parent, R._via, R.bfs_order)
    G = FiniteGroup(table, label, check=n <= 64)
    images = [R.generator(s) for s in range(1, P.generator_count + 1)]
    return G, images

