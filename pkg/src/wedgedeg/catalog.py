"""Named groups and the text form accepted on the command line.

Grammar: factors joined by ``x``; each factor is one of ``Z{n}``, ``D{2n}``
(dihedral of order 2n), ``Q{4n}`` (generalized quaternion of order 4n),
``S3``, ``S4``, ``A4`` or ``@path.json``.
"""

from __future__ import annotations

import json
import re

from .errors import ParseError, WedgedegError
from .groups import (
    FiniteGroup,
    cyclic_group,
    direct_product,
    from_cayley_table,
    from_permutation_generators,
    relabel_by_words,
)
from .presentation import Presentation, coset_action_to_group, todd_coxeter

_FACTOR = re.compile(r"^([ZDQ])(\d+)$")


def dihedral_presentation(n) -> Presentation:
    """<a, b | a^2, b^n, (ab)^2>, a group of order 2n."""
    return Presentation(2, ((1, 1), (2,) * n, (1, 2, 1, 2)))


def quaternion_presentation(n) -> Presentation:
    """<a, b | a^n = b^2 = (ab)^2>, a group of order 4n."""
    return Presentation(2, ((1,) * n + (-2, -2), (2, 2, -2, -1, -2, -1)))


def _from_presentation(P, label, limit=None):
    T = todd_coxeter(P, (), limit=limit)
    G, images = coset_action_to_group(T, P, label)
    return G, images


def dihedral_permutation_model(n, label=None) -> FiniteGroup:
    """Rotation and reflection of a regular n-gon (n >= 3), or the Klein group for n = 2."""
    if n == 2:
        return direct_product(cyclic_group(2), cyclic_group(2), label or "D4")
    rot = [(i + 1) % n for i in range(n)]
    ref = [(-i) % n for i in range(n)]
    return from_permutation_generators(n, [ref, rot], label or f"D{2 * n}")


def dihedral_group(n, *, limit=None, cross_check=True) -> FiniteGroup:
    """Dihedral group of order 2n from its presentation, checked against the n-gon model."""
    if n < 2:
        raise ParseError("dihedral groups need n >= 2 (order at least 4)")
    label = f"D{2 * n}"
    G, (a, b) = _from_presentation(dihedral_presentation(n), label, limit)
    if G.order != 2 * n:
        raise WedgedegError(f"presentation of {label} enumerated to order {G.order}")
    if cross_check and n >= 3:
        H = dihedral_permutation_model(n)
        # reflection generator is element 1 and rotation element 2 in BFS order
        if relabel_by_words(G, [a, b], H, [1, 2]) is None:
            raise WedgedegError(f"{label}: presentation and n-gon model disagree")
    G._cache["family"] = ("dihedral", n)
    return G


def quaternion_group(n, *, limit=None) -> FiniteGroup:
    """Generalized quaternion (dicyclic) group of order 4n."""
    if n < 1:
        raise ParseError("quaternion groups need n >= 1")
    label = f"Q{4 * n}"
    G, _ = _from_presentation(quaternion_presentation(n), label, limit)
    if G.order != 4 * n:
        raise WedgedegError(f"presentation of {label} enumerated to order {G.order}")
    G._cache["family"] = ("quaternion", n)
    return G


def symmetric_3():
    return from_permutation_generators(3, [[1, 0, 2], [1, 2, 0]], "S3")


def symmetric_4():
    return from_permutation_generators(4, [[1, 0, 2, 3], [1, 2, 3, 0]], "S4")


def alternating_4():
    return from_permutation_generators(4, [[1, 2, 0, 3], [0, 2, 3, 1]], "A4")


_NAMED = {"S3": symmetric_3, "S4": symmetric_4, "A4": alternating_4}


def load_group_file(path, label=None) -> FiniteGroup:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise ParseError(f"cannot read group file {path}: {e}") from e
    label = label or data.get("label") or str(path)
    kind = data.get("type")
    try:
        if kind == "cayley":
            return from_cayley_table(data["table"], label)
        if kind == "perm":
            return from_permutation_generators(int(data["degree"]), data["generators"], label)
        if kind == "presentation":
            P = Presentation.from_json(data)
            return _from_presentation(P, label)[0]
    except KeyError as e:
        raise ParseError(f"group file {path} is missing field {e}") from e
    raise ParseError(f"group file {path}: unknown type {kind!r}")


def _factor(text, limit=None) -> FiniteGroup:
    if text.startswith("@"):
        return load_group_file(text[1:])
    if text in _NAMED:
        return _NAMED[text]()
    m = _FACTOR.match(text)
    if not m:
        raise ParseError(f"unknown group {text!r}")
    kind, k = m.group(1), int(m.group(2))
    if kind == "Z":
        if k < 1:
            raise ParseError("cyclic groups need order >= 1")
        G = cyclic_group(k)
        G._cache["family"] = ("cyclic", k)
        return G
    if kind == "D":
        if k < 4 or k % 2:
            raise ParseError(f"D{k}: dihedral order must be even and at least 4")
        return dihedral_group(k // 2, limit=limit)
    if k < 4 or k % 4:
        raise ParseError(f"Q{k}: quaternion order must be a positive multiple of 4")
    return quaternion_group(k // 4, limit=limit)


def split_spec(text):
    text = text.strip()
    if not text:
        raise ParseError("empty group spec")
    if text.startswith("@"):
        return [text]
    parts = text.split("x")
    if any(not p for p in parts):
        raise ParseError(f"malformed product {text!r}")
    return parts


def parse_group_spec(text, *, limit=None) -> FiniteGroup:
    parts = split_spec(text)
    G = _factor(parts[0], limit)
    for p in parts[1:]:
        G = direct_product(G, _factor(p, limit))
    if len(parts) > 1:
        G.label = text.strip()
    return G


def parameter_n(G: FiniteGroup):
    fam = G._cache.get("family")
    return fam[1] if fam else None


def catalog_specs():
    """The standard catalog used by the verification suite."""
    out = [f"Z{k}" for k in range(2, 13)]
    out += ["Z2xZ2", "Z3xZ3"]
    out += [f"D{2 * n}" for n in range(2, 9)]
    out += [f"Q{4 * n}" for n in range(2, 7)]
    out += ["S3", "S4", "A4", "Z3xD8", "Z3xS3"]
    return out
