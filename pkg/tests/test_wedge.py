import numpy as np
import pytest

from wedgedeg.errors import GroupTooLarge, WrongMode
from wedgedeg.groups import center, centralizer, derived_subgroup
from wedgedeg.presentation import todd_coxeter
from wedgedeg.wedge import (
    EXTERIOR,
    TENSOR,
    build_pair_presentation,
    exterior_center,
    exterior_centralizer,
    exterior_centralizers,
    is_capable,
    nabla_and_j2,
    schur_multiplier,
    tensor,
    wedge,
)

from conftest import ext, group, ten

# |G (x) G| for small groups, from the abelian formula and known values
TENSOR_ORDERS = {"Z1": 1, "Z2": 2, "Z3": 3, "Z4": 4, "Z2xZ2": 16, "S3": 6, "D8": 32, "Q8": 64,
                 "A4": 24}
MULTIPLIERS = {"Z1": [], "Z2": [], "Z4": [], "Z6": [], "Z2xZ2": [2], "Z3xZ3": [3], "S3": [],
               "D8": [2], "Q8": [], "D12": [2], "Q12": [], "A4": [2], "Z2xZ2xZ2": [2, 2, 2],
               "S4": [2], "Z3xS3": []}


def test_trivial_group():
    P = build_pair_presentation(group("Z1"))
    assert todd_coxeter(P).coset_count == 1


def test_z2_orders():
    assert ext("Z2").ambient_order == 4 and ext("Z2").pairing.order == 1
    assert ten("Z2").ambient_order == 8 and ten("Z2").pairing.order == 2


@pytest.mark.parametrize("spec", list(TENSOR_ORDERS))
def test_tensor_square_orders(spec):
    T = ten(spec)
    assert T.pairing.order == TENSOR_ORDERS[spec]
    assert T.ambient_order == group(spec).order ** 2 * T.pairing.order


@pytest.mark.parametrize("spec,order", [("Z5", 1), ("D8", 4), ("Z2xZ2", 2), ("Q8", 2), ("S3", 3)])
def test_exterior_square_orders(spec, order):
    assert ext(spec).pairing.order == order


@pytest.mark.parametrize("spec", list(MULTIPLIERS))
def test_multiplier(spec):
    M = schur_multiplier(ext(spec))
    assert sorted(M.abelian_invariants) == MULTIPLIERS[spec]
    assert M.multiplier_order * len(derived_subgroup(group(spec))) == ext(spec).pairing.order


def test_full_compatibility_same_group():
    from wedgedeg.wedge import exterior_square
    G = group("D8")
    a = exterior_square(G)
    b = exterior_square(G, full_compatibility=True)
    assert a.ambient_order == b.ambient_order
    assert np.array_equal(a.symbol == 0, b.symbol == 0)


def test_felsch_same_group():
    from wedgedeg.wedge import exterior_square
    G = group("Q8")
    assert exterior_square(G, strategy="felsch").ambient_order == ext("Q8").ambient_order


def test_size_cap():
    with pytest.raises(GroupTooLarge):
        build_pair_presentation(group("Z40"))


def test_wrong_mode():
    with pytest.raises(WrongMode):
        wedge(ten("Z2"), 0, 1)
    with pytest.raises(WrongMode):
        tensor(ext("Z2"), 0, 1)
    with pytest.raises(WrongMode):
        schur_multiplier(ten("Z2"))
    with pytest.raises(WrongMode):
        nabla_and_j2(ext("Z2"))


def test_wedge_basics(small_spec):
    S = ext(small_spec)
    G = group(small_spec)
    W = S.pairing
    for x in range(G.order):
        assert wedge(S, x, x) == 0
        for y in range(G.order):
            assert wedge(S, y, x) == W.inv(wedge(S, x, y))
            # projecting x ^ y to G gives the commutator
            assert S.commutator_map[wedge(S, x, y)] == G.commutator(x, y)


def test_pairing_generated_by_symbols(small_spec):
    S = ext(small_spec)
    assert set(np.unique(S.symbol).tolist()) | {0} <= set(range(S.pairing.order))
    from wedgedeg.groups import subgroup_generated
    assert len(subgroup_generated(S.pairing, np.unique(S.symbol).tolist())) == S.pairing.order


def test_klein_pairing_onto():
    S = ext("Z2xZ2")
    assert wedge(S, 1, 2) != 0


def test_q8_wedge_iff_commute():
    S, G = ext("Q8"), group("Q8")
    for x in range(8):
        for y in range(8):
            assert (wedge(S, x, y) == 0) == (G.mul(x, y) == G.mul(y, x))


def test_d8_rotation_exterior_centralizer():
    G, S = group("D8"), ext("D8")
    rot = [x for x in range(8) if G.element_order(x) == 4]
    b = rot[0]
    C = exterior_centralizer(S, b)
    assert len(C) == 4 and set(C) == {0, b, G.mul(b, b), rot[1]}
    assert exterior_centralizer(S, 0) == G.full_set()


@pytest.mark.parametrize("n", range(2, 9))
def test_dihedral_rotation_centralizers(n):
    # for b^i != 1 the exterior centralizer is <b>
    G, S = group(f"D{2 * n}"), ext(f"D{2 * n}")
    b = next(x for x in range(G.order) if G.element_order(x) == n)
    cyc = {G.power(b, i) for i in range(n)}
    for x in cyc - {0}:
        assert set(exterior_centralizer(S, x)) == cyc
    assert exterior_center(S).is_trivial()


def test_centralizers_contained(small_spec):
    G, S = group(small_spec), ext(small_spec)
    for x in range(G.order):
        assert exterior_centralizer(S, x) <= centralizer(G, x)
    assert exterior_center(S) <= center(G)


def test_centralizers_conjugate(small_spec):
    G, S = group(small_spec), ext(small_spec)
    Cs = exterior_centralizers(S)
    for x in range(G.order):
        assert Cs[x] == exterior_centralizer(S, x)
        for g in range(G.order):
            assert Cs[G.conj(g, x)] == Cs[x].conjugate(g)


def test_trivial_multiplier_means_equal_centralizers(small_spec):
    G, S = group(small_spec), ext(small_spec)
    if schur_multiplier(S).multiplier_order == 1:
        for x in range(G.order):
            assert exterior_centralizer(S, x) == centralizer(G, x)


@pytest.mark.parametrize("spec,capable", [("D8", True), ("Q8", False), ("Z4", False),
                                          ("Z2xZ2", True), ("S3", True), ("A4", True)])
def test_capability(spec, capable):
    assert is_capable(ext(spec)) is capable


def test_q8_exterior_center():
    assert len(exterior_center(ext("Q8"))) == 2


@pytest.mark.parametrize("spec", ["Z1", "Z2", "Z2xZ2", "S3", "D8", "Q8", "A4"])
def test_nabla_j2(spec):
    T = ten(spec)
    nabla, j2 = nabla_and_j2(T)
    M = schur_multiplier(ext(spec))
    assert len(j2) == len(nabla) * M.multiplier_order
    if spec == "Z2":
        assert len(nabla) == 2 and len(j2) == 2
    if spec == "Z1":
        assert len(nabla) == 1 and len(j2) == 1


def test_modes():
    assert ext("S3").mode == EXTERIOR and ten("S3").mode == TENSOR
