import itertools
import random
from fractions import Fraction

import pytest

from wedgedeg.degrees import (
    COMMUTING,
    WEDGE_TRIVIAL,
    DegreeProfile,
    brute_force_degree,
    commutativity_degree_n,
    dihedral_closed_form,
    exterior_degree_n,
    quaternion_closed_form,
    relation_graph,
    tuple_count,
    unidegree_flags,
    verify_bounds,
    verify_coprime_multiplicativity,
    verify_quotient_monotonicity,
)
from wedgedeg.errors import MissingExteriorStructure, NotCoprime, NotNormal, TooLarge
from wedgedeg.groups import center, conjugacy_classes, subgroup_generated
from wedgedeg.wedge import wedge

from conftest import ext, group, ten


def loop_count(G, n, related):
    """Plain (n+1)-fold loop, independent of every library counting path."""
    hits = 0
    for t in itertools.product(range(G.order), repeat=n + 1):
        if all(related(t[i], t[j]) for i in range(n + 1) for j in range(i + 1, n + 1)):
            hits += 1
    return Fraction(hits, G.order ** (n + 1))


def test_tuple_count_examples():
    S3 = group("S3")
    full = (1 << 6) - 1
    assert tuple_count(relation_graph(S3), full, 1) == 18
    assert tuple_count(relation_graph(S3), full, 0) == 6
    R = relation_graph(group("D8"), WEDGE_TRIVIAL, ext("D8"))
    assert tuple_count(R, (1 << 8) - 1, 2) == 92


def test_graph_shapes():
    A = group("Z2xZ2")
    assert all(r == 15 for r in relation_graph(A).rows)
    Z = group("Z6")
    assert all(r == 63 for r in relation_graph(Z, WEDGE_TRIVIAL, ext("Z6")).rows)
    D8 = group("D8")
    b = next(x for x in range(8) if D8.element_order(x) == 4)
    assert relation_graph(D8, WEDGE_TRIVIAL, ext("D8")).rows[b].bit_count() == 4


def test_graph_reflexive_symmetric(small_spec):
    G = group(small_spec)
    for kind in (COMMUTING, WEDGE_TRIVIAL):
        R = relation_graph(G, kind, ext(small_spec))
        assert R.rows[0] == (1 << G.order) - 1
        for x in range(G.order):
            assert R.related(x, x)
            for y in range(G.order):
                assert R.related(x, y) == R.related(y, x)


def test_wedge_graph_needs_exterior():
    with pytest.raises(MissingExteriorStructure):
        relation_graph(group("S3"), WEDGE_TRIVIAL)
    with pytest.raises(MissingExteriorStructure):
        relation_graph(group("S3"), WEDGE_TRIVIAL, ten("S3"))
    with pytest.raises(MissingExteriorStructure):
        brute_force_degree(group("S3"), 1, WEDGE_TRIVIAL)


def test_spot_values():
    assert commutativity_degree_n(group("D8"), 1) == Fraction(5, 8)
    assert commutativity_degree_n(group("D8"), 2) == Fraction(11, 32)
    assert commutativity_degree_n(group("S3"), 2) == Fraction(2, 9)
    assert exterior_degree_n(group("D8"), ext("D8"), 1) == Fraction(7, 16)
    assert exterior_degree_n(group("Q8"), ext("Q8"), 2) == Fraction(11, 32)


def test_degenerate_values(small_spec):
    G, S = group(small_spec), ext(small_spec)
    assert commutativity_degree_n(G, 0) == 1 and exterior_degree_n(G, S, 0) == 1
    for n in (1, 2, 3):
        assert (commutativity_degree_n(G, n) == 1) == G.is_abelian
        assert (exterior_degree_n(G, S, n) == 1) == G.is_cyclic


@pytest.mark.parametrize("spec", ["S3", "D8", "Q8", "Z2xZ2", "A4"])
@pytest.mark.parametrize("n", [1, 2])
def test_against_plain_loops(spec, n):
    G, S = group(spec), ext(spec)
    d = loop_count(G, n, lambda x, y: G.mul(x, y) == G.mul(y, x))
    D = loop_count(G, n, lambda x, y: wedge(S, x, y) == 0)
    assert commutativity_degree_n(G, n) == d == brute_force_degree(G, n, COMMUTING)
    assert exterior_degree_n(G, S, n) == D == brute_force_degree(G, n, WEDGE_TRIVIAL, S)


def test_brute_force_cap():
    with pytest.raises(TooLarge):
        brute_force_degree(group("S4"), 5)
    assert brute_force_degree(group("Z2xZ2"), 1) == 1


def test_class_reduction_consistent(small_spec):
    G, S = group(small_spec), ext(small_spec)
    for n in (1, 2, 3):
        assert commutativity_degree_n(G, n) == commutativity_degree_n(G, n, use_classes=False)
        assert exterior_degree_n(G, S, n) == exterior_degree_n(G, S, n, use_classes=False)


def test_representative_order_irrelevant():
    G, S = group("D12"), ext("D12")
    k = len(conjugacy_classes(G))
    rng = random.Random(3)
    for _ in range(5):
        order = list(range(k))
        rng.shuffle(order)
        assert exterior_degree_n(G, S, 3, rep_order=order) == exterior_degree_n(G, S, 3)
        assert commutativity_degree_n(G, 3, rep_order=order) == commutativity_degree_n(G, 3)


def test_results_are_fractions():
    v = exterior_degree_n(group("D8"), ext("D8"), 2)
    assert type(v) is Fraction


def test_negative_n():
    with pytest.raises(ValueError):
        commutativity_degree_n(group("S3"), -1)


def test_closed_forms():
    assert dihedral_closed_form(4, 1) == Fraction(7, 16)
    assert quaternion_closed_form(2, 1) == Fraction(5, 8)
    assert quaternion_closed_form(1, 1) == 1
    with pytest.raises(ValueError):
        dihedral_closed_form(1, 1)
    with pytest.raises(ValueError):
        quaternion_closed_form(1, 0)


def _entry(report, theorem):
    (e,) = report.find(theorem)
    return e


def test_noncyclic_bound_examples():
    e = _entry(verify_bounds(group("D8"), ext("D8"), 1), "D_n.noncyclic_bound")
    assert (e.lhs, e.rhs, e.holds, e.equality) == (Fraction(7, 16), Fraction(5, 8), True, False)
    e = _entry(verify_bounds(group("Z2xZ2"), ext("Z2xZ2"), 1), "D_n.noncyclic_bound")
    assert (e.lhs, e.rhs, e.equality, e.equality_condition_met) == \
        (Fraction(5, 8), Fraction(5, 8), True, True)


def test_proper_exterior_center_bound_not_applicable_for_q8():
    e = _entry(verify_bounds(group("Q8"), ext("Q8"), 1), "D_n.proper_exterior_center_bound")
    assert e.applicable is False and e.ok


def test_inapplicable_entries_kept():
    rep = verify_bounds(group("Z5"), ext("Z5"), 2)
    names = {e.theorem for e in rep.entries}
    assert "d_n.nonabelian_bound" in names
    assert not _entry(rep, "d_n.nonabelian_bound").applicable


def test_trivial_group_report():
    rep = verify_bounds(group("Z1"), ext("Z1"), 1)
    assert rep.ok


def test_report_json():
    rep = verify_bounds(group("D8"), ext("D8"), 1)
    js = rep.to_json()
    e = next(x for x in js if x["theorem"] == "D_n.noncyclic_bound")
    assert e["lhs"] == "7/16" and e["rhs"] == "5/8" and e["ok"] is True


def test_bounds_hold_small(small_spec):
    G, S = group(small_spec), ext(small_spec)
    P = DegreeProfile(G, S)
    for n in (1, 2, 3, 4):
        rep = verify_bounds(G, S, n, profile=P)
        assert rep.ok, rep.failures()


def test_quotient_examples():
    D8 = group("D8")
    (r,) = verify_quotient_monotonicity(D8, center(D8), ns=(1,))
    assert (r.degree, r.quotient_degree, r.holds) == (Fraction(5, 8), Fraction(1), True)
    G = group("Z3xS3")
    N = subgroup_generated(G, [6])  # (1, 0): generates Z3 x 1
    assert len(N) == 3
    for r in verify_quotient_monotonicity(G, N):
        assert r.equality_expected and r.holds
        assert r.degree == commutativity_degree_n(group("S3"), r.n)
    for r in verify_quotient_monotonicity(D8, D8.trivial_set()):
        assert r.degree == r.quotient_degree


def test_quotient_requires_normal():
    S3 = group("S3")
    with pytest.raises(NotNormal):
        verify_quotient_monotonicity(S3, subgroup_generated(S3, [1]))


def test_coprime_products():
    r = verify_coprime_multiplicativity(group("Z2"), group("Z3"), 1)
    assert r.holds and r.lhs == 1
    r = verify_coprime_multiplicativity(group("S3"), group("Z5"), 1)
    assert r.holds and r.lhs == Fraction(1, 2)
    with pytest.raises(NotCoprime):
        verify_coprime_multiplicativity(group("Z2"), group("Z4"), 1)


def test_unidegree_flags():
    f = unidegree_flags(group("Q8"), ext("Q8"), 3)
    assert (f.is_unicentral, f.is_unidegree, f.is_multiple_unidegree) == (True, True, True)
    f = unidegree_flags(group("D8"), ext("D8"), 3)
    assert (f.is_unicentral, f.is_unidegree, f.is_multiple_unidegree) == (False, False, False)
    f = unidegree_flags(group("Z7"), ext("Z7"), 3)
    assert (f.is_unicentral, f.is_unidegree, f.is_multiple_unidegree) == (True, True, True)
    with pytest.raises(ValueError):
        unidegree_flags(group("Z7"), ext("Z7"), 0)


# values frozen from the brute-force loops and closed forms
FROZEN = {
    "A4": ("7/24", "7/96", "61/3456"),
    "D12": ("3/8", "43/288", "77/1152"),
    "Z3xZ3": ("11/27", "35/243", "107/2187"),
    "S4": ("1/6", "7/288", "49/13824"),
}


@pytest.mark.parametrize("spec", list(FROZEN))
def test_frozen_exterior_degrees(spec):
    G, S = group(spec), ext(spec)
    got = tuple(str(exterior_degree_n(G, S, n)) for n in (1, 2, 3))
    assert got == FROZEN[spec]
