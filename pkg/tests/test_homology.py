import random

import pytest

from wedgedeg.errors import GroupTooLarge
from wedgedeg.groups import abelianization_invariants
from wedgedeg.homology import (
    IntegerMatrix,
    bar_h1,
    bar_h2,
    boundary2,
    boundary3_transposed,
    normalize_invariants,
    smith_normal_form,
)
from wedgedeg.wedge import schur_multiplier

from conftest import ext, group


def test_identity():
    assert smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).invariant_factors == (1, 1, 1)


def test_two_by_two():
    snf = smith_normal_form([[2, 4], [6, 8]])
    assert snf.invariant_factors == (2, 4) and snf.rank == 2


def test_zero():
    snf = smith_normal_form([[0, 0], [0, 0]])
    assert snf.invariant_factors == () and snf.rank == 0


def test_divisibility_chain():
    snf = smith_normal_form([[6, 0, 0], [0, 10, 0], [0, 0, 15]])
    assert snf.invariant_factors == (1, 30, 30)


def test_big_entries():
    big = 10**30
    assert smith_normal_form([[big, 0], [0, big * 3]]).invariant_factors == (big, 3 * big)


def test_shuffle_invariance():
    rng = random.Random(7)
    A = [[rng.randint(-6, 6) for _ in range(6)] for _ in range(5)]
    base = smith_normal_form(A).invariant_factors
    for _ in range(10):
        rows = A[:]
        rng.shuffle(rows)
        perm = list(range(6))
        rng.shuffle(perm)
        B = [[r[j] for j in perm] for r in rows]
        assert smith_normal_form(B).invariant_factors == base


def test_matrix_storage():
    M = IntegerMatrix.from_dense([[1, 0], [0, 3]])
    assert M.to_dense() == [[1, 0], [0, 3]]
    assert M.transpose().to_dense() == [[1, 0], [0, 3]]
    with pytest.raises(ValueError):
        IntegerMatrix(2, 2, [{}])


def test_boundary_composition_is_zero():
    G = group("S3")
    d2 = boundary2(G).to_dense()
    d3t = boundary3_transposed(G)
    for row in d3t.rows_data[:200]:
        img = [sum(d2[i][j] * v for j, v in row.items()) for i in range(G.order)]
        assert not any(img)


@pytest.mark.parametrize("spec,h1", [("Z4", [4]), ("S3", [2]), ("D8", [2, 2]), ("A4", [3]),
                                     ("Z1", [])])
def test_h1(spec, h1):
    assert bar_h1(group(spec)) == h1


@pytest.mark.parametrize("spec,h2", [("Z5", []), ("Z6", []), ("Z2xZ2", [2]), ("D8", [2]),
                                     ("Q8", []), ("Z3xZ3", [3]), ("Z2xZ2xZ2", [2, 2, 2])])
def test_h2(spec, h2):
    assert bar_h2(group(spec)) == h2


def test_h1_matches_abelianization(small_spec):
    G = group(small_spec)
    assert bar_h1(G) == normalize_invariants(abelianization_invariants(G))


def test_h2_matches_multiplier(small_spec):
    G = group(small_spec)
    M = schur_multiplier(ext(small_spec))
    assert bar_h2(G) == normalize_invariants(M.abelian_invariants)


def test_cap():
    with pytest.raises(GroupTooLarge):
        bar_h2(group("Z25"))


def test_normalize():
    assert normalize_invariants([6, 4]) == [2, 12]
    assert normalize_invariants([1, 1]) == []
