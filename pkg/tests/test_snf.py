"""Smith normal form and abelian-group invariants, against independent
rational-arithmetic oracles."""

import random

import pytest

from curvelift import (
    AbelianGroup,
    BundleFit,
    diagonal,
    filling_quotient,
    genus_from_filling_h1,
    smith_normal_form,
)
from curvelift.snf import identity_matrix, mat_mul

from helpers import det_fraction, random_matrix


def check_snf(m):
    d, u, v = smith_normal_form(m)
    assert mat_mul(mat_mul(u, m), v) == d
    assert abs(det_fraction(u)) == 1
    assert abs(det_fraction(v)) == 1
    diag = diagonal(d)
    for i, row in enumerate(d):
        for j, x in enumerate(row):
            if i != j:
                assert x == 0
    assert all(x >= 0 for x in diag)
    nonzero = [x for x in diag if x]
    assert nonzero == diag[: len(nonzero)]  # zeros trail
    for a, b in zip(nonzero, nonzero[1:]):
        assert b % a == 0
    return diag


def test_snf_hand_cases():
    assert check_snf([[2, 0], [0, 3]]) == [1, 6]
    assert check_snf([[0]]) == [0]
    assert check_snf([[4]]) == [4]
    assert check_snf([[-7]]) == [7]
    assert check_snf([[2, 4], [4, 8]]) == [2, 0]
    assert check_snf([[1, 2, 3]]) == [1]
    assert check_snf([[6], [10]]) == [2]


def test_snf_negative_pivot_normalized():
    d, _, _ = smith_normal_form([[-5, 0], [0, -3]])
    assert diagonal(d) == [1, 15]


def test_snf_random_small():
    rng = random.Random(7)
    for _ in range(200):
        check_snf(random_matrix(rng, max_dim=5, lo=-9, hi=9))


def test_identity_and_mat_mul():
    assert identity_matrix(2) == [[1, 0], [0, 1]]
    assert mat_mul([[1, 2]], [[3], [4]]) == [[11]]


def test_abelian_group_validation():
    AbelianGroup(0, (2, 4))
    with pytest.raises(ValueError):
        AbelianGroup(1, (4, 2))  # chain violated
    with pytest.raises(ValueError):
        AbelianGroup(1, (1,))
    with pytest.raises(ValueError):
        AbelianGroup(-1)


def test_from_relation_matrix():
    # Z^3 / <(2,0,0), (0,3,0)> = Z/2 + Z/3 + Z = Z + Z/6
    g = AbelianGroup.from_relation_matrix([[2, 0, 0], [0, 3, 0]], 3)
    assert g == AbelianGroup(1, (6,))
    assert AbelianGroup.from_relation_matrix([], 4) == AbelianGroup(4)
    assert str(g) == "Z + Z/6"
    assert g.to_json() == {"rank": 1, "torsion": [6]}


def test_presentation_matrix_round_trip():
    for g in (AbelianGroup(3), AbelianGroup(2, (2, 6)), AbelianGroup(0, (5,))):
        rows, n = g.presentation_matrix()
        assert AbelianGroup.from_relation_matrix(rows, n) == g


def test_filling_quotient():
    # Z^2, kill (2, 0): leaves Z + Z/2
    assert filling_quotient([], 2, [2, 0]) == AbelianGroup(1, (2,))
    with pytest.raises(ValueError):
        filling_quotient([], 2, [1, 2, 3])


def test_filling_quotient_merges_torsion():
    # Z + Z/2 presented on (free, torsion) coordinates; kill the free part
    rows, n = AbelianGroup(1, (2,)).presentation_matrix()
    assert filling_quotient(rows, n, [3, 0]) == AbelianGroup(0, (6,))


def test_genus_from_filling_h1_closed():
    assert genus_from_filling_h1(AbelianGroup(4, (2,)), 0) == BundleFit(2, (2, -2))
    assert genus_from_filling_h1(AbelianGroup(5), 0) == BundleFit(2, (0,))
    assert genus_from_filling_h1(AbelianGroup(4), 0) == BundleFit(2, (1, -1))
    assert genus_from_filling_h1(AbelianGroup(3, (2,)), 0) is None
    assert genus_from_filling_h1(AbelianGroup(2, (2, 4)), 0) is None


def test_genus_from_filling_h1_bounded():
    assert genus_from_filling_h1(AbelianGroup(7), 3) == BundleFit(2, (0,))
    assert genus_from_filling_h1(AbelianGroup(6), 3) is None  # odd 2g
    assert genus_from_filling_h1(AbelianGroup(7, (2,)), 3) is None
