import random
from fractions import Fraction

import pytest

from halfcomm.errors import DegreeCapError
from halfcomm.fusion import (
    SU2Fusion,
    TorusFusion,
    UnFusion,
    astar_dual,
    astar_tensor,
    crossed_tensor,
    lr_tensor,
    moment_crosscheck,
    structure_maps,
    un_dim,
)
from halfcomm.scalars import GaussianRational
from halfcomm.verify import schur_tensor_oracle, _partitions_upto


# -- Littlewood-Richardson engine ---------------------------------------------


def test_lr_frozen_examples():
    assert lr_tensor((1, 0), (1, 0), 2) == {(2, 0): 1, (1, 1): 1}
    assert lr_tensor((1, 0), (0, -1), 2) == {(1, -1): 1, (0, 0): 1}
    assert lr_tensor((2, 1, 0), (0, 0, 0), 3) == {(2, 1, 0): 1}


def test_lr_known_su3_style_products():
    # adjoint times adjoint for three variables, shifted into partitions:
    # (1,0,-1) (x) (1,0,-1) = 1 + 2 adj + (2,0,-2) + (2,-1,-1) + (1,1,-2)
    dec = lr_tensor((1, 0, -1), (1, 0, -1), 3)
    assert dec == {
        (0, 0, 0): 1,
        (1, 0, -1): 2,
        (2, 0, -2): 1,
        (2, -1, -1): 1,
        (1, 1, -2): 1,
    }
    assert sum(m * un_dim(l, 3) for l, m in dec.items()) == 64


def test_lr_validation():
    with pytest.raises(ValueError):
        lr_tensor((0, 1), (1, 0), 2)  # not weakly decreasing
    with pytest.raises(ValueError):
        lr_tensor((1, 0, 0), (1, 0), 3)  # wrong length


@pytest.mark.parametrize("n", [2, 3])
def test_lr_against_schur_oracle(n):
    parts = _partitions_upto(3, n)
    for lam in parts:
        for mu in parts:
            assert lr_tensor(lam, mu, n) == schur_tensor_oracle(lam, mu, n), (lam, mu)


def test_lr_shift_invariance():
    # tensoring with the determinant power only shifts every constituent
    rng = random.Random(2)
    for _ in range(20):
        lam = tuple(sorted((rng.randint(-2, 2) for _ in range(3)), reverse=True))
        mu = tuple(sorted((rng.randint(-2, 2) for _ in range(3)), reverse=True))
        base = lr_tensor(lam, mu, 3)
        shifted = lr_tensor(tuple(x + 1 for x in lam), mu, 3)
        assert shifted == {tuple(x + 1 for x in nu): m for nu, m in base.items()}


def test_un_dim():
    assert un_dim((1, 0), 2) == 2
    assert un_dim((1, 1), 2) == 1
    assert un_dim((2, 0), 2) == 3
    assert un_dim((1, 0, 0), 3) == 3
    assert un_dim((1, 0, -1), 3) == 8
    assert un_dim((2, 1, 0), 3) == 8
    # dimension identity on a product
    dec = lr_tensor((1, 0), (1, 0), 2)
    assert sum(m * un_dim(l, 2) for l, m in dec.items()) == 4


# -- structure maps -------------------------------------------------------------


def test_structure_maps_un():
    data = UnFusion(2)
    dual, sigma, grade = structure_maps((1, 0), data)
    assert dual == (0, -1) and sigma == (0, -1) and grade == 1
    assert data.grade((1, 1)) == 2
    assert data.dual((2, -1)) == (1, -2)


def test_sigma_negates_integer_grade():
    rng = random.Random(9)
    for data in (UnFusion(2), UnFusion(3), TorusFusion(2)):
        for _ in range(20):
            if isinstance(data, UnFusion):
                a = tuple(sorted((rng.randint(-3, 3) for _ in range(data.n)), reverse=True))
            else:
                a = tuple(rng.randint(-3, 3) for _ in range(data.n))
            assert data.grade(data.sigma(a)) == -data.grade(a)
    s = SU2Fusion()
    for k in range(7):
        j = Fraction(k, 2)
        assert s.grade(s.sigma(j)) == s.grade(j)


def test_structure_maps_torus_su2():
    t = TorusFusion(1)
    assert structure_maps((3,), t) == ((-3,), (-3,), 3)
    s = SU2Fusion()
    j = Fraction(3, 2)
    assert structure_maps(j, s) == (j, j, 1)
    assert s.dim(j) == 4
    assert s.tensor(Fraction(1, 2), Fraction(1, 2)) == {Fraction(0): 1, Fraction(1): 1}


# -- crossed and graded tensor rules ---------------------------------------------


def test_crossed_tensor_rules():
    data = UnFusion(2)
    assert crossed_tensor(data, ((1, 1), 0), ((1, 0), 1)) == {((2, 1), 1): 1}
    assert crossed_tensor(data, ((1, 0), 1), ((1, 0), 1)) == {
        ((1, -1), 0): 1,
        ((0, 0), 0): 1,
    }
    assert crossed_tensor(data, ((0, 0), 1), ((0, 0), 1)) == {((0, 0), 0): 1}
    # twist hits the right factor exactly when the left flag is odd
    assert crossed_tensor(data, ((1, 0), 1), ((1, 1), 0)) == {((0, -1), 1): 1}
    assert crossed_tensor(data, ((1, 1), 0), ((1, 0), 0)) == {((2, 1), 0): 1}
    # unit laws
    for x in (((1, 0), 1), ((1, 1), 0)):
        assert crossed_tensor(data, ((0, 0), 0), x) == {x: 1}
        assert crossed_tensor(data, x, ((0, 0), 0)) == {x: 1}


def test_astar_tensor_parity_enforced():
    data = UnFusion(2)
    with pytest.raises(ValueError):
        astar_tensor(data, ((1, 0), 0), ((0, 0), 0))  # grade 1 with flag 0
    out = astar_tensor(data, ((1, 0), 1), ((1, 0), 1))
    assert out == {((1, -1), 0): 1, ((0, 0), 0): 1}
    for (lbl, parity) in out:
        assert data.grade(lbl) % 2 == parity


def test_astar_noncommutativity_witness():
    data = UnFusion(3)
    x = ((1, 0, 0), 1)
    y = ((1, 1, 0), 0)
    xy = astar_tensor(data, x, y)
    yx = astar_tensor(data, y, x)
    assert xy == {((1, -1, -1), 1): 1, ((0, 0, -1), 1): 1}
    assert yx == {((2, 1, 0), 1): 1, ((1, 1, 1), 1): 1}
    assert xy != yx


def test_astar_dual_examples():
    data = UnFusion(2)
    assert astar_dual(data, ((1, 0), 1)) == ((1, 0), 1)  # self-dual fundamental
    assert astar_dual(data, ((1, 1), 0)) == ((-1, -1), 0)
    rng = random.Random(4)
    for _ in range(20):
        w = tuple(sorted((rng.randint(-3, 3) for _ in range(2)), reverse=True))
        x = (w, data.grade(w) % 2)
        assert astar_dual(data, astar_dual(data, x)) == x
        assert crossed_tensor(data, x, astar_dual(data, x)).get(((0, 0), 0), 0) == 1


def test_grading_addition():
    data = UnFusion(2)
    rng = random.Random(6)
    for _ in range(30):
        a = tuple(sorted((rng.randint(-2, 2) for _ in range(2)), reverse=True))
        b = tuple(sorted((rng.randint(-2, 2) for _ in range(2)), reverse=True))
        fa, fb = data.grade(a) % 2, data.grade(b) % 2
        out = crossed_tensor(data, (a, fa), (b, fb))
        for (lbl, parity), _m in out.items():
            assert parity == (fa + fb) % 2
            if fa == 0:
                assert data.grade(lbl) == data.grade(a) + data.grade(b)
            elif fb == 1:
                assert data.grade(lbl) == data.grade(a) - data.grade(b)


# -- cross-validation against the exact Haar state --------------------------------


def test_moment_crosscheck_frozen():
    assert moment_crosscheck(2, 1) == (1, GaussianRational(1))
    assert moment_crosscheck(2, 2) == (2, GaussianRational(2))
    assert moment_crosscheck(3, 1) == (1, GaussianRational(1))


def test_moment_crosscheck_more():
    count, value = moment_crosscheck(3, 2)
    assert value == GaussianRational(count) == GaussianRational(2)


def test_moment_crosscheck_cap():
    with pytest.raises(DegreeCapError):
        moment_crosscheck(2, 6)
