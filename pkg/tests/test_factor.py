import itertools

import numpy as np
import pytest

from sympgrade.errors import IncompatiblePairs, NotIsometry, NotUnimodular
from sympgrade.factor import (
    SL2Word,
    conjugate_to_multiple_of_u1,
    det,
    factor_isometry,
    factor_stages,
    mat_mul,
    reduce_to_u1,
    sl2_factor,
    sl2_lift,
    swap_word,
)
from sympgrade.isom import (
    Isometry,
    compose,
    from_images,
    identity,
    permutation,
    random_word,
)
from sympgrade.sympcore import HyperbolicPair, SubgroupView, element_order, make_shape, orthocomplement

A = ((1, -1), (0, 1))
B = ((1, 0), (1, 1))


def mod(m, n):
    return tuple(tuple(x % n for x in row) for row in m)


def sl2(n):
    r = range(n)
    return [((a, b), (c, d)) for a, b, c, d in itertools.product(r, r, r, r) if (a * d - b * c) % n == 1 % n]


def test_sl2_lift_examples():
    assert sl2_lift(5, ((1, 0), (0, 1))) == ((1, 0), (0, 1))
    lift = sl2_lift(2, ((1, 1), (1, 0)))
    assert det(lift) == 1 and mod(lift, 2) == ((1, 1), (1, 0))
    assert sl2_lift(4, ((1, 2), (0, 1))) == ((1, 2), (0, 1))
    with pytest.raises(NotUnimodular):
        sl2_lift(4, ((2, 0), (0, 1)))


def test_sl2_factor_examples():
    assert len(sl2_factor(7, ((1, 0), (0, 1)))) == 0
    assert sl2_factor(7, A).items == (("A", 1),)
    w = sl2_factor(5, ((2, 1), (3, 2)))
    assert w.matrix(5) == ((2, 1), (3, 2))


@pytest.mark.parametrize("n", range(2, 7))
def test_sl2_factor_exhaustive(n):
    group = sl2(n)
    for C in group:
        assert sl2_factor(n, C).matrix(n) == C
        assert sl2_factor(n, C, shortest=True).matrix(n) == C


def test_sl2_factor_random_large():
    rng = np.random.default_rng(0)
    for _ in range(10_000):
        n = int(rng.integers(2, 25))
        C = ((1, 0), (0, 1))
        for g in rng.integers(2, size=8):
            C = mat_mul(C, A if g else B, n)
        C = mat_mul(C, ((int(rng.integers(n)), 1), (-1, 0)), n)  # J-like twist, det 1
        assert sl2_factor(n, C).matrix(n) == C


def test_minus_identity_word():
    w = SL2Word((("A", 1), ("B", 1), ("A", 1)) * 2)
    assert w.matrix() == ((-1, 0), (0, -1))


def test_conjugate_examples():
    assert conjugate_to_multiple_of_u1(5, (1, 0)) == (((1, 0), (0, 1)), 1)
    m, l = conjugate_to_multiple_of_u1(4, (2, 2))
    assert l == 2 and mod(mat_mul(m, ((2, 0), (2, 0))), 4)[0] == (2, 0)
    assert mod(mat_mul(m, ((2, 0), (2, 0))), 4)[1] == (0, 0)
    m, l = conjugate_to_multiple_of_u1(6, (5, 3))
    assert l == 1
    col = mod(mat_mul(m, ((5, 0), (3, 0))), 6)
    assert (col[0][0], col[1][0]) == (1, 0)
    assert det(m) % 6 == 1


@pytest.mark.parametrize("n", [2, 3, 4, 6, 8, 12])
def test_conjugate_all(n):
    for i, j in itertools.product(range(n), repeat=2):
        m, l = conjugate_to_multiple_of_u1(n, (i, j))
        col = mod(mat_mul(m, ((i, 0), (j, 0))), n)
        assert (col[0][0], col[1][0]) == (l, 0)
        assert det(m) % n == 1 % n


@pytest.mark.parametrize("moduli", [[2, 2], [3, 3], [4, 4, 2], [6, 6]])
def test_swap_word(moduli):
    s = make_shape(moduli)
    p1, p2 = HyperbolicPair(s.u(0), s.v(0)), HyperbolicPair(s.u(1), s.v(1))
    w = swap_word(p1, p2)
    assert w(s.u(0)) == s.u(1) and w(s.v(0)) == s.v(1)
    assert w(s.u(1)) == s.u(0) and w(s.v(1)) == s.v(0)
    rest = orthocomplement(SubgroupView(s, [s.u(0), s.v(0), s.u(1), s.v(1)]))
    assert all(w(c) == c for c in rest.elements)


def test_swap_word_all_16():
    s = make_shape([2, 2])
    w = swap_word(HyperbolicPair(s.u(0), s.v(0)), HyperbolicPair(s.u(1), s.v(1)))
    for a in s.elements():
        u1, v1, u2, v2 = a.coords
        assert w(a) == s.element((u2, v2, u1, v1))


def test_swap_word_incompatible():
    s = make_shape([2, 2])
    p = HyperbolicPair(s.u(0), s.v(0))
    with pytest.raises(IncompatiblePairs):
        swap_word(p, p)
    t = make_shape([4, 2])
    with pytest.raises(IncompatiblePairs):
        swap_word(HyperbolicPair(t.u(0), t.v(0)), HyperbolicPair(t.u(1), t.v(1)))


def test_reduce_to_u1_examples():
    s = make_shape([2, 2])
    assert len(reduce_to_u1(s.u(0))) == 0
    assert reduce_to_u1(s.u(1))(s.u(1)) == s.u(0)
    t = make_shape([4, 2])
    a = t.u(0) + t.v(0) + t.u(1)
    assert element_order(a) == 4
    assert reduce_to_u1(a)(a) == t.u(0)


@pytest.mark.parametrize("moduli", [[4], [6], [2, 2], [4, 2], [6, 2], [6, 3], [6, 6], [12, 6, 2], [2, 2, 2]])
def test_reduce_to_u1_all_maximal(moduli):
    s = make_shape(moduli)
    for a in s.elements():
        if element_order(a) == s.exponent:
            assert reduce_to_u1(a)(a) == s.u(0)


def test_factor_examples():
    s = make_shape([2, 2])
    assert len(factor_isometry(identity(s))) == 0
    swap = from_images([s.u(1), s.v(1), s.u(0), s.v(0)])
    w = factor_isometry(swap)
    for a in s.elements():
        assert w(a) == swap(a)


def test_factor_rejects_non_isometry():
    s = make_shape([3])
    with pytest.raises(NotIsometry):
        factor_isometry(Isometry(s, ((1, 0), (0, 2))))


@pytest.mark.parametrize("moduli", [[2], [3], [4], [6], [2, 2], [3, 3], [4, 2], [6, 3]])
def test_factor_round_trip(moduli):
    s = make_shape(moduli)
    rng = np.random.default_rng(7)
    for _ in range(150):
        M = random_word(s, int(rng.integers(0, 31)), rng).to_isometry()
        w = factor_isometry(M)
        assert np.array_equal(permutation(w.to_isometry()), permutation(M))


@pytest.mark.parametrize("moduli", [[4, 2], [6, 3], [12, 6, 2]])
def test_stages_fix_u1(moduli):
    """After each full stage of factor t, the partial product fixes u_1..u_t, v_1..v_t."""
    s = make_shape(moduli)
    rng = np.random.default_rng(3)
    for _ in range(30):
        M = random_word(s, 25, rng).to_isometry()
        sigma = M
        for name, w in factor_stages(M):
            sigma = compose(w.to_isometry(), sigma) if len(w) else sigma
            t = int(name.split("[")[1][:-1])
            if name.startswith("reduce"):
                assert sigma(s.u(t)) == s.u(t)
            if name.startswith("block"):
                assert sigma(s.u(t)) == s.u(t) and sigma(s.v(t)) == s.v(t)
                for i in range(t):
                    assert sigma(s.u(i)) == s.u(i) and sigma(s.v(i)) == s.v(i)
        assert sigma == identity(s)
