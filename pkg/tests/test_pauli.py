import cmath

import numpy as np
import pytest

from sympgrade.errors import RootOrderIncompatible
from sympgrade.pauli import (
    MonomialMatrix,
    commutator_exponent,
    k_lift,
    mono_from_json,
    mono_identity,
    mono_inv,
    mono_mul,
    mono_pow,
    mono_tensor,
    mono_trace,
    mono_trace_is_zero,
    pauli_p,
    pauli_q,
    ratio_exponent,
)
from sympgrade.sympcore import make_shape, pair, shapes_of


def w(n):
    return cmath.exp(2j * cmath.pi / n)


def dense_p(n):
    # displayed cyclic shift: row i has its 1 in column i + 1
    out = np.zeros((n, n), dtype=complex)
    for i in range(n):
        out[i, (i + 1) % n] = 1
    return out


def dense_q(n):
    return np.diag([w(n) ** c for c in range(n)])


@pytest.mark.parametrize("n", range(2, 8))
def test_generators_match_dense(n):
    assert np.allclose(pauli_p(n).to_dense(), dense_p(n))
    assert np.allclose(pauli_q(n).to_dense(), dense_q(n))
    assert mono_pow(pauli_p(n), n) == mono_identity(n, n)
    assert mono_inv(pauli_p(n)) == mono_pow(pauli_p(n), n - 1)


def test_two_by_two():
    assert np.allclose(pauli_q(2).to_dense(), np.diag([1, -1]))
    assert np.allclose(pauli_p(2).to_dense(), [[0, 1], [1, 0]])
    qq = mono_tensor(pauli_q(2), pauli_q(2))
    assert np.allclose(qq.to_dense(), np.diag([1, -1, -1, 1]))


@pytest.mark.parametrize("n", range(2, 9))
def test_weyl_relation(n):
    P, Q = pauli_p(n), pauli_q(n)
    assert ratio_exponent(mono_mul(P, Q), mono_mul(Q, P)) == 1
    assert np.allclose(dense_p(n) @ dense_q(n), w(n) * dense_q(n) @ dense_p(n))


def test_mul_and_tensor_match_dense():
    rng = np.random.default_rng(0)
    for _ in range(30):
        n = int(rng.integers(2, 6))
        a = MonomialMatrix(n, 12, tuple(rng.permutation(n)), tuple(rng.integers(12, size=n)))
        b = MonomialMatrix(n, 12, tuple(rng.permutation(n)), tuple(rng.integers(12, size=n)))
        assert np.allclose(mono_mul(a, b).to_dense(), a.to_dense() @ b.to_dense())
        assert np.allclose(mono_inv(a).to_dense(), np.linalg.inv(a.to_dense()))
        assert np.allclose(mono_tensor(a, b).to_dense(), np.kron(a.to_dense(), b.to_dense()))


def test_root_order_embedding():
    a = pauli_q(2)
    assert mono_mul(a, pauli_p(2, 4)).N == 4
    with pytest.raises(RootOrderIncompatible):
        pauli_q(3).with_root_order(4)


def test_json_round_trip():
    m = k_lift(make_shape([6, 3]).element((1, 2, 2, 1)))
    assert mono_from_json(m.to_json()) == m


def test_trace_examples():
    assert mono_trace_is_zero(mono_mul(pauli_q(3), pauli_p(3)))
    t = mono_trace(pauli_q(3))
    assert t.is_zero and t.exact
    t = mono_trace(mono_identity(5))
    assert not t.is_zero and t.value == 5


def test_trace_numeric_fallback():
    m = MonomialMatrix(3, 6, (0, 1, 2), (0, 1, 3))  # 1 + w6 + w6^3
    t = mono_trace(m)
    assert not t.exact
    assert abs(t.value - np.trace(m.to_dense())) < 1e-12


def test_k_lift_examples():
    s2 = make_shape([2])
    assert k_lift(s2.zero) == mono_identity(2, 2)
    assert k_lift(s2.element((1, 0))) == pauli_p(2)
    s22 = make_shape([2, 2])
    lift = k_lift(s22.element((1, 0, 0, 1)))
    assert np.allclose(lift.to_dense(), np.kron(dense_p(2), dense_q(2)))


def test_commutator_examples():
    for n in range(2, 7):
        s = make_shape([n])
        assert commutator_exponent(s.u(0), s.v(0)) == 1
        assert commutator_exponent(s.u(0), s.u(0)) == 0
    s = make_shape([4, 2])
    assert commutator_exponent(s.u(0), s.v(1)) == 0
    assert commutator_exponent(s.u(1), s.v(0)) == 0


@pytest.mark.parametrize("shape", [s for n in range(2, 9) for s in shapes_of(n)], ids=str)
def test_commutator_dense(shape):
    """The exact commutator agrees with dense complex arithmetic on random pairs."""
    rng = np.random.default_rng(1)
    els = list(shape.elements())
    l1 = shape.exponent
    for _ in range(20):
        s, t = (els[int(i)] for i in rng.integers(len(els), size=2))
        S, T = k_lift(s).to_dense(), k_lift(t).to_dense()
        C = S @ T @ np.linalg.inv(S) @ np.linalg.inv(T)
        e = commutator_exponent(s, t)
        assert np.allclose(C, w(l1) ** e * np.eye(shape.dim))
        assert e == pair(s, t)


@pytest.mark.parametrize("shape", [s for n in range(2, 13) for s in shapes_of(n)], ids=str)
def test_k_size_and_projective_order(shape):
    assert shape.order == shape.dim ** 2
    for s in list(shape.elements())[:: max(1, shape.order // 40)]:
        assert mono_pow(k_lift(s), shape.exponent).scalar() is not None
