"""The fine grading of gl(n, C) and sl(n, C) by a finite Pauli subgroup K.

A root label with coords (a_1, b_1, ..., a_k, b_k) is the character
sum_t a_t beta_{l_t} + b_t alpha_{l_t} of K, where beta(Ad P) = w, beta(Ad Q) = 1,
alpha(Ad P) = 1, alpha(Ad Q) = w.  Its root space is spanned by

    Y_gamma = (x)_t Q_{l_t}^{a_t} P_{l_t}^{-b_t}.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import EigenMismatch, ShapeMismatch, StarMismatch
from .pauli import (
    MonomialMatrix,
    ProjectivePauli,
    Trace,
    commutator_exponent,
    k_generators,
    k_lift,
    mono_identity,
    mono_inv,
    mono_mul,
    mono_pow,
    mono_trace,
    pauli_p,
    pauli_q,
    ratio_exponent,
    tensor_all,
)
from .sympcore import GroupElement, Shape

RootLabel = GroupElement


def _same(x: GroupElement, y: GroupElement):
    if x.shape != y.shape:
        raise ShapeMismatch("labels of different shapes")


@lru_cache(maxsize=None)
def _factor_qp(l: int, N: int, a: int, b: int) -> MonomialMatrix:
    return mono_mul(mono_pow(pauli_q(l, N), a), mono_pow(pauli_p(l, N), -b))


@lru_cache(maxsize=None)
def label_to_matrix(gamma: RootLabel) -> MonomialMatrix:
    shape = gamma.shape
    N = shape.exponent
    return tensor_all([_factor_qp(l, N, *gamma.component(t)) for t, l in enumerate(shape.moduli)])


def character_exponent(gamma: RootLabel, sigma: ProjectivePauli) -> int:
    """e with gamma(sigma) = omega_{l1}^e."""
    _same(gamma, sigma)
    shape = gamma.shape
    l1 = shape.exponent
    e = 0
    for t, l in enumerate(shape.moduli):
        a, b = gamma.component(t)
        i, j = sigma.component(t)
        e += (l1 // l) * (a * i + b * j)
    return e % l1


def eigen_check(sigma: ProjectivePauli, gamma: RootLabel) -> int:
    """Verify S Y_gamma S^-1 = gamma(sigma) Y_gamma and return the exponent."""
    _same(gamma, sigma)
    s = k_lift(sigma)
    y = label_to_matrix(gamma)
    e = ratio_exponent(mono_mul(mono_mul(s, y), mono_inv(s)), y)
    if e is None or e != character_exponent(gamma, sigma):
        raise EigenMismatch(f"{gamma} is not an eigenvector of {sigma} with the expected value")
    return e


def structure_exponent(gamma: RootLabel, delta: RootLabel) -> int:
    """e with Y_gamma Y_delta = omega_{l1}^e Y_{gamma + delta}."""
    _same(gamma, delta)
    e = ratio_exponent(
        mono_mul(label_to_matrix(gamma), label_to_matrix(delta)),
        label_to_matrix(gamma + delta),
    )
    assert e is not None, "product of root vectors left the root space"
    return e


def bracket_is_zero(gamma: RootLabel, delta: RootLabel) -> bool:
    return structure_exponent(gamma, delta) == structure_exponent(delta, gamma)


def star(gamma: RootLabel, check: bool = True) -> ProjectivePauli:
    """The element gamma* of K with <gamma*, sigma> = gamma(sigma)."""
    coords = []
    for t in range(gamma.shape.k):
        a, b = gamma.component(t)
        coords += [b, -a]
    out = GroupElement(gamma.shape, tuple(coords))
    if check:
        for sigma in k_generators(gamma.shape):
            if commutator_exponent(out, sigma) != character_exponent(gamma, sigma):
                raise StarMismatch(f"star({gamma}) fails on generator {sigma}")
    return out


def trace_form(gamma: RootLabel, delta: RootLabel) -> Trace:
    _same(gamma, delta)
    return mono_trace(mono_mul(label_to_matrix(gamma), label_to_matrix(delta)))


def trace_form_orthogonality(gamma: RootLabel, delta: RootLabel) -> bool:
    """True iff tr(Y_gamma Y_delta) = 0."""
    return trace_form(gamma, delta).is_zero


@dataclass(frozen=True)
class GradingRow:
    label: RootLabel
    matrix: MonomialMatrix
    trace_zero: bool

    def to_json(self) -> dict:
        return {
            "label": self.label.to_json(),
            "perm": list(self.matrix.perm),
            "phase": list(self.matrix.phase),
            "trace_zero": self.trace_zero,
        }


def grading_table(shape: Shape, algebra: str = "sl") -> list[GradingRow]:
    """One row per root space: n**2 - 1 rows for sl, n**2 for gl."""
    if algebra not in ("sl", "gl"):
        raise ValueError(f"unknown algebra {algebra!r}")
    n = shape.dim
    rows = []
    for gamma in shape.elements():
        y = label_to_matrix(gamma)
        tr = mono_trace(y)
        assert tr.exact
        if gamma:
            assert tr.is_zero, f"Y_{gamma} is not traceless"
        else:
            assert y == mono_identity(n, shape.exponent) and not tr.is_zero
            if algebra == "sl":
                continue
        rows.append(GradingRow(gamma, y, tr.is_zero))
    assert len(rows) == (n * n - 1 if algebra == "sl" else n * n)
    return rows


def label_exponents(gamma: RootLabel) -> list[tuple[int, int]]:
    """Per factor (Q exponent, P exponent) of Y_gamma, reduced."""
    out = []
    for t, l in enumerate(gamma.shape.moduli):
        a, b = gamma.component(t)
        out.append((a % l, (-b) % l))
    return out
