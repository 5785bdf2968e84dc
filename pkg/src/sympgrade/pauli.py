"""Exact monomial matrices for generalized Pauli operators.

A monomial matrix sends basis vector e_c to omega_N^{phase[c]} e_{perm[c]}.
Products, inverses and Kronecker products stay exact.  The finite maximal
diagonalizable subgroup K = P_{l1} x ... x P_{lk} of PGL(n, C) shares its
coordinates with the shaped group: coords (i_1, j_1, ..., i_k, j_k) stand for
Ad of P_{l1}^{i_1} Q_{l1}^{j_1} (x) ... (x) P_{lk}^{i_k} Q_{lk}^{j_k}.
"""
from __future__ import annotations

import cmath
import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import NotScalarCommutator, RootOrderIncompatible, ShapeMismatch
from .sympcore import GroupElement, Shape

# K and the shaped group share one coordinate space.
ProjectivePauli = GroupElement


@dataclass(frozen=True)
class MonomialMatrix:
    n: int
    N: int
    perm: tuple[int, ...]
    phase: tuple[int, ...]

    def __post_init__(self):
        perm = tuple(int(p) for p in self.perm)
        if sorted(perm) != list(range(self.n)) or len(self.phase) != self.n:
            raise ValueError("perm must be a permutation of range(n) with n phases")
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "phase", tuple(int(d) % self.N for d in self.phase))

    def __matmul__(self, other: "MonomialMatrix") -> "MonomialMatrix":
        return mono_mul(self, other)

    def __pow__(self, e: int) -> "MonomialMatrix":
        return mono_pow(self, e)

    def with_root_order(self, N: int) -> "MonomialMatrix":
        if N % self.N:
            raise RootOrderIncompatible(f"{self.N} does not divide {N}")
        s = N // self.N
        return MonomialMatrix(self.n, N, self.perm, tuple(s * d for d in self.phase))

    def scalar(self) -> int | None:
        """Exponent e if the matrix is omega_N^e I, else None."""
        if any(p != c for c, p in enumerate(self.perm)) or len(set(self.phase)) != 1:
            return None
        return self.phase[0]

    def times_root(self, e: int) -> "MonomialMatrix":
        return MonomialMatrix(self.n, self.N, self.perm, tuple(d + e for d in self.phase))

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.n, self.n), dtype=complex)
        w = np.exp(2j * np.pi * np.array(self.phase) / self.N)
        out[list(self.perm), list(range(self.n))] = w
        return out

    def to_json(self) -> dict:
        return {"n": self.n, "N": self.N, "perm": list(self.perm), "phase": list(self.phase)}


def mono_from_json(data: dict) -> MonomialMatrix:
    return MonomialMatrix(data["n"], data["N"], tuple(data["perm"]), tuple(data["phase"]))


def mono_identity(n: int, N: int = 1) -> MonomialMatrix:
    return MonomialMatrix(n, N, tuple(range(n)), (0,) * n)


def pauli_p(n: int, N: int | None = None) -> MonomialMatrix:
    """Cyclic shift: row i has its 1 in column i + 1."""
    return MonomialMatrix(n, N or n, tuple((c - 1) % n for c in range(n)), (0,) * n)


def pauli_q(n: int, N: int | None = None) -> MonomialMatrix:
    """diag(1, w, ..., w^{n-1}) with w = exp(2 pi i / n)."""
    N = N or n
    if N % n:
        raise RootOrderIncompatible(f"{n} does not divide {N}")
    return MonomialMatrix(n, N, tuple(range(n)), tuple(c * (N // n) for c in range(n)))


def _common(a: MonomialMatrix, b: MonomialMatrix) -> tuple[MonomialMatrix, MonomialMatrix]:
    if a.N == b.N:
        return a, b
    N = max(a.N, b.N)
    return a.with_root_order(N), b.with_root_order(N)


def mono_mul(a: MonomialMatrix, b: MonomialMatrix) -> MonomialMatrix:
    if a.n != b.n:
        raise ShapeMismatch(f"cannot multiply {a.n}x{a.n} by {b.n}x{b.n}")
    a, b = _common(a, b)
    perm = tuple(a.perm[p] for p in b.perm)
    phase = tuple(db + a.phase[p] for p, db in zip(b.perm, b.phase))
    return MonomialMatrix(a.n, a.N, perm, phase)


def mono_inv(a: MonomialMatrix) -> MonomialMatrix:
    perm = [0] * a.n
    phase = [0] * a.n
    for c, (p, d) in enumerate(zip(a.perm, a.phase)):
        perm[p] = c
        phase[p] = -d
    return MonomialMatrix(a.n, a.N, tuple(perm), tuple(phase))


def mono_pow(a: MonomialMatrix, e: int) -> MonomialMatrix:
    if e < 0:
        a, e = mono_inv(a), -e
    out = mono_identity(a.n, a.N)
    base = a
    while e:
        if e & 1:
            out = mono_mul(out, base)
        base = mono_mul(base, base)
        e >>= 1
    return out


def mono_tensor(a: MonomialMatrix, b: MonomialMatrix) -> MonomialMatrix:
    a, b = _common(a, b)
    perm, phase = [], []
    for i in range(a.n):
        for j in range(b.n):
            perm.append(a.perm[i] * b.n + b.perm[j])
            phase.append(a.phase[i] + b.phase[j])
    return MonomialMatrix(a.n * b.n, a.N, tuple(perm), tuple(phase))


def ratio_exponent(a: MonomialMatrix, b: MonomialMatrix) -> int | None:
    """e with a = omega_N^e b, or None when a is not a root-of-unity multiple of b."""
    a, b = _common(a, b)
    if a.perm != b.perm:
        return None
    diffs = {(x - y) % a.N for x, y in zip(a.phase, b.phase)}
    return diffs.pop() if len(diffs) == 1 else None


@dataclass(frozen=True)
class Trace:
    value: complex
    is_zero: bool
    exact: bool


def mono_trace(a: MonomialMatrix, tol: float = 1e-9) -> Trace:
    """Trace of a monomial matrix.

    Exact when the fixed-point phases are uniformly spread over a coset of a
    subgroup of Z_N (a full geometric series, or a single repeated root);
    numeric otherwise.
    """
    fixed = [d for c, (p, d) in enumerate(zip(a.perm, a.phase)) if p == c]
    value = sum((cmath.exp(2j * math.pi * d / a.N) for d in fixed), 0j)
    if not fixed:
        return Trace(0j, True, True)
    counts = Counter(fixed)
    e0 = min(counts)
    g = a.N
    for d in counts:
        g = math.gcd(g, d - e0)
    if len(counts) * g == a.N and len(set(counts.values())) == 1:
        return Trace(value if len(counts) == 1 else 0j, len(counts) > 1, True)
    return Trace(value, abs(value) < tol, False)


def mono_trace_is_zero(a: MonomialMatrix, tol: float = 1e-9) -> bool:
    return mono_trace(a, tol).is_zero


# -- K and its canonical lifts ------------------------------------------------------

@lru_cache(maxsize=None)
def _factor_pq(l: int, N: int, i: int, j: int) -> MonomialMatrix:
    return mono_mul(mono_pow(pauli_p(l, N), i), mono_pow(pauli_q(l, N), j))


def tensor_all(factors) -> MonomialMatrix:
    out = factors[0]
    for f in factors[1:]:
        out = mono_tensor(out, f)
    return out


@lru_cache(maxsize=None)
def k_lift(sigma: ProjectivePauli) -> MonomialMatrix:
    """Canonical preimage (x)_t P_{l_t}^{i_t} Q_{l_t}^{j_t}, phases base omega_{l1}."""
    shape = sigma.shape
    N = shape.exponent
    return tensor_all([_factor_pq(l, N, *sigma.component(t)) for t, l in enumerate(shape.moduli)])


def commutator_exponent(sigma: ProjectivePauli, tau: ProjectivePauli) -> int:
    """Exponent of the scalar S T S^-1 T^-1 for canonical lifts S, T."""
    if sigma.shape != tau.shape:
        raise ShapeMismatch("elements of different K")
    s, t = k_lift(sigma), k_lift(tau)
    c = mono_mul(mono_mul(s, t), mono_inv(mono_mul(t, s)))
    e = c.scalar()
    if e is None:
        raise NotScalarCommutator(f"commutator of {sigma} and {tau} is not scalar")
    return e


def k_generators(shape: Shape) -> list[ProjectivePauli]:
    """sigma_1, tau_1, ..., sigma_k, tau_k."""
    return [shape.basis(r) for r in range(shape.rank)]
