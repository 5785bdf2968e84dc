"""Explicit normalizer elements of PGL(n, C) inducing transvections on K.

For a label delta whose root vector Y = Y_delta is diagonal (no alpha part),
write Y = exp(sum_i a_i Y^i) via a Vandermonde solve, pick sigma in K with
delta(sigma) = omega_m, and put

    Z = exp(sum_{i >= 1} c_i Y^i),   c_i = -a_i / (omega_m^i - 1).

Then S Z S^-1 Z^-1 is a scalar times Y^-1, and conjugation by Z acts on K as
the transvection s_delta.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AmbiguousMatch, NotNormalizing, NotPureQ, OrderOne, ShapeMismatch
from .grading import RootLabel, character_exponent, label_to_matrix
from .isom import Isometry, from_images
from .pauli import ProjectivePauli, k_generators, k_lift
from .sympcore import GroupElement, Shape, element_order

PROJECTIVE_TOL = 1e-9
RESIDUAL_TOL = 1e-10
MAX_DIM = 12


@dataclass(frozen=True)
class LogCoefficients:
    m: int
    coeffs: np.ndarray
    residual: float

    def log_of(self, y: np.ndarray) -> np.ndarray:
        """sum_i c_i y^i, elementwise on a spectrum of m-th roots of unity."""
        return sum(c * y ** i for i, c in enumerate(self.coeffs))


def vandermonde_log(m: int) -> LogCoefficients:
    """Solve D c = (0, s, ..., (m-1) s) with D_ij = w^{ij}, s = 2 pi i / m."""
    if m < 2:
        raise ValueError("m must be at least 2")
    w = np.exp(2j * np.pi / m)
    idx = np.arange(m)
    D = w ** np.outer(idx, idx)
    rhs = idx * (2j * np.pi / m)
    c = np.linalg.solve(D, rhs)
    res = float(np.max(np.abs(D @ c - rhs)))
    assert res < RESIDUAL_TOL, f"Vandermonde residual {res}"
    return LogCoefficients(m, c, res)


def is_pure_q(delta: RootLabel) -> bool:
    return all(delta.coords[2 * t + 1] == 0 for t in range(delta.shape.k))


def default_sigma(delta: RootLabel) -> ProjectivePauli:
    """First element of K (index order) with delta(sigma) = omega_m."""
    m = element_order(delta)
    target = delta.shape.exponent // m
    return next(s for s in delta.shape.elements() if character_exponent(delta, s) == target)


def realize_pure_q_transvection(delta: RootLabel, sigma: ProjectivePauli | None = None) -> np.ndarray:
    """Dense diagonal Z in GL(n, C) whose adjoint action on K is s_delta."""
    if not delta:
        raise OrderOne("delta must be nonzero")
    if not is_pure_q(delta):
        raise NotPureQ(f"{delta} has a nonzero alpha component")
    shape = delta.shape
    if shape.dim > MAX_DIM:
        raise ValueError(f"n = {shape.dim} exceeds the dense cap {MAX_DIM}")
    m = element_order(delta)
    if sigma is None:
        sigma = default_sigma(delta)
    elif character_exponent(delta, sigma) != shape.exponent // m:
        raise ValueError("delta(sigma) must be a primitive m-th root of unity")
    y_mono = label_to_matrix(delta)
    y = np.exp(2j * np.pi * np.array(y_mono.phase) / y_mono.N)
    a = vandermonde_log(m).coeffs
    w = np.exp(2j * np.pi / m)
    log_z = sum((-a[i] / (w ** i - 1)) * y ** i for i in range(1, m))
    return np.diag(np.exp(log_z))


def projective_equal(m1: np.ndarray, m2: np.ndarray, tol: float = PROJECTIVE_TOL) -> bool:
    """True iff m1 = lam m2 for a nonzero scalar lam, within tol."""
    if m1.shape != m2.shape:
        raise ShapeMismatch("matrices of different sizes")
    k = np.unravel_index(np.argmax(np.abs(m2)), m2.shape)
    if abs(m2[k]) < tol:
        return bool(np.max(np.abs(m1)) < tol)
    lam = m1[k] / m2[k]
    if abs(lam) < tol:
        return False
    return bool(np.max(np.abs(m1 - lam * m2)) <= tol * max(1.0, float(np.max(np.abs(m1)))))


def _lift_catalogue(shape: Shape) -> list[tuple[GroupElement, np.ndarray]]:
    return [(s, k_lift(s).to_dense()) for s in shape.elements()]


def induced_k_map(z: np.ndarray, shape: Shape, tol: float = PROJECTIVE_TOL) -> Isometry:
    """The map tau -> Z tau Z^-1 on K, read off on the generators sigma_t, tau_t."""
    if z.shape != (shape.dim, shape.dim):
        raise ShapeMismatch(f"Z must be {shape.dim}x{shape.dim}")
    if not np.all(np.isfinite(z)):
        raise NotNormalizing("Z has non-finite entries")
    z_inv = np.linalg.inv(z)
    catalogue = _lift_catalogue(shape)
    images = []
    for g in k_generators(shape):
        conj = z @ k_lift(g).to_dense() @ z_inv
        hits = [s for s, mat in catalogue if projective_equal(conj, mat, tol)]
        if not hits:
            raise NotNormalizing(f"Z {g} Z^-1 is not a projective Pauli element")
        if len(hits) > 1:
            raise AmbiguousMatch(f"{len(hits)} Pauli elements match Z {g} Z^-1")
        images.append(hits[0])
    return from_images(images)


def commutator_residual(z: np.ndarray, delta: RootLabel, sigma: ProjectivePauli) -> bool:
    """Check S Z S^-1 Z^-1 is a scalar multiple of Y_delta^-1."""
    s = k_lift(sigma).to_dense()
    lhs = s @ z @ np.linalg.inv(s) @ np.linalg.inv(z)
    return projective_equal(lhs, np.linalg.inv(label_to_matrix(delta).to_dense()))


def pure_q_labels(shape: Shape) -> list[RootLabel]:
    out = []
    for a in shape.elements():
        if a and is_pure_q(a):
            out.append(a)
    return out


def realization_report(delta: RootLabel, sigma: ProjectivePauli | None = None,
                       tol: float = PROJECTIVE_TOL) -> dict:
    from .grading import star
    from .isom import Transvection, transvection_matrix

    z = realize_pure_q_transvection(delta, sigma)
    induced = induced_k_map(z, delta.shape, tol)
    expected = transvection_matrix(Transvection(star(delta), 1))
    return {
        "shape": delta.shape.to_json(),
        "delta": delta.to_json(),
        "order": element_order(delta),
        "z_diagonal": [[float(v.real), float(v.imag)] for v in np.diag(z)],
        "induced": [list(r) for r in induced.matrix],
        "expected": [list(r) for r in expected.matrix],
        "match": induced == expected,
        "abs_det_z": float(abs(np.linalg.det(z))),
        "finite": bool(np.all(np.isfinite(z))),
        "tol": tol,
    }
