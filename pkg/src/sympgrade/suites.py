"""Invariant suites shared by ``sympgrade verify`` and the test suite.

Each check returns a :class:`CheckResult`; a failing check carries the first
counterexample it found, in JSON-friendly form.
"""
from __future__ import annotations

import time
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field

import numpy as np

from .errors import BoundExceeded
from .factor import factor_isometry
from .grading import (
    bracket_is_zero,
    character_exponent,
    grading_table,
    label_to_matrix,
    star,
    structure_exponent,
    trace_form,
)
from .isom import (
    Transvection,
    hyperbolic_pair_keys,
    maximal_order_elements,
    orbit,
    order_vector,
    pair_orbit_keys,
    pair_table,
    permutation,
    q_closure,
    random_word,
    sl2_count,
    sl2_order_formula,
    sp_enumerate,
    sp_tables,
    transvection_matrix,
    transvection_tables,
    pair_from_key,
)
from .pauli import commutator_exponent, mono_trace
from .realize import induced_k_map, pure_q_labels, realize_pure_q_transvection
from .sympcore import Shape, elements_array, index_strides, make_shape, pair, shapes_of


@dataclass
class CheckResult:
    name: str
    passed: bool
    count: int = 0
    seconds: float = 0.0
    counterexample: dict | None = None
    detail: dict = field(default_factory=dict)
    skipped: bool = False

    @property
    def status(self) -> str:
        return "skip" if self.skipped else ("pass" if self.passed else "fail")

    def to_json(self) -> dict:
        out = {"name": self.name, "status": self.status,
               "count": self.count, "seconds": round(self.seconds, 4)}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class VerificationReport:
    suite: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "summary": {"checks": len(self.checks),
                        "failed": sum(not c.passed for c in self.checks),
                        "skipped": sum(c.skipped for c in self.checks)},
            "checks": [c.to_json() for c in self.checks],
        }

    def to_text(self) -> str:
        lines = [f"suite {self.suite}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            s = f"  [{c.status}] {c.name} ({c.count} cases, {c.seconds:.2f}s)"
            if c.counterexample is not None:
                s += f" counterexample={c.counterexample}"
            lines.append(s)
        return "\n".join(lines)


class Skip(Exception):
    """Raised by a check whose input is beyond the enumeration caps."""


def timed(name: str, fn: Callable[[], tuple[int, dict | None]], **detail) -> CheckResult:
    t0 = time.perf_counter()
    try:
        count, bad = fn()
    except Skip as exc:
        return CheckResult(name, True, 0, time.perf_counter() - t0, None, {**detail, "reason": str(exc)}, True)
    return CheckResult(name, bad is None, count, time.perf_counter() - t0, bad, detail)


def shapes_up_to_order(max_order: int) -> list[Shape]:
    """All shapes with |H| <= max_order, by n = sqrt|H|."""
    out = []
    n = 2
    while n * n <= max_order:
        out += shapes_of(n)
        n += 1
    return out


def shapes_up_to_dim(n_max: int) -> list[Shape]:
    return [s for n in range(2, n_max + 1) for s in shapes_of(n)]


def _els(shape: Shape, i: int) -> list[int]:
    return [int(x) for x in elements_array(shape)[i]]


# -- sympcore -------------------------------------------------------------------

def addition_table(shape: Shape, right: np.ndarray | None = None) -> np.ndarray:
    """A[i, j] = index of x_i + x_j, for j ranging over ``right`` (default all)."""
    els = elements_array(shape)
    mods = np.array(shape.coord_moduli, dtype=np.int64)
    rhs = els if right is None else els[right]
    return ((els[:, None, :] + rhs[None, :, :]) % mods) @ index_strides(shape)


def check_pairing_table(shape: Shape, sample: int = 2000, seed: int = 0) -> tuple[int, dict | None]:
    """Vectorized pair table agrees with the scalar pairing."""
    els = list(shape.elements())
    P = pair_table(shape)
    size = len(els)
    if size * size <= sample:
        idx = [(i, j) for i in range(size) for j in range(size)]
    else:
        rng = np.random.default_rng(seed)
        idx = [tuple(int(x) for x in rng.integers(size, size=2)) for _ in range(sample)]
    for i, j in idx:
        if P[i, j] != pair(els[i], els[j]):
            return len(idx), {"shape": shape.to_json(), "a": els[i].to_json(), "b": els[j].to_json()}
    return len(idx), None


def check_bilinear(shape: Shape) -> tuple[int, dict | None]:
    """pair(a + b, c) = pair(a, c) + pair(b, c).

    Below 256 elements every triple is checked.  Above, b runs over the
    basis: additivity in one generator at a time implies additivity in all b.
    """
    P = pair_table(shape)
    l1 = shape.exponent
    size = shape.order
    right = np.arange(size) if size <= 256 else np.array([int(shape.basis(r).index) for r in range(shape.rank)])
    A = addition_table(shape, right)
    count = 0
    for jb, b in enumerate(right):
        lhs = P[A[:, jb]]                     # rows: a + b, cols: c
        rhs = (P + P[b][None, :]) % l1
        bad = np.argwhere(lhs != rhs)
        count += size * size
        if len(bad):
            a, c = bad[0]
            return count, {"shape": shape.to_json(), "a": _els(shape, a), "b": _els(shape, b), "c": _els(shape, c)}
    return count, None


def check_alternating(shape: Shape) -> tuple[int, dict | None]:
    P = pair_table(shape)
    l1 = shape.exponent
    bad = np.argwhere((P + P.T) % l1 != 0)
    if len(bad):
        a, b = bad[0]
        return P.size, {"shape": shape.to_json(), "a": _els(shape, a), "b": _els(shape, b)}
    diag = np.flatnonzero(np.diag(P))
    if len(diag):
        return P.size, {"shape": shape.to_json(), "a": _els(shape, diag[0])}
    return P.size, None


def check_nonsingular(shape: Shape) -> tuple[int, dict | None]:
    P = pair_table(shape)
    radical = np.flatnonzero(~P.any(axis=1))
    radical = radical[radical != 0]
    if len(radical):
        return shape.order, {"shape": shape.to_json(), "a": _els(shape, radical[0])}
    return shape.order, None


# -- spgen ----------------------------------------------------------------------

def check_sl2_order(n: int) -> tuple[int, dict | None]:
    got = sp_enumerate(make_shape([n]))
    brute = sl2_count(n)
    closed = sl2_order_formula(n)
    if not got == brute == closed:
        return 1, {"n": n, "sp_enumerate": got, "direct": brute, "formula": closed}
    return 1, None


def check_q_equals_sp(shape: Shape, max_count: int = 10**7) -> tuple[int, dict | None]:
    try:
        sp = sp_tables(shape, max_count=max_count)
        q = q_closure(shape, max_count=max_count)
    except BoundExceeded as exc:
        raise Skip(str(exc)) from exc
    if q.shape != sp.shape or not np.array_equal(q, sp):
        return len(sp), {"shape": shape.to_json(), "q": int(len(q)), "sp": int(len(sp))}
    return len(sp), None


def check_factor_roundtrip(shape: Shape, trials: int, seed: int = 0, max_length: int = 30) -> tuple[int, dict | None]:
    """Random words of length 1..max_length survive compose -> factor -> compose."""
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        w = random_word(shape, int(rng.integers(1, max_length + 1)), rng)
        M = w.to_isometry()
        back = factor_isometry(M).to_isometry()
        if not np.array_equal(permutation(back), permutation(M)):
            return trials, {"shape": shape.to_json(), "word": w.to_json()}
    return trials, None


def check_u1_orbit(shape: Shape) -> tuple[int, dict | None]:
    tables = transvection_tables(shape)
    got = orbit(tables, shape.u(0))
    want = maximal_order_elements(shape)
    if got != want:
        diff = sorted(got ^ want)[0]
        return len(want), {"shape": shape.to_json(), "element": diff.to_json()}
    return len(want), None


def check_pair_transitivity(shape: Shape) -> tuple[int, dict | None]:
    """Transvections already move one pair of each order onto every other."""
    tables = transvection_tables(shape)
    orders = order_vector(shape)
    count = 0
    for m in sorted(set(int(x) for x in orders) - {1}):
        keys = hyperbolic_pair_keys(shape, m)
        if not len(keys):
            continue
        p = pair_from_key(shape, keys[0])
        reach = pair_orbit_keys(shape, p.a, p.b, tables)
        count += len(keys)
        if not np.array_equal(reach, keys):
            return count, {"shape": shape.to_json(), "order": m, "pairs": int(len(keys)), "orbit": int(len(reach))}
    return count, None


# -- grading --------------------------------------------------------------------

def check_grading_integrity(shape: Shape) -> tuple[int, dict | None]:
    n = shape.dim
    rows = grading_table(shape, "sl")
    if len(rows) != n * n - 1:
        return 1, {"shape": shape.to_json(), "rows": len(rows)}
    labels = list(shape.elements())
    for g in labels[1:]:
        tr = mono_trace(label_to_matrix(g))
        if not (tr.exact and tr.is_zero):
            return 1, {"shape": shape.to_json(), "gamma": g.to_json(), "issue": "trace"}
    count = 0
    for g in labels:
        for d in labels:
            count += 1
            structure_exponent(g, d)  # raises if the product leaves the root space
            if bracket_is_zero(g, d) != (pair(g, d) == 0):
                return count, {"shape": shape.to_json(), "gamma": g.to_json(), "delta": d.to_json()}
    return count, None


def check_commutator_model(shape: Shape) -> tuple[int, dict | None]:
    els = list(shape.elements())
    for s in els:
        for t in els:
            if commutator_exponent(s, t) != pair(s, t):
                return len(els) ** 2, {"shape": shape.to_json(), "sigma": s.to_json(), "tau": t.to_json()}
    return len(els) ** 2, None


def check_star(shape: Shape) -> tuple[int, dict | None]:
    els = list(shape.elements())
    stars = {g: star(g, check=False) for g in els}
    for g in els:
        for d in els:
            if stars[g + d] != stars[g] + stars[d]:
                return len(els) ** 2, {"shape": shape.to_json(), "gamma": g.to_json(), "delta": d.to_json(), "issue": "additivity"}
            if pair(stars[g], d) != character_exponent(g, d):
                return len(els) ** 2, {"shape": shape.to_json(), "gamma": g.to_json(), "sigma": d.to_json(), "issue": "defining"}
    return len(els) ** 2, None


def check_trace_orthogonality(shape: Shape) -> tuple[int, dict | None]:
    els = list(shape.elements())
    for g in els:
        for d in els:
            tr = trace_form(g, d)
            if not tr.exact or tr.is_zero != bool(g + d):
                return len(els) ** 2, {"shape": shape.to_json(), "gamma": g.to_json(), "delta": d.to_json()}
    return len(els) ** 2, None


# -- realize --------------------------------------------------------------------

def check_realization(shape: Shape, tol: float = 1e-9) -> tuple[int, dict | None]:
    labels = pure_q_labels(shape)
    for d in labels:
        induced = induced_k_map(realize_pure_q_transvection(d), shape, tol)
        if induced != transvection_matrix(Transvection(star(d), 1)):
            return len(labels), {"shape": shape.to_json(), "delta": d.to_json()}
    return len(labels), None


# -- drivers --------------------------------------------------------------------

def _per_shape(report: VerificationReport, name: str, shapes: Iterable[Shape], fn, **kw):
    for s in shapes:
        report.checks.append(timed(f"{name} {s}", lambda s=s: fn(s, **kw), shape=s.to_json()))


def run_sympcore(shapes: list[Shape], seed: int = 0) -> VerificationReport:
    r = VerificationReport("sympcore")
    _per_shape(r, "pair-table", shapes, check_pairing_table, seed=seed)
    _per_shape(r, "bilinear", shapes, check_bilinear)
    _per_shape(r, "alternating", shapes, check_alternating)
    _per_shape(r, "nonsingular", shapes, check_nonsingular)
    return r


def run_spgen(shapes: list[Shape], trials: int = 1000, seed: int = 0, n_max: int = 12,
              max_count: int = 10**5) -> VerificationReport:
    r = VerificationReport("spgen")
    for n in range(2, n_max + 1):
        r.checks.append(timed(f"sl2-order {n}", lambda n=n: check_sl2_order(n), n=n))
    _per_shape(r, "q-equals-sp", shapes, check_q_equals_sp, max_count=max_count)
    _per_shape(r, "u1-orbit", shapes, check_u1_orbit)
    _per_shape(r, "pair-transitivity", shapes, check_pair_transitivity)
    _per_shape(r, "factor-roundtrip", shapes, check_factor_roundtrip, trials=trials, seed=seed)
    return r


def run_grading(shapes: list[Shape]) -> VerificationReport:
    r = VerificationReport("grading")
    _per_shape(r, "grading-integrity", shapes, check_grading_integrity)
    _per_shape(r, "commutator-model", shapes, check_commutator_model)
    _per_shape(r, "star", shapes, check_star)
    _per_shape(r, "trace-orthogonality", shapes, check_trace_orthogonality)
    return r


def run_realize(shapes: list[Shape], tol: float = 1e-9) -> VerificationReport:
    r = VerificationReport("realize")
    _per_shape(r, "realization", shapes, check_realization, tol=tol)
    return r
