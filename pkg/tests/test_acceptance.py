"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line."""
import time

import numpy as np
import pytest

from sympgrade.isom import q_closure, sl2_count, sl2_order_formula, sp_enumerate, sp_tables
from sympgrade.suites import (
    check_alternating,
    check_bilinear,
    check_commutator_model,
    check_factor_roundtrip,
    check_grading_integrity,
    check_nonsingular,
    check_pair_transitivity,
    check_pairing_table,
    check_realization,
    check_star,
    check_trace_orthogonality,
    check_u1_orbit,
    shapes_up_to_dim,
    shapes_up_to_order,
)
from sympgrade.sympcore import make_shape

PAIRING_SHAPES = [[2], [3], [4], [5], [6], [8], [2, 2], [3, 3], [4, 2], [4, 4], [6, 2], [6, 3]]
CLOSURE_SHAPES = [[2], [3], [4], [5], [6], [2, 2], [3, 3], [4, 2]]
ROUNDTRIP_SHAPES = [[4, 2], [6, 2], [6, 3], [2, 2]]


@pytest.fixture
def verdict(capsys):
    """Run a criterion body, print one line, then assert."""

    def run(number, title, body, limit=None):
        t0 = time.perf_counter()
        failures = body()
        elapsed = time.perf_counter() - t0
        slow = limit is not None and elapsed >= limit
        ok = not failures and not slow
        note = f"{elapsed:.2f}s" + (f" (limit {limit}s)" if limit else "")
        if failures:
            note += f"; first failure: {failures[0]}"
        elif slow:
            note += "; too slow"
        with capsys.disabled():
            print(f"\ncriterion {number:>2} [{'PASS' if ok else 'FAIL'}] {title}: {note}")
        assert not failures, failures[:3]
        assert not slow, f"took {elapsed:.2f}s, limit {limit}s"

    return run


def _collect(checks, shapes):
    bad = []
    for s in shapes:
        for fn in checks:
            _, cx = fn(s)
            if cx is not None:
                bad.append({"check": fn.__name__, **cx})
    return bad


def test_criterion_01_pairing_axioms(verdict):
    shapes = [make_shape(m) for m in PAIRING_SHAPES]
    checks = [check_pairing_table, check_bilinear, check_alternating, check_nonsingular]
    verdict(1, "pairing bilinear, alternating, nonsingular", lambda: _collect(checks, shapes), limit=10)


def test_criterion_02_sp_order(verdict):
    def body():
        bad = []
        for n in range(2, 13):
            got, direct, closed = sp_enumerate(make_shape([n])), sl2_count(n), sl2_order_formula(n)
            if not got == direct == closed:
                bad.append({"n": n, "sp": got, "direct": direct, "formula": closed})
        return bad

    verdict(2, "|Sp(H_n)| = |SL(2,Z_n)| = n^3 prod(1 - p^-2), n = 2..12", body, limit=10)


def test_criterion_03_q_equals_sp(verdict):
    def body():
        bad = []
        for m in CLOSURE_SHAPES:
            s = make_shape(m)
            q, sp = q_closure(s), sp_tables(s)
            if q.shape != sp.shape or not np.array_equal(q, sp):
                bad.append({"shape": m, "q": len(q), "sp": len(sp)})
        if len(q_closure(make_shape([2, 2]))) != 720:
            bad.append({"shape": [2, 2], "expected": 720})
        return bad

    verdict(3, "Q(H) = Sp(H) as permutation sets", body, limit=60)


def test_criterion_04_factor_round_trip(verdict):
    def body():
        bad = []
        for m in ROUNDTRIP_SHAPES:
            _, cx = check_factor_roundtrip(make_shape(m), trials=1000, seed=0)
            if cx is not None:
                bad.append(cx)
        return bad

    verdict(4, "1000 random words per shape re-factor exactly", body, limit=60)


def test_criterion_05_transitivity(verdict):
    shapes = shapes_up_to_order(256)
    verdict(5, f"u_1 orbit and pair transitivity on {len(shapes)} shapes with |H| <= 256",
            lambda: _collect([check_u1_orbit, check_pair_transitivity], shapes))


def test_criterion_06_grading_integrity(verdict):
    verdict(6, "sl grading rows, tracelessness, closure, bracket vs pairing, n <= 12",
            lambda: _collect([check_grading_integrity], shapes_up_to_dim(12)), limit=30)


def test_criterion_07_commutator_model(verdict):
    verdict(7, "commutator exponent = pairing on K x K, n <= 12",
            lambda: _collect([check_commutator_model], shapes_up_to_dim(12)))


def test_criterion_08_star(verdict):
    verdict(8, "star additive and <gamma*, sigma> = gamma(sigma), n <= 12",
            lambda: _collect([check_star], shapes_up_to_dim(12)))


def test_criterion_09_realization(verdict):
    verdict(9, "realized Z induces s_delta for every pure-Q delta, n <= 8",
            lambda: _collect([check_realization], shapes_up_to_dim(8)), limit=30)


def test_criterion_10_trace_orthogonality(verdict):
    verdict(10, "tr(Y_gamma Y_delta) = 0 iff gamma + delta != 0, n <= 12",
            lambda: _collect([check_trace_orthogonality], shapes_up_to_dim(12)))
