"""Constructive factorization of isometries into transvections.

SL(2, Z_n) is handled through the generators

    A = [[1, -1], [0, 1]]   (matrix of s_u on a hyperbolic pair (u, v))
    B = [[1,  0], [1, 1]]   (matrix of s_v)

by a Euclidean reduction on an integer lift.  Higher-rank isometries are
peeled one hyperbolic factor at a time: move the image of u_t back to u_t,
clean up the image of v_t, then factor the remaining 2x2 block.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import IncompatiblePairs, NotIsometry, NotMaximalOrder, NotUnimodular, SympGradeError
from .isom import (
    Isometry,
    Transvection,
    TransvectionWord,
    compose,
    identity,
    validate,
)
from .sympcore import (
    GroupElement,
    HyperbolicPair,
    Shape,
    element_order,
    pair,
    scalar_exponent,
)

Mat2 = tuple[tuple[int, int], tuple[int, int]]

GEN = {"A": ((1, -1), (0, 1)), "B": ((1, 0), (1, 1))}


def mat_mul(x: Mat2, y: Mat2, n: int | None = None) -> Mat2:
    r = tuple(
        tuple(x[i][0] * y[0][j] + x[i][1] * y[1][j] for j in range(2)) for i in range(2)
    )
    if n is not None:
        r = tuple(tuple(v % n for v in row) for row in r)
    return r


def mat_mod(x: Sequence[Sequence[int]], n: int) -> Mat2:
    return tuple(tuple(int(v) % n for v in row) for row in x)


def det(x: Mat2) -> int:
    return x[0][0] * x[1][1] - x[0][1] * x[1][0]


def gen_power(g: str, e: int) -> Mat2:
    if g == "A":
        return ((1, -e), (0, 1))
    return ((1, 0), (e, 1))


@dataclass(frozen=True)
class SL2Word:
    """Product of powers of A and B, read left to right."""

    items: tuple[tuple[str, int], ...] = ()

    def matrix(self, n: int | None = None) -> Mat2:
        m: Mat2 = ((1, 0), (0, 1))
        for g, e in self.items:
            m = mat_mul(m, gen_power(g, e), n)
        return m

    def __len__(self):
        return len(self.items)

    def normalized(self, n: int) -> "SL2Word":
        out: list[tuple[str, int]] = []
        for g, e in self.items:
            if out and out[-1][0] == g:
                e += out.pop()[1]
            e %= n
            if e:
                out.append((g, e))
        return SL2Word(tuple(out))


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a x + b y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def sl2_lift(n: int, C: Sequence[Sequence[int]]) -> Mat2:
    """Integer matrix congruent to C mod n with determinant exactly 1."""
    (a, b), (c, d) = mat_mod(C, n)
    if (a * d - b * c - 1) % n:
        raise NotUnimodular(f"det {a * d - b * c} is not 1 mod {n}")
    if n == 1:
        return ((1, 0), (0, 1))
    if a == 0:
        a = n
    # gcd(a, c, n) = 1; shift c by multiples of n until gcd(a, c) = 1
    while math.gcd(a, c) != 1:
        c += n
    _, y, x = _egcd(a, c)  # a*y + c*x = 1
    x = -x  # a*y - c*x = 1
    q = (a * d - b * c - 1) // n
    b, d = b - q * n * x, d - q * n * y
    assert a * d - b * c == 1
    return ((a, b), (c, d))


def _euclid_ops(i: int, j: int) -> tuple[list[tuple[str, int]], int]:
    """Row operations (applied in order) taking the column (i, j) to (g, 0)."""
    ops: list[tuple[str, int]] = []
    while j:
        q = i // j
        if q:
            ops.append(("A", q))  # row0 -= q row1
            i -= q * j
        if i == 0:
            ops.append(("A", -1))
            i = j
        q = j // i
        ops.append(("B", -q))  # row1 -= q row0
        j -= q * i
    if i < 0:
        ops.extend([("A", 1), ("B", 1), ("A", 1)] * 2)  # (ABA)^2 = -I
        i = -i
    return ops, i


def _invert_ops(ops: Sequence[tuple[str, int]]) -> list[tuple[str, int]]:
    # ops applied as L_r ... L_1; the inverse product is L_1^-1 ... L_r^-1
    return [(g, -e) for g, e in ops]


def sl2_factor(n: int, C: Sequence[Sequence[int]], shortest: bool = False) -> SL2Word:
    """Word in A, B whose product is congruent to C mod n."""
    C = mat_mod(C, n)
    if shortest:
        if n > 6:
            raise ValueError("shortest-word search is limited to n <= 6")
        table = _bfs_words(n)
        if C not in table:
            raise NotUnimodular(f"{C} is not in SL(2, Z_{n})")
        return SL2Word(table[C]).normalized(n)
    (a, b), (c, d) = sl2_lift(n, C)
    ops, g = _euclid_ops(a, c)
    assert g == 1
    # apply the same ops to the whole matrix to read off the remaining A power
    m: Mat2 = ((a, b), (c, d))
    for op in ops:
        m = mat_mul(gen_power(*op), m)
    assert m[0][0] == 1 and m[1][0] == 0 and m[1][1] == 1
    word = _invert_ops(ops) + [("A", -m[0][1])]
    out = SL2Word(tuple(word)).normalized(n)
    assert out.matrix(n) == C
    return out


@lru_cache(maxsize=None)
def _bfs_words(n: int) -> dict[Mat2, tuple[tuple[str, int], ...]]:
    start: Mat2 = ((1, 0), (0, 1 % n))
    start = mat_mod(start, n)
    table = {start: ()}
    queue = deque([start])
    steps = [("A", 1), ("A", -1), ("B", 1), ("B", -1)]
    while queue:
        m = queue.popleft()
        for g, e in steps:
            x = mat_mul(m, gen_power(g, e), n)
            if x not in table:
                table[x] = table[m] + ((g, e),)
                queue.append(x)
    return table


def conjugate_to_multiple_of_u1(n: int, a: Sequence[int]) -> tuple[Mat2, int]:
    """M in SL(2, Z_n) and l with M (i, j)^t = (l, 0)^t.

    (l) is the ideal generated by i, j; l == 1 whenever (i, j) has order n.
    """
    i, j = int(a[0]) % n, int(a[1]) % n
    ops, g = _euclid_ops(i, j)
    m: Mat2 = ((1, 0), (0, 1))
    for op in ops:
        m = mat_mul(gen_power(*op), m, n)
    if math.gcd(g, n) == 1:
        inv = pow(g, -1, n)
        m = mat_mul(((inv, 0), (0, g)), m, n)
        g = 1
    return m, g % n


# -- transvection words for rank-2 pieces -----------------------------------------

def sl2_word_on_pair(word: SL2Word, p: HyperbolicPair) -> TransvectionWord:
    """Realize an A/B word on span(p) in the basis (p.a, p.b); identity elsewhere."""
    base = {"A": p.a, "B": p.b}
    return TransvectionWord(p.shape, tuple(Transvection(base[g], e) for g, e in word.items))


def matrix_on_pair(C: Sequence[Sequence[int]], p: HyperbolicPair) -> TransvectionWord:
    return sl2_word_on_pair(sl2_factor(p.order, C), p)


def pair_coords(c: GroupElement, p: HyperbolicPair) -> tuple[int, int]:
    """(x, y) with c = x p.a + y p.b, for c in span(p)."""
    n, l1 = p.order, c.shape.exponent
    return scalar_exponent(pair(c, p.b), l1, n), scalar_exponent(pair(p.a, c), l1, n)


def swap_word(p1: HyperbolicPair, p2: HyperbolicPair) -> TransvectionWord:
    """Transvection word exchanging (a1, b1) with (a2, b2), identity on the rest."""
    n = p1.order
    if p2.order != n or p1.shape != p2.shape:
        raise IncompatiblePairs("pairs must share shape and order")
    if any(pair(x, y) for x in (p1.a, p1.b) for y in (p2.a, p2.b)):
        raise IncompatiblePairs("pairs are not orthogonal")
    shape = p1.shape
    u1, v1, u2, v2 = p1.a, p1.b, p2.a, p2.b
    x = v1 + v2
    # phi: u2 -> x inside span(u2, x)
    phi = matrix_on_pair(((0, -1), (1, 0)), HyperbolicPair(u2, x))
    # tau: x -> u1 inside span(u1, x)
    m, l = conjugate_to_multiple_of_u1(n, (0, 1))
    assert l == 1
    tau = matrix_on_pair(m, HyperbolicPair(u1, x))
    nu = tau @ phi
    v2p = nu(v2)
    i = scalar_exponent(pair(v2p, v1), shape.exponent, n)
    items: list[Transvection] = []
    if (i - 1) % n:
        items.append(Transvection(u1, i - 1))
    v2pp = v2p - ((i - 1) % n) * u1
    q = v2pp - v1
    if q:
        items.insert(0, Transvection(q, 1))
    nu = TransvectionWord(shape, tuple(items)) @ nu
    assert nu(u2) == u1 and nu(v2) == v1
    # nu . swap fixes (u1, v1); its action on span(u2, v2) is C
    cols = [pair_coords(nu(u1), p2), pair_coords(nu(v1), p2)]
    C = ((cols[0][0], cols[1][0]), (cols[0][1], cols[1][1]))
    return nu.inverse() @ matrix_on_pair(C, p2)


# -- reduction of a maximal-order element ------------------------------------------

def _prime_powers(m: int) -> list[tuple[int, int]]:
    out, p = [], 2
    while p * p <= m:
        if m % p == 0:
            r = 0
            while m % p == 0:
                m //= p
                r += 1
            out.append((p, r))
        p += 1
    if m > 1:
        out.append((m, 1))
    return out


def _valuation(x: int, p: int) -> int:
    r = 0
    while x % p == 0 and x:
        x //= p
        r += 1
    return r


def _component_order(a: GroupElement, t: int) -> int:
    li = a.shape.moduli[t]
    u, v = a.component(t)
    return li // math.gcd(li, u, v)


def primary_pair(shape: Shape, t: int, p: int) -> HyperbolicPair:
    """Hyperbolic pair spanning the p-primary part of factor t."""
    lt = shape.moduli[t]
    q = p ** _valuation(lt, p)
    c = lt // q
    return HyperbolicPair(c * shape.u(t), (c * pow(c, -1, q)) * shape.v(t))


def _word_from(shape: Shape, items) -> TransvectionWord:
    return TransvectionWord(shape, tuple(items))


def _fix_first_component(a: GroupElement, start: int) -> TransvectionWord:
    """Swap primary parts into factor `start` until its component has full order."""
    shape = a.shape
    lead = shape.moduli[start]
    word = _word_from(shape, ())
    for p, r1 in _prime_powers(lead):
        if _valuation(_component_order(a, start), p) == r1:
            continue
        t = next(
            t for t in range(start + 1, shape.k)
            if _valuation(_component_order(a, t), p) == r1
        )
        sw = swap_word(primary_pair(shape, start, p), primary_pair(shape, t, p))
        a = sw(a)
        word = sw @ word
    assert _component_order(a, start) == lead
    return word


def _partner(x: int, y: int, n: int) -> tuple[int, int]:
    """(s, t) with s*y - t*x = 1 mod n, given gcd(x, y, n) = 1."""
    g, k, m = _egcd(x, y)  # x k + y m = g
    ginv = pow(g, -1, n)
    return (m * ginv) % n, (-k * ginv) % n


def _reduce(a: GroupElement, start: int) -> TransvectionWord:
    shape = a.shape
    lead = shape.moduli[start]
    if any(a.component(t) != (0, 0) for t in range(start)) or element_order(a) != lead:
        raise NotMaximalOrder(f"{a} does not have order {lead} within factors >= {start}")
    word = _word_from(shape, ())
    while True:
        w = _fix_first_component(a, start)
        a, word = w(a), w @ word
        rest = [t for t in range(start + 1, shape.k) if a.component(t) != (0, 0)]
        if not rest:
            break
        i = rest[0]
        s, t = _partner(*a.component(start), lead)
        c = [0] * shape.rank
        c[2 * start], c[2 * start + 1] = s, t
        c[2 * i], c[2 * i + 1] = a.component(i)
        sb = Transvection(GroupElement(shape, tuple(c)), 1)
        a, word = sb(a), _word_from(shape, (sb,)) @ word
    m, l = conjugate_to_multiple_of_u1(lead, a.component(start))
    assert l == 1
    fin = matrix_on_pair(m, HyperbolicPair(shape.u(start), shape.v(start)))
    word = fin @ word
    return word


def reduce_to_u1(a: GroupElement) -> TransvectionWord:
    """Word w with w(a) = u_1, for a of maximal order."""
    w = _reduce(a, 0)
    assert w(a) == a.shape.u(0)
    return w


# -- full factorization -------------------------------------------------------------

def factor_stages(M: Isometry) -> list[tuple[str, TransvectionWord]]:
    """Stage words L_1, L_2, ... (in order of application) with ... L_2 L_1 M = 1."""
    try:
        validate(M)
    except SympGradeError as exc:
        raise NotIsometry(str(exc)) from exc
    shape = M.shape
    sigma = M
    stages: list[tuple[str, TransvectionWord]] = []

    def push(name: str, w: TransvectionWord):
        nonlocal sigma
        stages.append((name, w))
        if len(w):
            sigma = compose(w.to_isometry(), sigma)

    for t in range(shape.k):
        lt = shape.moduli[t]
        ut, vt = shape.u(t), shape.v(t)
        push(f"reduce[{t}]", _reduce(sigma(ut), t))
        assert sigma(ut) == ut
        y = sigma(vt)
        phi = _word_from(shape, ())
        for i in range(t + 1, shape.k):
            m, _ = conjugate_to_multiple_of_u1(shape.moduli[i], y.component(i))
            phi = phi @ matrix_on_pair(m, HyperbolicPair(shape.u(i), shape.v(i)))
        push(f"clean[{t}]", phi)
        y = sigma(vt)
        tau = []
        for i in range(t + 1, shape.k):
            j, z = y.component(i)
            assert z == 0
            if j:
                tau.append(Transvection(ut + shape.u(i), j))
        push(f"shear[{t}]", _word_from(shape, tau))
        y = sigma(vt)
        assert all(y.component(i) == (0, 0) for i in range(shape.k) if i != t)
        c = y.component(t)[0]
        block = matrix_on_pair(((1, -c), (0, 1)), HyperbolicPair(ut, vt))
        push(f"block[{t}]", block)
    if sigma != identity(shape):
        raise AssertionError("factorization did not reach the identity")
    return stages


def factor_isometry(M: Isometry) -> TransvectionWord:
    """Transvection word whose product is M."""
    stages = factor_stages(M)
    total = _word_from(M.shape, ())
    for _, w in stages:
        total = w @ total
    out = total.inverse().simplified()
    if out.to_isometry() != M:
        raise AssertionError("recomposed word differs from input")
    return out
