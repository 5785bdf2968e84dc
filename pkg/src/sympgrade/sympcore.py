"""Finite nonsingular symplectic abelian groups in hyperbolic coordinates.

A group of shape ``[l1, ..., lk]`` is ``H_{l1} + ... + H_{lk}`` with
``H_l = Z_l x Z_l``.  Elements are stored as ``(u_1, v_1, ..., u_k, v_k)``.
Pairing values are l1-th roots of unity and are always carried as their
exponent in ``Z_{l1}``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    BoundExceeded,
    ChainViolation,
    DivisibilityViolation,
    ModulusTooSmall,
    NotCoprime,
    NotHyperbolic,
    NotOrthogonal,
    ShapeMismatch,
    SingularSubgroup,
)

DEFAULT_BOUND = 4096


@dataclass(frozen=True)
class Shape:
    moduli: tuple[int, ...]

    def __post_init__(self):
        mods = tuple(int(m) for m in self.moduli)
        object.__setattr__(self, "moduli", mods)
        if not mods:
            raise ModulusTooSmall("a shape needs at least one modulus")
        for m in mods:
            if m < 2:
                raise ModulusTooSmall(f"modulus {m} is smaller than 2")
        for i in range(1, len(mods)):
            if mods[i - 1] % mods[i]:
                raise ChainViolation(
                    f"{mods[i]} does not divide {mods[i - 1]} (positions {i}, {i + 1})"
                )

    @property
    def k(self) -> int:
        return len(self.moduli)

    @property
    def rank(self) -> int:
        return 2 * len(self.moduli)

    @property
    def exponent(self) -> int:
        return self.moduli[0]

    @property
    def order(self) -> int:
        return math.prod(m * m for m in self.moduli)

    @property
    def dim(self) -> int:
        """Matrix size n of the Pauli realization, n**2 == order."""
        return math.prod(self.moduli)

    @property
    def coord_moduli(self) -> tuple[int, ...]:
        return tuple(m for m in self.moduli for _ in (0, 1))

    def __str__(self):
        return "[" + ",".join(map(str, self.moduli)) + "]"

    # -- elements ---------------------------------------------------------
    def element(self, coords: Iterable[int]) -> "GroupElement":
        return GroupElement(self, tuple(coords))

    @property
    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank)

    def basis(self, r: int) -> "GroupElement":
        c = [0] * self.rank
        c[r] = 1
        return GroupElement(self, tuple(c))

    def u(self, i: int) -> "GroupElement":
        """Standard u of factor i (0-based)."""
        return self.basis(2 * i)

    def v(self, i: int) -> "GroupElement":
        return self.basis(2 * i + 1)

    def elements(self) -> Iterator["GroupElement"]:
        """All elements, in index order (lexicographic in coordinates)."""
        for c in itertools.product(*(range(m) for m in self.coord_moduli)):
            yield GroupElement(self, c)

    def index(self, coords: Sequence[int]) -> int:
        idx = 0
        for c, m in zip(coords, self.coord_moduli):
            idx = idx * m + c % m
        return idx

    def check_bound(self, bound: int = DEFAULT_BOUND):
        if self.order > bound:
            raise BoundExceeded(f"|H| = {self.order} exceeds bound {bound}")

    def to_json(self) -> list[int]:
        return list(self.moduli)


def make_shape(moduli: Iterable[int]) -> Shape:
    return Shape(tuple(moduli))


def parse_shape(text: str) -> Shape:
    return make_shape(int(x) for x in text.replace(" ", "").split(",") if x)


def shapes_of(n: int) -> list[Shape]:
    """Every valid shape whose moduli multiply to n (i.e. |H| = n**2)."""
    out = []

    def rec(rest, bound, acc):
        if rest == 1:
            if acc:
                out.append(Shape(tuple(acc)))
            return
        for d in range(min(rest, bound), 1, -1):
            if rest % d == 0 and (not acc or acc[-1] % d == 0):
                rec(rest // d, d, acc + [d])

    rec(n, n, [])
    return out


@lru_cache(maxsize=None)
def elements_array(shape: Shape) -> np.ndarray:
    """(|H|, 2k) array of all coordinate vectors in index order."""
    grids = np.indices(shape.coord_moduli).reshape(shape.rank, -1).T
    return np.ascontiguousarray(grids, dtype=np.int64)


@lru_cache(maxsize=None)
def index_strides(shape: Shape) -> np.ndarray:
    mods = shape.coord_moduli
    strides = [1] * len(mods)
    for r in range(len(mods) - 2, -1, -1):
        strides[r] = strides[r + 1] * mods[r + 1]
    return np.array(strides, dtype=np.int64)


@dataclass(frozen=True)
class GroupElement:
    shape: Shape
    coords: tuple[int, ...]

    def __post_init__(self):
        mods = self.shape.coord_moduli
        if len(self.coords) != len(mods):
            raise ShapeMismatch(
                f"{len(self.coords)} coordinates given for shape {self.shape}"
            )
        object.__setattr__(
            self, "coords", tuple(int(c) % m for c, m in zip(self.coords, mods))
        )

    def _same(self, other: "GroupElement"):
        if not isinstance(other, GroupElement) or other.shape != self.shape:
            raise ShapeMismatch("elements belong to different shapes")

    def __add__(self, other):
        self._same(other)
        return GroupElement(self.shape, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._same(other)
        return GroupElement(self.shape, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return GroupElement(self.shape, tuple(-a for a in self.coords))

    def __rmul__(self, k: int):
        return GroupElement(self.shape, tuple(k * a for a in self.coords))

    __mul__ = __rmul__

    def __bool__(self):
        return any(self.coords)

    def __lt__(self, other):
        return self.coords < other.coords

    def component(self, i: int) -> tuple[int, int]:
        return self.coords[2 * i], self.coords[2 * i + 1]

    @property
    def index(self) -> int:
        return self.shape.index(self.coords)

    @property
    def order(self) -> int:
        return element_order(self)

    def to_json(self) -> list[int]:
        return list(self.coords)

    def __repr__(self):
        return f"GroupElement({self.shape}, {list(self.coords)})"


def element_from_json(shape: Shape, data: Sequence[int]) -> GroupElement:
    return GroupElement(shape, tuple(data))


def pair(a: GroupElement, b: GroupElement) -> int:
    """Exponent e with <a, b> = omega_{l1}^e."""
    a._same(b)
    l1 = a.shape.exponent
    e = 0
    for i, li in enumerate(a.shape.moduli):
        ua, va = a.coords[2 * i], a.coords[2 * i + 1]
        ub, vb = b.coords[2 * i], b.coords[2 * i + 1]
        e += (l1 // li) * (ua * vb - va * ub)
    return e % l1


def element_order(a: GroupElement) -> int:
    order = 1
    for i, li in enumerate(a.shape.moduli):
        u, v = a.component(i)
        order = math.lcm(order, li // math.gcd(li, u, v))
    return order


def root_order(e: int, l1: int) -> int:
    """Multiplicative order of omega_{l1}^e."""
    return l1 // math.gcd(e % l1, l1)


def scalar_exponent(e: int, l1: int, m: int) -> int:
    """Rewrite omega_{l1}^e in base omega_m, where m | l1.

    This is the integer j of the scalar action omega_m^j . a = j a for an
    element a of order m.
    """
    step = l1 // m
    if l1 % m or e % step:
        raise DivisibilityViolation(
            f"omega_{l1}^{e} is not a power of omega_{m}"
        )
    return (e // step) % m


def root_act(e: int, a: GroupElement) -> GroupElement:
    """omega^e . a, with the pairing exponent e taken base omega_{l1}."""
    m = element_order(a)
    return scalar_exponent(e, a.shape.exponent, m) * a


@dataclass(frozen=True)
class HyperbolicPair:
    a: GroupElement
    b: GroupElement

    def __post_init__(self):
        self.a._same(self.b)
        n = element_order(self.a)
        if n < 2 or element_order(self.b) != n:
            raise NotHyperbolic(f"orders {n} and {element_order(self.b)} differ or are trivial")
        if pair(self.a, self.b) != self.a.shape.exponent // n:
            raise NotHyperbolic(f"<a,b> is not omega_{n}")

    @property
    def order(self) -> int:
        return element_order(self.a)

    @property
    def shape(self) -> Shape:
        return self.a.shape


def standard_pairs(shape: Shape) -> list[HyperbolicPair]:
    return [HyperbolicPair(shape.u(i), shape.v(i)) for i in range(shape.k)]


def _check_orthogonal(pairs: Sequence[HyperbolicPair]):
    for i, p in enumerate(pairs):
        for q in pairs[i + 1:]:
            for x in (p.a, p.b):
                for y in (q.a, q.b):
                    if pair(x, y):
                        raise NotOrthogonal("hyperbolic pairs are not mutually orthogonal")


def projection(h0_pairs: Sequence[HyperbolicPair], c: GroupElement) -> GroupElement:
    """Project c onto the span of the given orthogonal hyperbolic pairs."""
    pairs = [p if isinstance(p, HyperbolicPair) else HyperbolicPair(*p) for p in h0_pairs]
    _check_orthogonal(pairs)
    out = c.shape.zero
    for p in pairs:
        out = out + root_act(pair(c, p.b), p.a) - root_act(pair(c, p.a), p.b)
    return out


def crt_combine(p: HyperbolicPair, q: HyperbolicPair) -> HyperbolicPair:
    """Merge orthogonal hyperbolic pairs of coprime orders m, n into one of order mn."""
    m, n = p.order, q.order
    if math.gcd(m, n) != 1:
        raise NotCoprime(f"gcd({m}, {n}) != 1")
    _check_orthogonal([p, q])
    a = p.a + q.a
    b0 = p.b + q.b
    # <a, b0> = omega_m omega_n = omega_{mn}^{m+n}
    j = scalar_exponent(pair(a, b0), a.shape.exponent, m * n)
    i = pow(j, -1, m * n)
    return HyperbolicPair(a, i * b0)


def crt_hyperbolic(m: int, n: int) -> HyperbolicPair:
    """A hyperbolic pair of order mn inside H_m + H_n, realized in shape [mn].

    The summands H_m and H_n are the m- and n-torsion of H_{mn}.
    """
    if math.gcd(m, n) != 1:
        raise NotCoprime(f"gcd({m}, {n}) != 1")
    shape = Shape((m * n,))
    u, v = shape.u(0), shape.v(0)
    pm = HyperbolicPair(n * u, (n * pow(n, -1, m)) * v)
    pn = HyperbolicPair(m * u, (m * pow(m, -1, n)) * v)
    return crt_combine(pm, pn)


class SubgroupView:
    """Subgroup of a shaped group given by generators.

    Elements are materialized lazily and only up to ``bound``.
    """

    def __init__(self, shape: Shape, generators: Iterable[GroupElement] = (), bound: int = DEFAULT_BOUND):
        self.shape = shape
        self.generators = tuple(generators)
        for g in self.generators:
            if g.shape != shape:
                raise ShapeMismatch("generator from another shape")
        self.bound = bound

    @classmethod
    def whole(cls, shape: Shape, bound: int = DEFAULT_BOUND) -> "SubgroupView":
        return cls(shape, [shape.basis(r) for r in range(shape.rank)], bound)

    @cached_property
    def elements(self) -> frozenset[GroupElement]:
        current = {self.shape.zero}
        for g in self.generators:
            if g in current:
                continue
            m = element_order(g)
            multiples = [j * g for j in range(m)]
            current = {x + y for x in current for y in multiples}
            if len(current) > self.bound:
                raise BoundExceeded(f"subgroup has more than {self.bound} elements")
        return frozenset(current)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, a: GroupElement) -> bool:
        return a in self.elements

    def is_nonsingular(self) -> bool:
        els = self.elements
        for a in els:
            if a and not any(pair(a, b) for b in els):
                return False
        return True

    def sorted_elements(self) -> list[GroupElement]:
        return sorted(self.elements, key=lambda x: x.coords)


def minimal_generators(shape: Shape, elements: Iterable[GroupElement], bound: int = DEFAULT_BOUND) -> list[GroupElement]:
    """Greedy generating set: keep an element when it is outside the current span."""
    gens: list[GroupElement] = []
    span = SubgroupView(shape, gens, bound)
    for a in sorted(elements, key=lambda x: x.coords):
        if a not in span:
            gens.append(a)
            span = SubgroupView(shape, gens, bound)
    return gens


def orthocomplement(h0: SubgroupView) -> SubgroupView:
    shape = h0.shape
    shape.check_bound(h0.bound)
    if not h0.is_nonsingular():
        raise SingularSubgroup("pairing restricted to H_0 is singular")
    gens = [g for g in h0.generators if g]
    perp = [a for a in shape.elements() if all(pair(a, g) == 0 for g in gens)]
    if len(perp) * h0.order != shape.order:
        raise SingularSubgroup("|H_0| |H_0^perp| != |H|")
    return SubgroupView(shape, minimal_generators(shape, perp, h0.bound), h0.bound)


def canonical_decompose(s: SubgroupView) -> list[HyperbolicPair]:
    """Split a nonsingular subgroup into orthogonal hyperbolic pairs of decreasing order."""
    l1 = s.shape.exponent
    rest = s.sorted_elements()
    pairs: list[HyperbolicPair] = []
    while len(rest) > 1:
        m = max(element_order(x) for x in rest)
        a = next(x for x in rest if element_order(x) == m)
        b = next((y for y in rest if root_order(pair(a, y), l1) == m), None)
        if b is None:
            raise SingularSubgroup(f"{a} has no partner in the subgroup")
        t = scalar_exponent(pair(a, b), l1, m)
        p = HyperbolicPair(a, pow(t, -1, m) * b)
        pairs.append(p)
        rest = sorted({c - projection([p], c) for c in rest}, key=lambda x: x.coords)
    return pairs
