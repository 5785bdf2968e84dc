"""Isometries of shaped groups, transvections, and the group they generate.

An isometry is stored as an integer matrix ``M`` whose column ``c`` holds
the coordinates of the image of basis vector ``e_c``; row ``r`` is reduced
modulo the modulus of coordinate ``r``.  Below the materialization bound it
can also be viewed as a permutation table of the group elements.
"""
from __future__ import annotations

import math
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field

import numpy as np

from .errors import BoundExceeded, IllFormedHom, NotIsometry, ShapeMismatch
from .sympcore import (
    DEFAULT_BOUND,
    GroupElement,
    HyperbolicPair,
    Shape,
    element_order,
    elements_array,
    index_strides,
    pair,
    scalar_exponent,
)

Matrix = tuple[tuple[int, ...], ...]


def _reduce(shape: Shape, rows: Iterable[Iterable[int]]) -> Matrix:
    mods = shape.coord_moduli
    out = tuple(tuple(int(x) % mods[r] for x in row) for r, row in enumerate(rows))
    if len(out) != shape.rank or any(len(row) != shape.rank for row in out):
        raise ShapeMismatch(f"matrix must be {shape.rank}x{shape.rank} for shape {shape}")
    return out


@dataclass(frozen=True)
class Isometry:
    shape: Shape
    matrix: Matrix
    word: "TransvectionWord | None" = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "matrix", _reduce(self.shape, self.matrix))

    def column(self, c: int) -> GroupElement:
        return GroupElement(self.shape, tuple(row[c] for row in self.matrix))

    def __call__(self, a: GroupElement) -> GroupElement:
        return apply(self, a)

    def __matmul__(self, other: "Isometry") -> "Isometry":
        return compose(self, other)

    def to_json(self) -> dict:
        return {"shape": self.shape.to_json(), "matrix": [list(r) for r in self.matrix]}


def isometry_from_json(data: dict) -> Isometry:
    return Isometry(Shape(tuple(data["shape"])), tuple(tuple(r) for r in data["matrix"]))


def identity(shape: Shape) -> Isometry:
    n = shape.rank
    return Isometry(shape, tuple(tuple(int(r == c) for c in range(n)) for r in range(n)))


def from_images(images: Sequence[GroupElement]) -> Isometry:
    """Isometry sending e_c to images[c] (not validated)."""
    shape = images[0].shape
    return Isometry(shape, tuple(tuple(img.coords[r] for img in images) for r in range(shape.rank)))


def validate(M: Isometry) -> Isometry:
    shape = M.shape
    mods = shape.coord_moduli
    for r in range(shape.rank):
        for c in range(shape.rank):
            step = mods[r] // math.gcd(mods[r], mods[c])
            if M.matrix[r][c] % step:
                raise IllFormedHom(f"entry ({r},{c}) is not a multiple of {step}")
    cols = [M.column(c) for c in range(shape.rank)]
    for r in range(shape.rank):
        for c in range(r + 1, shape.rank):
            if pair(cols[r], cols[c]) != pair(shape.basis(r), shape.basis(c)):
                raise NotIsometry(f"pairing of e_{r}, e_{c} not preserved")
    return M


def is_isometry(M: Isometry) -> bool:
    try:
        validate(M)
    except (IllFormedHom, NotIsometry):
        return False
    return True


def apply(M: Isometry, a: GroupElement) -> GroupElement:
    if a.shape != M.shape:
        raise ShapeMismatch("element and isometry have different shapes")
    return GroupElement(M.shape, tuple(sum(x * y for x, y in zip(row, a.coords)) for row in M.matrix))


def compose(M1: Isometry, M2: Isometry) -> Isometry:
    """M1 after M2."""
    if M1.shape != M2.shape:
        raise ShapeMismatch("isometries of different shapes")
    n = M1.shape.rank
    rows = tuple(
        tuple(sum(M1.matrix[r][j] * M2.matrix[j][c] for j in range(n)) for c in range(n))
        for r in range(n)
    )
    word = None
    if M1.word is not None and M2.word is not None:
        word = M1.word @ M2.word
    return Isometry(M1.shape, rows, word)


def inverse(M: Isometry, bound: int = DEFAULT_BOUND) -> Isometry:
    if M.word is not None:
        w = M.word.inverse()
        return Isometry(M.shape, w.to_isometry().matrix, w)
    M.shape.check_bound(bound)
    perm = permutation(M)
    inv = np.empty_like(perm)
    inv[perm] = np.arange(len(perm))
    els = elements_array(M.shape)
    strides = index_strides(M.shape)
    images = [GroupElement(M.shape, tuple(els[inv[int(strides[c])]])) for c in range(M.shape.rank)]
    return from_images(images)


def permutation(M: Isometry, bound: int = DEFAULT_BOUND) -> np.ndarray:
    """perm[i] = index of M(x_i), over all elements in index order."""
    M.shape.check_bound(bound)
    els = elements_array(M.shape)
    mat = np.array(M.matrix, dtype=np.int64)
    mods = np.array(M.shape.coord_moduli, dtype=np.int64)
    img = (els @ mat.T) % mods
    return img @ index_strides(M.shape)


# -- transvections ------------------------------------------------------------

@dataclass(frozen=True)
class Transvection:
    """s_{b,k}: a -> a - k (<b,a> . b)."""

    b: GroupElement
    k: int = 1

    def __post_init__(self):
        if not self.b:
            raise ValueError("transvection base must be nonzero")
        object.__setattr__(self, "k", int(self.k) % element_order(self.b))

    def __call__(self, a: GroupElement) -> GroupElement:
        return transvection_apply(self, a)

    def to_json(self) -> dict:
        return {"b": self.b.to_json(), "k": self.k}


def transvection_apply(t: Transvection, a: GroupElement) -> GroupElement:
    if not t.k:
        return a
    m = element_order(t.b)
    j = scalar_exponent(pair(t.b, a), a.shape.exponent, m)
    return a - (t.k * j) * t.b


def transvection_matrix(t: Transvection) -> Isometry:
    shape = t.b.shape
    return from_images([transvection_apply(t, shape.basis(c)) for c in range(shape.rank)])


@dataclass(frozen=True)
class TransvectionWord:
    """Product t_0 t_1 ... t_r; the rightmost factor acts first."""

    shape: Shape
    items: tuple[Transvection, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))
        for t in self.items:
            if t.b.shape != self.shape:
                raise ShapeMismatch("transvection from another shape")

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __matmul__(self, other: "TransvectionWord") -> "TransvectionWord":
        return TransvectionWord(self.shape, self.items + other.items)

    def __call__(self, a: GroupElement) -> GroupElement:
        for t in reversed(self.items):
            a = transvection_apply(t, a)
        return a

    def inverse(self) -> "TransvectionWord":
        return TransvectionWord(self.shape, tuple(Transvection(t.b, -t.k) for t in reversed(self.items)))

    def to_isometry(self) -> Isometry:
        images = [self(self.shape.basis(c)) for c in range(self.shape.rank)]
        return Isometry(self.shape, from_images(images).matrix, self)

    def simplified(self) -> "TransvectionWord":
        """Merge adjacent factors sharing a base and drop trivial ones."""
        out: list[Transvection] = []
        for t in self.items:
            if out and out[-1].b == t.b:
                k = out.pop().k + t.k
                t = Transvection(t.b, k)
            if t.k:
                out.append(t)
        return TransvectionWord(self.shape, tuple(out))

    def to_json(self) -> dict:
        return {"shape": self.shape.to_json(), "word": [t.to_json() for t in self.items]}


def word_from_json(data: dict, shape: Shape | None = None) -> TransvectionWord:
    if shape is None:
        shape = Shape(tuple(data["shape"]))
    items = tuple(Transvection(GroupElement(shape, tuple(t["b"])), t["k"]) for t in data["word"])
    return TransvectionWord(shape, items)


def word_of(shape: Shape, *items: Transvection | tuple[GroupElement, int]) -> TransvectionWord:
    ts = tuple(t if isinstance(t, Transvection) else Transvection(*t) for t in items)
    return TransvectionWord(shape, ts)


def random_word(shape: Shape, length: int, rng: np.random.Generator) -> TransvectionWord:
    items = []
    for _ in range(length):
        while True:
            b = GroupElement(shape, tuple(int(rng.integers(m)) for m in shape.coord_moduli))
            if b:
                break
        items.append(Transvection(b, int(rng.integers(element_order(b)))))
    return TransvectionWord(shape, tuple(items))


# -- vectorized tables ----------------------------------------------------------

def pair_table(shape: Shape) -> np.ndarray:
    """T[i, j] = pair exponent of elements i and j."""
    els = elements_array(shape)
    l1 = shape.exponent
    w = np.array([l1 // m for m in shape.moduli], dtype=np.int64)
    u, v = els[:, 0::2], els[:, 1::2]
    return ((u * w) @ v.T - (v * w) @ u.T) % l1


def order_vector(shape: Shape) -> np.ndarray:
    els = elements_array(shape)
    out = np.ones(len(els), dtype=np.int64)
    for i, m in enumerate(shape.moduli):
        g = np.gcd(np.gcd(els[:, 2 * i], els[:, 2 * i + 1]), m)
        out = np.lcm(out, m // g)
    return out


def transvection_tables(shape: Shape, bound: int = DEFAULT_BOUND) -> np.ndarray:
    """Permutation tables of s_b for every nonzero b, in index order of b."""
    shape.check_bound(bound)
    els = elements_array(shape)
    mods = np.array(shape.coord_moduli, dtype=np.int64)
    strides = index_strides(shape)
    ptab = pair_table(shape)
    orders = order_vector(shape)
    l1 = shape.exponent
    out = np.empty((len(els) - 1, len(els)), dtype=np.int64)
    for bi in range(1, len(els)):
        step = l1 // orders[bi]
        j = ptab[bi] // step
        img = (els - j[:, None] * els[bi]) % mods
        out[bi - 1] = img @ strides
    return out


def tables_from_images(shape: Shape, images: np.ndarray) -> np.ndarray:
    """Permutation tables for isometries given by basis-image index rows."""
    els = elements_array(shape)
    mods = np.array(shape.coord_moduli, dtype=np.int64)
    strides = index_strides(shape)
    cols = els[images]  # (g, 2k images, 2k coords)
    img = np.einsum("xc,gcr->gxr", els, cols) % mods
    return img @ strides


def _basis_index(shape: Shape) -> np.ndarray:
    return index_strides(shape).copy()


def _keys(images: np.ndarray, size: int) -> np.ndarray:
    key = np.zeros(len(images), dtype=np.int64)
    for c in range(images.shape[1]):
        key = key * size + images[:, c]
    return key


def sp_images(shape: Shape, bound: int = DEFAULT_BOUND, max_count: int = 10**7) -> np.ndarray:
    """Backtracking enumeration of Sp(H) as rows of basis-image indices.

    Row g, column c is the element index of the image of e_c.
    """
    shape.check_bound(bound)
    ptab = pair_table(shape)
    orders = order_vector(shape)
    mods = shape.coord_moduli
    basis = _basis_index(shape)
    gram = ptab[np.ix_(basis, basis)]
    cands = {m: np.flatnonzero(orders == m) for m in set(mods)}
    rank = shape.rank
    results: list[np.ndarray] = []
    total = 0

    def rec(level: int, placed: list[int]):
        nonlocal total
        c = cands[mods[level]]
        for j, img in enumerate(placed):
            c = c[ptab[c, img] == gram[level, j]]
        if level == rank - 1:
            if len(c):
                block = np.empty((len(c), rank), dtype=np.int64)
                block[:, :-1] = placed
                block[:, -1] = c
                results.append(block)
                total += len(c)
                if total > max_count:
                    raise BoundExceeded(f"|Sp(H)| exceeds {max_count}")
            return
        for x in c:
            rec(level + 1, placed + [int(x)])

    rec(0, [])
    if not results:
        return np.empty((0, rank), dtype=np.int64)
    out = np.concatenate(results)
    return out[np.argsort(_keys(out, shape.order), kind="stable")]


def sp_enumerate(shape: Shape, bound: int = DEFAULT_BOUND, max_count: int = 10**7) -> int:
    """|Sp(H)| by backtracking over images of the standard generators."""
    return len(sp_images(shape, bound, max_count))


def sp_elements(shape: Shape, bound: int = DEFAULT_BOUND) -> Iterator[Isometry]:
    els = elements_array(shape)
    for row in sp_images(shape, bound):
        yield from_images([GroupElement(shape, tuple(els[i])) for i in row])


def q_closure_images(shape: Shape, bound: int = DEFAULT_BOUND, max_count: int = 10**7) -> np.ndarray:
    """Breadth-first closure of {s_b : b != 0}, as sorted basis-image rows."""
    gens = transvection_tables(shape, bound)
    size = shape.order
    start = _basis_index(shape)[None, :]
    seen = _keys(start, size)
    frontier = start
    found = [start]
    while len(frontier):
        cand = gens[:, frontier].reshape(-1, shape.rank)
        keys, first = np.unique(_keys(cand, size), return_index=True)
        fresh = ~np.isin(keys, seen, assume_unique=True)
        frontier = cand[first[fresh]]
        seen = np.union1d(seen, keys[fresh])
        found.append(frontier)
        if len(seen) > max_count:
            raise BoundExceeded(f"closure exceeds {max_count} elements")
    out = np.concatenate(found)
    return out[np.argsort(_keys(out, size), kind="stable")]


def q_closure(shape: Shape, bound: int = DEFAULT_BOUND, max_count: int = 10**7) -> np.ndarray:
    """Q(H) as lexicographically sorted permutation tables (one row each)."""
    tables = tables_from_images(shape, q_closure_images(shape, bound, max_count))
    return _sort_rows(tables)


def sp_tables(shape: Shape, bound: int = DEFAULT_BOUND, max_count: int = 10**7) -> np.ndarray:
    return _sort_rows(tables_from_images(shape, sp_images(shape, bound, max_count)))


def _sort_rows(a: np.ndarray) -> np.ndarray:
    return a[np.lexsort(a.T[::-1])]


# -- orbits ----------------------------------------------------------------------

def _as_tables(shape: Shape, generators, bound: int) -> np.ndarray:
    if generators is None:
        return transvection_tables(shape, bound)
    if isinstance(generators, np.ndarray):
        return generators
    return np.array([permutation(g, bound) for g in generators], dtype=np.int64)


def orbit(generators, a: GroupElement, bound: int = DEFAULT_BOUND) -> set[GroupElement]:
    """Orbit of a; generators=None means all transvections s_b."""
    shape = a.shape
    shape.check_bound(bound)
    tables = _as_tables(shape, generators, bound)
    seen = np.zeros(shape.order, dtype=bool)
    frontier = np.array([a.index])
    seen[frontier] = True
    while len(frontier):
        nxt = np.unique(tables[:, frontier])
        frontier = nxt[~seen[nxt]]
        seen[frontier] = True
    els = elements_array(shape)
    return {GroupElement(shape, tuple(els[i])) for i in np.flatnonzero(seen)}


def pair_orbit_keys(shape: Shape, a: GroupElement, b: GroupElement, generators=None, bound: int = DEFAULT_BOUND) -> np.ndarray:
    """Orbit of the ordered pair (a, b), encoded as index_a * |H| + index_b."""
    shape.check_bound(bound)
    tables = _as_tables(shape, generators, bound)
    size = shape.order
    seen = np.array([a.index * size + b.index])
    frontier = seen
    while len(frontier):
        ia, ib = frontier // size, frontier % size
        keys = np.unique(tables[:, ia] * size + tables[:, ib])
        frontier = keys[~np.isin(keys, seen, assume_unique=True)]
        seen = np.union1d(seen, frontier)
    return seen


def hyperbolic_pair_keys(shape: Shape, n: int, bound: int = DEFAULT_BOUND) -> np.ndarray:
    """All hyperbolic pairs of order n, encoded like pair_orbit_keys."""
    shape.check_bound(bound)
    ptab = pair_table(shape)
    orders = order_vector(shape)
    idx = np.flatnonzero(orders == n)
    sub = ptab[np.ix_(idx, idx)] == shape.exponent // n
    ia, ib = np.nonzero(sub)
    return np.sort(idx[ia] * shape.order + idx[ib])


def maximal_order_elements(shape: Shape) -> set[GroupElement]:
    return {a for a in shape.elements() if element_order(a) == shape.exponent}


def pair_from_key(shape: Shape, key: int) -> HyperbolicPair:
    els = elements_array(shape)
    i, j = divmod(int(key), shape.order)
    return HyperbolicPair(GroupElement(shape, tuple(els[i])), GroupElement(shape, tuple(els[j])))


def sl2_count(n: int) -> int:
    """|SL(2, Z_n)| by direct enumeration of 2x2 matrices mod n."""
    r = np.arange(n)
    a, b, c, d = np.meshgrid(r, r, r, r, indexing="ij")
    return int(np.count_nonzero((a * d - b * c) % n == 1 % n))


def sl2_order_formula(n: int) -> int:
    out = n ** 3
    p, m = 2, n
    primes = []
    while p * p <= m:
        if m % p == 0:
            primes.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        primes.append(m)
    for p in primes:
        out = out * (p * p - 1) // (p * p)
    return out
