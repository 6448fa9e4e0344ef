"""Finite rings given by their addition and multiplication tables.

Elements are the integers ``0..n-1`` and element 0 is always the additive
identity.  A multiplicative unity is not required.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator, Sequence

import numpy as np

from commring.errors import (
    NotAbelianGroup,
    NotAssociativeMul,
    NotDistributive,
    NotPrime,
    OverflowGuard,
    RingFormatError,
    TableShapeError,
)

FORMAT_TAG = "commring/1"
DEFAULT_PRODUCT_CAP = 4096


@dataclass(frozen=True)
class ElementSet:
    """A subset of a ring of order ``order``, stored as a bit-vector."""

    order: int
    bits: int

    @classmethod
    def of(cls, order: int, elements: Iterable[int]) -> "ElementSet":
        bits = 0
        for e in elements:
            if not 0 <= e < order:
                raise ValueError(f"element {e} out of range for order {order}")
            bits |= 1 << e
        return cls(order, bits)

    def __contains__(self, a: int) -> bool:
        return 0 <= a < self.order and (self.bits >> a) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        b = self.bits
        while b:
            low = b & -b
            yield low.bit_length() - 1
            b ^= low

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __and__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.order, self.bits & other.bits)

    def __or__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.order, self.bits | other.bits)

    def __repr__(self) -> str:
        return f"ElementSet({sorted(self)})"


@dataclass(frozen=True, eq=False)
class FiniteRing:
    """A finite ring as a pair of ``n x n`` operation tables.

    Construct through :func:`validate_ring` unless the tables are known to
    satisfy the axioms (as for the presentations and direct products).
    """

    order: int
    add: tuple[tuple[int, ...], ...]
    mul: tuple[tuple[int, ...], ...]
    name: str = field(default="", compare=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteRing):
            return NotImplemented
        return self.order == other.order and self.add == other.add and self.mul == other.mul

    def __hash__(self) -> int:
        return hash((self.order, self.add, self.mul))

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<FiniteRing{label} order={self.order}>"

    @cached_property
    def add_array(self) -> np.ndarray:
        return np.array(self.add, dtype=np.int64).reshape(self.order, self.order)

    @cached_property
    def mul_array(self) -> np.ndarray:
        return np.array(self.mul, dtype=np.int64).reshape(self.order, self.order)

    @cached_property
    def commute_rows(self) -> tuple[int, ...]:
        """Row ``a`` is the bit-vector of the centralizer of ``a``."""
        m = self.mul_array
        eq = m == m.T
        rows = []
        for a in range(self.order):
            bits = 0
            for b in np.flatnonzero(eq[a]):
                bits |= 1 << int(b)
            rows.append(bits)
        return tuple(rows)

    @cached_property
    def neg(self) -> tuple[int, ...]:
        return tuple(int(np.flatnonzero(self.add_array[a] == 0)[0]) for a in range(self.order))

    def plus(self, a: int, b: int) -> int:
        return self.add[a][b]

    def times(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def multiple(self, k: int, a: int) -> int:
        """``k*a`` for a non-negative integer ``k``."""
        acc = 0
        for _ in range(k):
            acc = self.add[acc][a]
        return acc


def _as_table(t, name: str) -> np.ndarray:
    try:
        arr = np.asarray(t, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise TableShapeError(f"{name} table is not a rectangular integer array") from exc
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise TableShapeError(f"{name} table must be square and non-empty, got shape {arr.shape}")
    return arr


def _first(mask: np.ndarray) -> tuple[int, ...]:
    return tuple(int(i) for i in np.argwhere(mask)[0])


def validate_ring(add, mul, name: str = "") -> FiniteRing:
    """Check the ring axioms on a pair of tables and wrap them.

    Raises :class:`NotAbelianGroup`, :class:`NotDistributive` or
    :class:`NotAssociativeMul` naming the first failing pair or triple in
    row-major order.
    """
    A = _as_table(add, "add")
    M = _as_table(mul, "mul")
    n = A.shape[0]
    if M.shape != A.shape:
        raise TableShapeError(f"add is {A.shape} but mul is {M.shape}")
    for arr, label in ((A, "add"), (M, "mul")):
        if arr.min() < 0 or arr.max() >= n:
            raise TableShapeError(f"{label} table has entries outside 0..{n - 1}")

    idx = np.arange(n)
    bad = (A[0] != idx) | (A[:, 0] != idx)
    if bad.any():
        a = int(np.flatnonzero(bad)[0])
        raise NotAbelianGroup((0, a), "0 is not the additive identity")
    if (A != A.T).any():
        raise NotAbelianGroup(_first(A != A.T), "addition is not commutative")
    assoc = A[A] != A[:, A]
    if assoc.any():
        raise NotAbelianGroup(_first(assoc), "addition is not associative")
    no_inverse = ~(A == 0).any(axis=1)
    if no_inverse.any():
        raise NotAbelianGroup((int(np.flatnonzero(no_inverse)[0]),), "element has no additive inverse")

    left = M[:, A] != A[M[:, :, None], M[:, None, :]]
    if left.any():
        raise NotDistributive(_first(left), "a*(b+c) != a*b + a*c")
    right = M[A] != A[M[:, None, :], M[None, :, :]]
    if right.any():
        raise NotDistributive(_first(right), "(a+b)*c != a*c + b*c")

    assoc = M[M] != M[:, M]
    if assoc.any():
        raise NotAssociativeMul(_first(assoc), "(a*b)*c != a*(b*c)")

    return FiniteRing(n, _freeze(A), _freeze(M), name)


def _freeze(arr) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in np.asarray(arr))


# ---------------------------------------------------------------- structure

def centralizer(R: FiniteRing, a: int) -> ElementSet:
    if not 0 <= a < R.order:
        raise ValueError(f"element {a} out of range")
    return ElementSet(R.order, R.commute_rows[a])


def center(R: FiniteRing) -> ElementSet:
    bits = 0
    full = (1 << R.order) - 1
    for a, row in enumerate(R.commute_rows):
        if row == full:
            bits |= 1 << a
    return ElementSet(R.order, bits)


def is_commutative(R: FiniteRing) -> bool:
    m = R.mul_array
    return bool((m == m.T).all())


def additive_order(R: FiniteRing, a: int) -> int:
    if not 0 <= a < R.order:
        raise ValueError(f"element {a} out of range")
    k, acc = 1, a
    while acc != 0:
        acc = R.add[acc][a]
        k += 1
    return k


# ----------------------------------------------------------- constructions

def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def mixed_radix_elements(moduli: Sequence[int]) -> list[tuple[int, ...]]:
    """Coordinate tuples in lexicographic order; index ``i`` is element ``i``."""
    return list(product(*(range(d) for d in moduli)))


def coordinate_index(coords: Sequence[int], moduli: Sequence[int]) -> int:
    idx = 0
    for c, d in zip(coords, moduli):
        idx = idx * d + c
    return idx


def bilinear_ring(moduli: Sequence[int], gen_products, name: str = "") -> FiniteRing:
    """Ring on ``Z_{d_1} + ... + Z_{d_k}`` with ``e_i * e_j = gen_products[i][j]``.

    ``gen_products[i][j]`` is a coordinate tuple. Multiplication is extended
    bilinearly; no axiom is checked here, pass the result through
    :func:`validate_ring` when the products are not known to be associative.
    """
    moduli = tuple(int(d) for d in moduli)
    k = len(moduli)
    coords = np.array(mixed_radix_elements(moduli), dtype=np.int64).reshape(-1, k)
    n = coords.shape[0]
    mods = np.array(moduli, dtype=np.int64)
    c = np.array(gen_products, dtype=np.int64).reshape(k, k, k)
    weights = np.array([int(np.prod(moduli[i + 1:])) for i in range(k)], dtype=np.int64)

    add_coords = (coords[:, None, :] + coords[None, :, :]) % mods
    prod_coords = np.einsum("ai,bj,ijl->abl", coords, coords, c) % mods
    add = add_coords @ weights
    mul = prod_coords @ weights
    assert add.shape == (n, n)
    return FiniteRing(n, _freeze(add), _freeze(mul), name)


def zero_ring(n: int, name: str = "") -> FiniteRing:
    """``Z_n`` with identically zero multiplication."""
    return bilinear_ring((n,), [[[0]]], name or f"Z{n}zero")


def cyclic_ring(n: int, name: str = "") -> FiniteRing:
    """The unital ring ``Z_n``."""
    return bilinear_ring((n,), [[[1 % n]]], name or f"Z{n}")


def _presentation(p: int, left: bool, label: str) -> FiniteRing:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    basis = [(1, 0), (0, 1)]  # x, y
    prods = [[basis[i] if left else basis[j] for j in range(2)] for i in range(2)]
    return bilinear_ring((p, p), prods, f"{label}_{p}")


def presentation_E(p: int) -> FiniteRing:
    """``<x, y : px = py = 0, x^2 = x, y^2 = y, xy = x, yx = y>``.

    Element ``a*x + b*y`` has index ``a*p + b``.
    """
    return _presentation(p, True, "E")


def presentation_F(p: int) -> FiniteRing:
    """As :func:`presentation_E` with ``xy = y, yx = x``."""
    return _presentation(p, False, "F")


def functional_ring(p: int, k: int, left: bool = True) -> FiniteRing:
    """``F_p^k`` with ``u*v = eps(v) u`` (``left``) or ``u*v = eps(u) v``,
    where ``eps`` sums the coordinates.

    For ``k = 2`` these are exactly :func:`presentation_E` and
    :func:`presentation_F`; for every ``k >= 2`` the center is zero.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise ValueError("k must be positive")
    basis = [tuple(int(i == j) for j in range(k)) for i in range(k)]
    prods = [[basis[i] if left else basis[j] for j in range(k)] for i in range(k)]
    return bilinear_ring((p,) * k, prods, f"{'E' if left else 'F'}_{p}^{k}")


def direct_product(rings: Sequence[FiniteRing], cap: int = DEFAULT_PRODUCT_CAP) -> FiniteRing:
    """Componentwise product; tuple ``(e_1, ..., e_t)`` has mixed-radix index
    with the first factor most significant."""
    rings = list(rings)
    if not rings:
        raise ValueError("direct_product needs at least one ring")
    if len(rings) == 1:
        return rings[0]
    n = 1
    for R in rings:
        n *= R.order
    if n > cap:
        raise OverflowGuard(f"product order {n} exceeds cap {cap}")
    A = np.zeros((1, 1), dtype=np.int64)
    M = np.zeros((1, 1), dtype=np.int64)
    for R in rings:
        k = R.order
        A = (A[:, None, :, None] * k + R.add_array[None, :, None, :]).reshape(A.shape[0] * k, -1)
        M = (M[:, None, :, None] * k + R.mul_array[None, :, None, :]).reshape(M.shape[0] * k, -1)
    name = "x".join(R.name or f"R{R.order}" for R in rings)
    return FiniteRing(n, _freeze(A), _freeze(M), name)


def relabel(R: FiniteRing, perm: Sequence[int], name: str = "") -> FiniteRing:
    """The isomorphic copy in which element ``a`` is renamed ``perm[a]``.

    ``perm[0]`` must be 0.
    """
    perm = np.asarray(perm, dtype=np.int64)
    if perm[0] != 0 or sorted(perm.tolist()) != list(range(R.order)):
        raise ValueError("perm must be a permutation fixing 0")
    inv = np.argsort(perm)
    A = perm[R.add_array[np.ix_(inv, inv)]]
    M = perm[R.mul_array[np.ix_(inv, inv)]]
    return FiniteRing(R.order, _freeze(A), _freeze(M), name or R.name)


# ------------------------------------------------------------- isomorphism

def additive_generators(R: FiniteRing) -> list[int]:
    """A generating set of ``(R, +)``, picked greedily by descending order."""
    by_order = sorted(range(1, R.order), key=lambda a: (-additive_order(R, a), a))
    span = {0}
    gens = []
    for g in by_order:
        if g in span:
            continue
        gens.append(g)
        span = _extend_span(R, span, g)
        if len(span) == R.order:
            break
    return gens


def _extend_span(R: FiniteRing, span: set[int], g: int) -> set[int]:
    out = set(span)
    frontier = list(span)
    while frontier:
        nxt = []
        for s in frontier:
            t = R.add[s][g]
            if t not in out:
                out.add(t)
                nxt.append(t)
        frontier = nxt
    return out


def ring_invariants(R: FiniteRing) -> tuple:
    """Cheap isomorphism invariants used to reject pairs before searching."""
    orders = sorted(additive_order(R, a) for a in range(R.order))
    cent = sorted(r.bit_count() for r in R.commute_rows)
    squares = [R.mul[a][a] for a in range(R.order)]
    idem = sum(1 for a in range(R.order) if squares[a] == a)
    nil2 = sum(1 for s in squares if s == 0)
    zero_prod = sum(1 for a in range(R.order) for b in range(R.order) if R.mul[a][b] == 0)
    left_ann = sorted(sum(1 for b in range(R.order) if R.mul[a][b] == 0) for a in range(R.order))
    right_ann = sorted(sum(1 for b in range(R.order) if R.mul[b][a] == 0) for a in range(R.order))
    return (R.order, tuple(orders), tuple(cent), idem, nil2, zero_prod,
            tuple(left_ann), tuple(right_ann))


def ring_iso(R1: FiniteRing, R2: FiniteRing) -> tuple[int, ...] | None:
    """Find a ring isomorphism ``phi`` from R1 to R2, as a tuple ``phi[a]``.

    Backtracks over the images of a generating set of ``(R1, +)``; each
    partial choice is extended additively to the generated subgroup and
    checked for consistency, injectivity and multiplicativity on that
    subgroup before descending.
    """
    if R1.order != R2.order:
        return None
    if ring_invariants(R1) != ring_invariants(R2):
        return None
    n = R1.order
    if n == 1:
        return (0,)
    gens = additive_generators(R1)
    ord2: dict[int, list[int]] = {}
    for b in range(n):
        ord2.setdefault(additive_order(R2, b), []).append(b)
    cands = [ord2.get(additive_order(R1, g), []) for g in gens]

    def extend(phi: dict[int, int], g: int, h: int):
        new = dict(phi)
        image = set(phi.values())
        frontier = list(phi)
        while frontier:
            nxt = []
            for s in frontier:
                t, u = R1.add[s][g], R2.add[new[s]][h]
                if t in new:
                    if new[t] != u:
                        return None
                    continue
                if u in image:
                    return None
                new[t] = u
                image.add(u)
                nxt.append(t)
            frontier = nxt
        dom = list(new)
        for a in dom:
            fa = new[a]
            for b in dom:
                ab = R1.mul[a][b]
                if ab in new and new[ab] != R2.mul[fa][new[b]]:
                    return None
        return new

    def search(i: int, phi: dict[int, int]):
        if i == len(gens):
            if len(phi) != n:
                return None
            for a in range(n):
                for b in range(n):
                    if phi[R1.mul[a][b]] != R2.mul[phi[a]][phi[b]]:
                        return None
            return phi
        for h in cands[i]:
            nxt = extend(phi, gens[i], h)
            if nxt is None:
                continue
            found = search(i + 1, nxt)
            if found is not None:
                return found
        return None

    found = search(0, {0: 0})
    if found is None:
        return None
    return tuple(found[a] for a in range(n))


# --------------------------------------------------------------- file format

def ring_to_text(R: FiniteRing) -> str:
    """Serialize to the ``commring/1`` text format (JSON, one table row per line)."""

    def rows(t):
        return ",\n".join("    [" + ", ".join(str(x) for x in row) + "]" for row in t)

    return (
        "{\n"
        f'  "format": "{FORMAT_TAG}",\n'
        f'  "order": {R.order},\n'
        f'  "name": {json.dumps(R.name)},\n'
        f'  "add": [\n{rows(R.add)}\n  ],\n'
        f'  "mul": [\n{rows(R.mul)}\n  ]\n'
        "}\n"
    )


def ring_from_text(text: str, validate: bool = True) -> FiniteRing:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise RingFormatError(f"not a JSON object: {exc}") from exc
    if not isinstance(obj, dict) or obj.get("format") != FORMAT_TAG:
        raise RingFormatError(f"missing or unknown format tag (expected {FORMAT_TAG!r})")
    for key in ("order", "add", "mul"):
        if key not in obj:
            raise RingFormatError(f"missing field {key!r}")
    n = obj["order"]
    name = obj.get("name", "") or ""
    if validate:
        R = validate_ring(obj["add"], obj["mul"], name)
    else:
        R = FiniteRing(n, _freeze(obj["add"]), _freeze(obj["mul"]), name)
    if R.order != n:
        raise RingFormatError(f"declared order {n} but tables have size {R.order}")
    return R


def save_ring(R: FiniteRing, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(ring_to_text(R))


def load_ring(path, validate: bool = True) -> FiniteRing:
    with open(path, encoding="utf-8") as fh:
        return ring_from_text(fh.read(), validate=validate)
