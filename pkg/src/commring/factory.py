"""Exhaustive enumeration of small finite rings up to isomorphism.

A ring structure on a finite abelian group ``A = Z_{d_1} + ... + Z_{d_k}`` is
a bilinear associative map ``A x A -> A``.  Bilinearity means it is fixed by
the generator products ``e_i * e_j``, each of which must be killed by
``gcd(d_i, d_j)``; distributivity then holds by construction and only
associativity on generator triples needs checking.  The search assigns
generator products in a fixed order and tests every triple as soon as all
the products it depends on are known.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd
from pathlib import Path
from typing import Iterator, Sequence

from commring.errors import BudgetExceeded, UnsupportedOrder
from commring.ring import (
    FiniteRing,
    bilinear_ring,
    center,
    coordinate_index,
    is_commutative,
    mixed_radix_elements,
    ring_invariants,
    ring_iso,
    save_ring,
)

MIN_ORDER, MAX_ORDER = 2, 16
DEFAULT_BUDGET = 10**9
BUDGET_ENV = "COMMRING_NODE_BUDGET"


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw:
        value = int(raw)
        if value <= 0:
            raise ValueError(f"{BUDGET_ENV} must be positive")
        return value
    return DEFAULT_BUDGET


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _partitions(k: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    largest = k if largest is None else largest
    if k == 0:
        yield ()
        return
    for first in range(min(k, largest), 0, -1):
        for rest in _partitions(k - first, first):
            yield (first,) + rest


def abelian_groups(n: int) -> list[tuple[int, ...]]:
    """Invariant-factor lists ``(d_1, d_2, ...)`` with ``d_{i+1} | d_i``,
    product ``n``, one per isomorphism class, in descending lexicographic order."""
    if not isinstance(n, int) or not MIN_ORDER <= n <= MAX_ORDER:
        raise UnsupportedOrder(f"order must be in {MIN_ORDER}..{MAX_ORDER}, got {n}")
    per_prime = []
    for p, e in sorted(_factorize(n).items()):
        per_prime.append([tuple(p**a for a in part) for part in _partitions(e)])
    groups = [()]
    for options in per_prime:
        nxt = []
        for g in groups:
            for part in options:
                width = max(len(g), len(part))
                a = g + (1,) * (width - len(g))
                b = part + (1,) * (width - len(part))
                nxt.append(tuple(x * y for x, y in zip(a, b)))
        groups = nxt
    return sorted(groups, reverse=True)


@dataclass(frozen=True)
class EnumerationSpec:
    order: int
    require_noncommutative: bool = False
    require_zero_center: bool = False
    group: tuple[int, ...] | None = None
    budget: int = field(default_factory=default_budget)

    def __post_init__(self):
        if not isinstance(self.order, int) or not MIN_ORDER <= self.order <= MAX_ORDER:
            raise UnsupportedOrder(f"order must be in {MIN_ORDER}..{MAX_ORDER}, got {self.order}")
        if self.budget <= 0:
            raise ValueError("budget must be positive")
        if self.group is not None:
            g = tuple(self.group)
            if g not in abelian_groups(self.order):
                raise ValueError(f"{g} is not an invariant-factor list of order {self.order}")
            object.__setattr__(self, "group", g)

    def groups(self) -> list[tuple[int, ...]]:
        return [self.group] if self.group is not None else abelian_groups(self.order)


@dataclass
class EnumerationResult:
    spec: EnumerationSpec
    rings: list[FiniteRing]
    exhaustive: bool
    nodes: int
    tables: int = 0  # associative structures found before dedupe

    def manifest(self) -> dict:
        return {
            "format": "commring-manifest/1",
            "order": self.spec.order,
            "filters": {
                "noncommutative": self.spec.require_noncommutative,
                "zero_center": self.spec.require_zero_center,
                "group": list(self.spec.group) if self.spec.group else None,
            },
            "count": len(self.rings),
            "exhaustive": self.exhaustive,
            "nodes": self.nodes,
            "files": [f"r{self.spec.order}_{i}.ring" for i in range(len(self.rings))],
        }


class _GroupData:
    """Element arithmetic on ``Z_{d_1} + ... + Z_{d_k}`` by index."""

    def __init__(self, moduli: Sequence[int]):
        self.moduli = tuple(moduli)
        self.k = len(moduli)
        self.coords = mixed_radix_elements(self.moduli)
        n = len(self.coords)
        self.n = n
        idx = {c: i for i, c in enumerate(self.coords)}
        self.add = [[idx[tuple((x + y) % d for x, y, d in zip(a, b, self.moduli))]
                     for b in self.coords] for a in self.coords]
        exp = max(self.moduli)
        self.smul = [[0] * n for _ in range(exp)]
        for s in range(exp):
            for i, c in enumerate(self.coords):
                self.smul[s][i] = idx[tuple((s * x) % d for x, d in zip(c, self.moduli))]
        # generator products e_i*e_j must be killed by gcd(d_i, d_j)
        self.allowed = {}
        for i in range(self.k):
            for j in range(self.k):
                g = gcd(self.moduli[i], self.moduli[j])
                self.allowed[i, j] = [v for v in range(n) if self.smul[g % exp][v] == 0] \
                    if g < exp else list(range(n))
        self.support = [[l for l in range(self.k) if c[l]] for c in self.coords]

    def combo(self, v: int, vectors: Sequence[int]) -> int:
        """``sum_l v_l * vectors[l]``."""
        acc = 0
        c = self.coords[v]
        for l in self.support[v]:
            acc = self.add[acc][self.smul[c[l]][vectors[l]]]
        return acc


def _position_order(k: int) -> list[tuple[int, int]]:
    order = []
    for r in range(k):
        for s in range(r):
            order.append((s, r))
            order.append((r, s))
        order.append((r, r))
    return order


def _search(G: _GroupData, budget: int, first_choices: Sequence[int] | None = None):
    """DFS over generator products; returns (tables, nodes, exhausted_budget).

    Each table is a tuple over ``_position_order`` of element indices.
    Results come out in lexicographic order of those tuples.
    """
    k = G.k
    positions = _position_order(k)
    slot = {pos: t for t, pos in enumerate(positions)}
    P = [[-1] * k for _ in range(k)]
    triples = [(i, j, l) for i in range(k) for j in range(k) for l in range(k)]
    found: list[tuple[int, ...]] = []
    nodes = 0
    assignment = [0] * len(positions)

    def checkable(i, j, l):
        a, b = P[i][j], P[j][l]
        if a < 0 or b < 0:
            return False
        for m in G.support[a]:
            if P[m][l] < 0:
                return False
        for m in G.support[b]:
            if P[i][m] < 0:
                return False
        return True

    def holds(i, j, l):
        col = [P[m][l] for m in range(k)]
        row = P[i]
        return G.combo(P[i][j], col) == G.combo(P[j][l], row)

    def dfs(depth, pending):
        nonlocal nodes
        if depth == len(positions):
            found.append(tuple(assignment))
            return True
        i, j = positions[depth]
        choices = G.allowed[i, j]
        if depth == 0 and first_choices is not None:
            choices = [c for c in choices if c in first_choices]
        for v in choices:
            nodes += 1
            if nodes > budget:
                return False
            P[i][j] = v
            assignment[depth] = v
            ok = True
            rest = []
            for t in pending:
                if checkable(*t):
                    if not holds(*t):
                        ok = False
                        break
                else:
                    rest.append(t)
            if ok and not dfs(depth + 1, rest):
                P[i][j] = -1
                return False
            P[i][j] = -1
        return True

    finished = dfs(0, triples)
    return found, nodes, not finished, positions, slot


def _search_worker(args):
    moduli, budget, first = args
    G = _GroupData(moduli)
    found, nodes, exhausted, _, _ = _search(G, budget, first)
    return found, nodes, exhausted


def _tables_to_ring(G: _GroupData, positions, table, name) -> FiniteRing:
    prods = [[None] * G.k for _ in range(G.k)]
    for (i, j), v in zip(positions, table):
        prods[i][j] = G.coords[v]
    return bilinear_ring(G.moduli, prods, name)


def _table_commutative(positions, table) -> bool:
    val = dict(zip(positions, table))
    return all(val[i, j] == val[j, i] for (i, j) in positions)


def enumerate_rings(spec: EnumerationSpec, jobs: int = 1, strict: bool = False) -> EnumerationResult:
    """All rings of ``spec.order`` matching the filters, one per isomorphism class.

    Rings are yielded group by group (in :func:`abelian_groups` order) and,
    within a group, in lexicographic order of their generator products; the
    first table found in each class is kept.  With ``jobs > 1`` the first
    generator product is split across worker processes and the results are
    merged back into that same order, so the output does not depend on
    ``jobs``.  When the node budget runs out the result is flagged
    non-exhaustive, or :class:`BudgetExceeded` is raised if ``strict``.
    """
    rings: list[FiniteRing] = []
    buckets: dict[tuple, list[FiniteRing]] = {}
    total_nodes = 0
    exhaustive = True
    n_tables = 0
    remaining = spec.budget
    for moduli in spec.groups():
        G = _GroupData(moduli)
        positions = _position_order(G.k)
        first_opts = G.allowed[positions[0]]
        if jobs > 1 and len(first_opts) > 1:
            chunks = [[v] for v in first_opts]
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                parts = list(pool.map(_search_worker,
                                      [(moduli, remaining, c) for c in chunks]))
            tables, nodes, exhausted = [], 0, False
            for f, nd, ex in parts:
                tables.extend(f)
                nodes += nd
                exhausted = exhausted or ex
            if nodes > remaining:
                exhausted = True
        else:
            tables, nodes, exhausted, _, _ = _search(G, remaining)
        total_nodes += nodes
        remaining = max(1, remaining - nodes)
        if exhausted:
            exhaustive = False
        n_tables += len(tables)
        for table in tables:
            if spec.require_noncommutative and _table_commutative(positions, table):
                continue
            R = _tables_to_ring(G, positions, table, "")
            if spec.require_zero_center and len(center(R)) != 1:
                continue
            key = ring_invariants(R)
            bucket = buckets.setdefault(key, [])
            if any(ring_iso(R, S) is not None for S in bucket):
                continue
            R = FiniteRing(R.order, R.add, R.mul, f"r{spec.order}_{len(rings)}")
            bucket.append(R)
            rings.append(R)
        if not exhaustive:
            break
    result = EnumerationResult(spec, rings, exhaustive, total_nodes, n_tables)
    if not exhaustive and strict:
        raise BudgetExceeded(total_nodes, rings)
    return result


def write_corpus(result: EnumerationResult, directory) -> list[Path]:
    """Write ``r{order}_{seq}.ring`` files plus ``manifest_{order}.json``."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for R in result.rings:
        path = directory / f"{R.name}.ring"
        save_ring(R, path)
        paths.append(path)
    manifest = directory / f"manifest_{result.spec.order}.json"
    manifest.write_text(json.dumps(result.manifest(), indent=2, sort_keys=True) + "\n",
                        encoding="utf-8")
    return paths


def read_manifests(directory) -> list[dict]:
    directory = Path(directory)
    out = []
    for path in sorted(directory.glob("manifest_*.json"), key=lambda p: int(p.stem.split("_")[1])):
        out.append(json.loads(path.read_text(encoding="utf-8")))
    return out


def noncommutative_corpus(max_order: int, zero_center: bool = False, jobs: int = 1,
                          budget: int | None = None) -> dict[int, EnumerationResult]:
    """Enumerate non-commutative rings for every order ``2..max_order``."""
    out = {}
    for n in range(MIN_ORDER, max_order + 1):
        spec = EnumerationSpec(n, require_noncommutative=True, require_zero_center=zero_center,
                               budget=budget if budget is not None else default_budget())
        out[n] = enumerate_rings(spec, jobs=jobs)
    return out
