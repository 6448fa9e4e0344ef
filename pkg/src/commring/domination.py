"""Exact domination and signed domination numbers.

Both solvers split the graph into connected components, solve each by
branch and bound on bitmasks and merge the witnesses.  Ties are broken by
lowest vertex index throughout, so certificates are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from commring.errors import TooLarge
from commring.graph import SimpleGraph, bits, components

BRUTEFORCE_LIMIT = 24


@dataclass(frozen=True)
class DominationCertificate:
    gamma: int
    witness: tuple[int, ...]
    method: str = "branch-and-bound"

    def to_text(self) -> str:
        return f"gamma {self.gamma}\nwitness {' '.join(str(v + 1) for v in self.witness)}\n"


@dataclass(frozen=True)
class SignedCertificate:
    gamma_s: int
    minus_set: tuple[int, ...]
    m: int
    method: str = "branch-and-bound"

    def __post_init__(self):
        if self.m - 2 * len(self.minus_set) != self.gamma_s:
            raise ValueError("weight check failed: gamma_s != m - 2|V-|")

    def to_text(self) -> str:
        return (f"gamma_s {self.gamma_s}\n"
                f"minus {' '.join(str(v + 1) for v in self.minus_set)}\n")


@dataclass(frozen=True)
class BoundsReport:
    lower: int
    upper: int
    no_isolated: bool
    max_degree: int
    min_degree: int


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def gamma_bounds(G: SimpleGraph) -> BoundsReport:
    """``ceil(m/(1+D)) <= gamma <= m - D``; with no isolated vertex also
    ``gamma <= m/2`` and ``gamma <= (m + 2 - d)/2``."""
    m = G.m
    if m == 0:
        return BoundsReport(0, 0, True, 0, 0)
    D, d = G.max_degree(), G.min_degree()
    lower = _ceil_div(m, 1 + D)
    upper = m - D
    no_iso = d > 0
    if no_iso:
        upper = min(upper, m // 2, (m + 2 - d) // 2)
    return BoundsReport(lower, upper, no_iso, D, d)


# ---------------------------------------------------------------- gamma

def _closed_masks(G: SimpleGraph, verts: list[int]) -> list[int]:
    pos = {v: i for i, v in enumerate(verts)}
    masks = []
    for v in verts:
        m = 1 << pos[v]
        for u in bits(G.rows[v]):
            m |= 1 << pos[u]
        masks.append(m)
    return masks


def _greedy_cover(closed: list[int]) -> list[int]:
    k = len(closed)
    undominated = (1 << k) - 1
    chosen = []
    while undominated:
        u = max(range(k), key=lambda x: ((closed[x] & undominated).bit_count(), -x))
        chosen.append(u)
        undominated &= ~closed[u]
    return chosen


def _min_dominating(closed: list[int]) -> list[int]:
    k = len(closed)
    best = _greedy_cover(closed)
    if len(best) <= 1:
        return sorted(best)
    chosen: list[int] = []

    def dfs(undominated: int):
        nonlocal best
        if not undominated:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        cover = [(closed[u] & undominated).bit_count() for u in range(k)]
        maxcov = max(cover)
        if len(chosen) + _ceil_div(undominated.bit_count(), maxcov) >= len(best):
            return
        # the undominated vertex with the fewest dominators branches least
        v = min(bits(undominated), key=lambda x: (closed[x].bit_count(), x))
        cands = sorted(bits(closed[v]), key=lambda u: (-cover[u], u))
        for u in cands:
            chosen.append(u)
            dfs(undominated & ~closed[u])
            chosen.pop()

    dfs((1 << k) - 1)
    return sorted(best)


def gamma_exact(G: SimpleGraph) -> DominationCertificate:
    """Domination number with a minimum dominating set."""
    witness: list[int] = []
    for comp in components(G):
        local = _min_dominating(_closed_masks(G, comp))
        witness.extend(comp[i] for i in local)
    witness.sort()
    return DominationCertificate(len(witness), tuple(witness), "branch-and-bound")


def gamma_bruteforce(G: SimpleGraph) -> DominationCertificate:
    """Smallest dominating set by enumerating subsets in increasing size and
    lexicographic order."""
    if G.m > BRUTEFORCE_LIMIT:
        raise TooLarge(f"brute force limited to {BRUTEFORCE_LIMIT} vertices")
    full = (1 << G.m) - 1
    closed = [G.closed(v) for v in range(G.m)]
    for size in range(G.m + 1):
        for D in combinations(range(G.m), size):
            cov = 0
            for v in D:
                cov |= closed[v]
            if cov == full:
                return DominationCertificate(size, D, "brute-force")
    raise AssertionError("the whole vertex set always dominates")


def verify_dominating(G: SimpleGraph, D) -> bool:
    """Every vertex is in ``D`` or has a neighbour in ``D``."""
    D = set(D)
    if any(not 0 <= v < G.m for v in D):
        return False
    for v in range(G.m):
        if v in D:
            continue
        if not any(G.adjacent(v, u) for u in D):
            return False
    return True


# --------------------------------------------------------------- signed

def _twin_classes(closed: list[int]) -> list[int]:
    """Class id per vertex; vertices with the same open or the same closed
    neighbourhood are interchangeable by an automorphism."""
    k = len(closed)
    by_open: dict[int, list[int]] = {}
    by_closed: dict[int, list[int]] = {}
    for v in range(k):
        by_open.setdefault(closed[v] & ~(1 << v), []).append(v)
        by_closed.setdefault(closed[v], []).append(v)
    cls = [-1] * k
    for groups in (by_open, by_closed):
        for members in groups.values():
            if len(members) > 1 and all(cls[v] < 0 for v in members):
                for v in members:
                    cls[v] = members[0]
    return [c if c >= 0 else v for v, c in enumerate(cls)]


def _max_minus_set(G: SimpleGraph, verts: list[int]) -> list[int]:
    """Largest set ``S`` with ``|N[w] & S| <= deg(w) // 2`` for every ``w``.

    Twins are taken as a prefix of their class (symmetry breaking).  The
    bound is the smaller of a capacity knapsack relaxation and, for every
    ``w``, the free capacity of ``N[w]`` plus the candidates outside it.
    """
    k = len(verts)
    closed = _closed_masks(G, verts)
    deg = [c.bit_count() - 1 for c in closed]
    cap = [d // 2 for d in deg]
    cls = _twin_classes(closed)
    order = sorted(range(k), key=lambda v: (-deg[v], cls[v], v))
    class_end = [0] * k
    for i in range(k - 1, -1, -1):
        same_next = i + 1 < k and cls[order[i + 1]] == cls[order[i]]
        class_end[i] = class_end[i + 1] if same_next else i + 1
    suffix = [0] * (k + 1)
    for i in range(k - 1, -1, -1):
        suffix[i] = suffix[i + 1] | (1 << order[i])
    by_cost = sorted(range(k), key=lambda v: (deg[v], v))
    used = [0] * k
    chosen: list[int] = []
    best: list[int] = []

    def feasible(u: int) -> bool:
        return all(used[w] < cap[w] for w in bits(closed[u]))

    def bound(i: int) -> int:
        alive = 0
        for u in bits(suffix[i]):
            if feasible(u):
                alive |= 1 << u
        if not alive:
            return 0
        best_bound = alive.bit_count()
        for w in range(k):
            b = cap[w] - used[w] + (alive & ~closed[w]).bit_count()
            if b < best_bound:
                best_bound = b
        slack = sum(cap[w] - used[w] for w in range(k))
        count = 0
        for u in by_cost:
            if (alive >> u) & 1:
                c = deg[u] + 1
                if c > slack:
                    break
                slack -= c
                count += 1
        return min(best_bound, count)

    def dfs(i: int):
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        if i == k or len(chosen) + bound(i) <= len(best):
            return
        u = order[i]
        if feasible(u):
            chosen.append(u)
            for w in bits(closed[u]):
                used[w] += 1
            dfs(i + 1)
            for w in bits(closed[u]):
                used[w] -= 1
            chosen.pop()
        dfs(class_end[i])

    dfs(0)
    return sorted(verts[u] for u in best)


def gamma_signed_exact(G: SimpleGraph) -> SignedCertificate:
    """Signed domination number as ``m - 2 max|V-|`` with a witness ``V-``."""
    minus: list[int] = []
    for comp in components(G):
        minus.extend(_max_minus_set(G, comp))
    minus.sort()
    return SignedCertificate(G.m - 2 * len(minus), tuple(minus), G.m)


def gamma_signed_bruteforce(G: SimpleGraph) -> SignedCertificate:
    """Signed domination number by trying every ``V-`` from largest down."""
    if G.m > BRUTEFORCE_LIMIT:
        raise TooLarge(f"brute force limited to {BRUTEFORCE_LIMIT} vertices")
    for size in range(G.m, -1, -1):
        for S in combinations(range(G.m), size):
            if verify_signed(G, S):
                return SignedCertificate(G.m - 2 * size, S, G.m, "brute-force")
    raise AssertionError("the all-plus function is always signed dominating")


def verify_signed(G: SimpleGraph, minus_set) -> bool:
    """The function that is -1 on ``minus_set`` and +1 elsewhere has every
    closed-neighbourhood sum at least 1."""
    minus = set(minus_set)
    if any(not 0 <= v < G.m for v in minus):
        return False
    for v in range(G.m):
        total = 0
        for u in [v] + G.neighbors(v):
            total += -1 if u in minus else 1
        if total < 1:
            return False
    return True
