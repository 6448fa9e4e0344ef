"""Simple undirected graphs on bit-packed adjacency rows, commuting graphs,
products, structural classifiers and DIMACS/DOT exchange."""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from commring.errors import DimacsError, EmptyVertexSet, OverflowGuard, TooLarge, TooSmall
from commring.ring import FiniteRing, center

INFINITE = math.inf
DEFAULT_GRAPH_CAP = 1 << 14
ISO_LIMIT = 32


def bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class SimpleGraph:
    """``rows[i]`` has bit ``j`` set iff ``i`` and ``j`` are adjacent.

    ``labels[i]`` is the ring element behind vertex ``i`` for commuting graphs,
    otherwise just ``i``.
    """

    m: int
    rows: tuple[int, ...]
    labels: tuple[int, ...] = ()

    def __post_init__(self):
        if len(self.rows) != self.m:
            raise ValueError("need exactly one adjacency row per vertex")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(self.m)))
        full = (1 << self.m) - 1
        for i, r in enumerate(self.rows):
            if r & ~full or (r >> i) & 1:
                raise ValueError(f"row {i} has a loop or an out-of-range bit")
            for j in bits(r):
                if not (self.rows[j] >> i) & 1:
                    raise ValueError(f"adjacency not symmetric at ({i}, {j})")

    @classmethod
    def from_edges(cls, m: int, edges: Iterable[tuple[int, int]], labels: Sequence[int] = ()):
        rows = [0] * m
        for a, b in edges:
            if a == b:
                raise ValueError(f"loop at {a}")
            rows[a] |= 1 << b
            rows[b] |= 1 << a
        return cls(m, tuple(rows), tuple(labels))

    def adjacent(self, a: int, b: int) -> bool:
        return (self.rows[a] >> b) & 1 == 1

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.rows[v]))

    def closed(self, v: int) -> int:
        return self.rows[v] | (1 << v)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.m) for j in bits(self.rows[i] >> (i + 1) << (i + 1))]

    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    def isolated(self) -> list[int]:
        return [v for v in range(self.m) if self.rows[v] == 0]

    def induced(self, vertices: Sequence[int]) -> "SimpleGraph":
        vertices = list(vertices)
        pos = {v: i for i, v in enumerate(vertices)}
        rows = []
        for v in vertices:
            r = 0
            for u in bits(self.rows[v]):
                if u in pos:
                    r |= 1 << pos[u]
            rows.append(r)
        return SimpleGraph(len(vertices), tuple(rows), tuple(self.labels[v] for v in vertices))


# ------------------------------------------------------------ constructors

def empty_graph(m: int) -> SimpleGraph:
    return SimpleGraph(m, (0,) * m)


def complete_graph(m: int) -> SimpleGraph:
    full = (1 << m) - 1
    return SimpleGraph(m, tuple(full ^ (1 << i) for i in range(m)))


def cycle_graph(m: int) -> SimpleGraph:
    if m < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return SimpleGraph.from_edges(m, [(i, (i + 1) % m) for i in range(m)])


def path_graph(m: int) -> SimpleGraph:
    return SimpleGraph.from_edges(m, [(i, i + 1) for i in range(m - 1)])


def star_graph(leaves: int) -> SimpleGraph:
    return SimpleGraph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite_graph(a: int, b: int) -> SimpleGraph:
    return SimpleGraph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def disjoint_union(*graphs: SimpleGraph) -> SimpleGraph:
    rows, off = [], 0
    for g in graphs:
        rows.extend(r << off for r in g.rows)
        off += g.m
    return SimpleGraph(off, tuple(rows))


def corona_k1(H: SimpleGraph) -> SimpleGraph:
    """``H`` with one pendant vertex attached to each vertex; pendant of
    vertex ``i`` is ``H.m + i``."""
    edges = H.edges() + [(i, H.m + i) for i in range(H.m)]
    return SimpleGraph.from_edges(2 * H.m, edges)


def relabel_graph(G: SimpleGraph, perm: Sequence[int]) -> SimpleGraph:
    """Copy of ``G`` in which vertex ``v`` becomes ``perm[v]``."""
    return SimpleGraph.from_edges(G.m, [(perm[a], perm[b]) for a, b in G.edges()])


def random_graph(m: int, p: float, rng: random.Random) -> SimpleGraph:
    edges = [(i, j) for i in range(m) for j in range(i + 1, m) if rng.random() < p]
    return SimpleGraph.from_edges(m, edges)


def commuting_graph(R: FiniteRing) -> SimpleGraph:
    """Vertices are the non-central elements in increasing order; distinct
    ``a``, ``b`` are adjacent iff ``ab = ba``."""
    Z = center(R)
    verts = [a for a in range(R.order) if a not in Z]
    if not verts:
        raise EmptyVertexSet(f"{R!r} is commutative; its commuting graph has no vertices")
    pos = {a: i for i, a in enumerate(verts)}
    rows = []
    for a in verts:
        r = 0
        for b in bits(R.commute_rows[a] & ~Z.bits & ~(1 << a)):
            r |= 1 << pos[b]
        rows.append(r)
    return SimpleGraph(len(verts), tuple(rows), tuple(verts))


def complement(G: SimpleGraph) -> SimpleGraph:
    full = (1 << G.m) - 1
    return SimpleGraph(G.m, tuple(full ^ r ^ (1 << i) for i, r in enumerate(G.rows)), G.labels)


def strong_product(G: SimpleGraph, H: SimpleGraph, cap: int = DEFAULT_GRAPH_CAP) -> SimpleGraph:
    """Vertex ``(g, h)`` is ``g * H.m + h``; distinct pairs are adjacent when
    each coordinate is equal or adjacent."""
    m = G.m * H.m
    if m > cap:
        raise OverflowGuard(f"strong product would have {m} vertices (cap {cap})")
    rows = []
    for g in range(G.m):
        gclosed = G.closed(g)
        for h in range(H.m):
            hclosed = H.closed(h)
            r = 0
            for g2 in bits(gclosed):
                r |= hclosed << (g2 * H.m)
            r &= ~(1 << (g * H.m + h))
            rows.append(r)
    return SimpleGraph(m, tuple(rows))


# ---------------------------------------------------------------- structure

def bfs_distances(G: SimpleGraph, source: int) -> list[float]:
    dist: list[float] = [INFINITE] * G.m
    dist[source] = 0
    seen = 1 << source
    frontier = 1 << source
    d = 0
    while frontier:
        d += 1
        nxt = 0
        for v in bits(frontier):
            nxt |= G.rows[v]
        nxt &= ~seen
        for v in bits(nxt):
            dist[v] = d
        seen |= nxt
        frontier = nxt
    return dist


def diameter(G: SimpleGraph) -> float:
    """Largest BFS distance; :data:`INFINITE` when disconnected."""
    if G.m < 2:
        raise TooSmall("diameter needs at least 2 vertices")
    best = 0
    for s in range(G.m):
        best = max(best, max(bfs_distances(G, s)))
        if best == INFINITE:
            break
    return best


def components(G: SimpleGraph) -> list[list[int]]:
    """Connected components, each sorted, ordered by smallest vertex."""
    out = []
    unseen = (1 << G.m) - 1
    while unseen:
        start = (unseen & -unseen).bit_length() - 1
        comp = 1 << start
        frontier = comp
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= G.rows[v]
            nxt &= ~comp
            comp |= nxt
            frontier = nxt
        unseen &= ~comp
        out.append(list(bits(comp)))
    return out


def is_connected(G: SimpleGraph) -> bool:
    return G.m > 0 and len(components(G)) == 1


@dataclass(frozen=True)
class ComponentShape:
    """One of IsolatedVertex, P2, CompleteK, CycleC, CompleteBipartite,
    CoronaHK1 or Other, with its size parameters."""

    tag: str
    params: tuple[int, ...] = ()

    def __str__(self):
        return f"{self.tag}({', '.join(map(str, self.params))})" if self.params else self.tag


def _corona_core(G: SimpleGraph) -> list[int] | None:
    """Core ``H`` if connected ``G`` is ``H o K1``, tested constructively."""
    if G.m < 2 or G.m % 2:
        return None
    leaves = [v for v in range(G.m) if G.degree(v) == 1]
    if len(leaves) != G.m // 2:
        return None
    leafset = set(leaves)
    core = [v for v in range(G.m) if v not in leafset]
    hosts = [G.neighbors(v)[0] for v in leaves]
    if sorted(hosts) != core:
        return None
    if not is_connected(G.induced(core)):
        return None
    return core


def classify_component(G: SimpleGraph, comp: Sequence[int]) -> ComponentShape:
    """Shape of the connected component ``comp``; P2 is reported as P2 even
    though it is also ``K1 o K1``."""
    sub = G.induced(sorted(comp))
    k = sub.m
    e = sub.edge_count()
    degs = sub.degrees()
    if k == 1:
        return ComponentShape("IsolatedVertex")
    if k == 2:
        return ComponentShape("P2")
    if e == k * (k - 1) // 2:
        return ComponentShape("CompleteK", (k,))
    if e == k and all(d == 2 for d in degs):
        return ComponentShape("CycleC", (k,))
    if _corona_core(sub) is not None:
        return ComponentShape("CoronaHK1", (k // 2,))
    bip = is_complete_bipartite(sub)
    if bip is not None:
        return ComponentShape("CompleteBipartite", bip)
    return ComponentShape("Other", (k, e))


def component_shapes(G: SimpleGraph) -> list[ComponentShape]:
    return [classify_component(G, c) for c in components(G)]


def two_coloring(G: SimpleGraph) -> list[int] | None:
    color = [-1] * G.m
    for s in range(G.m):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in bits(G.rows[v]):
                if color[u] < 0:
                    color[u] = 1 - color[v]
                    queue.append(u)
                elif color[u] == color[v]:
                    return None
    return color


def is_complete_bipartite(G: SimpleGraph) -> tuple[int, int] | None:
    """Part sizes ``(a, b)``, ``a <= b``, if ``G`` is ``K_{a,b}`` with
    ``a, b >= 1``; otherwise ``None``."""
    if G.m < 2 or not is_connected(G):
        return None
    color = two_coloring(G)
    if color is None:
        return None
    part = [[v for v in range(G.m) if color[v] == c] for c in (0, 1)]
    masks = [sum(1 << v for v in p) for p in part]
    for c in (0, 1):
        for v in part[c]:
            if G.rows[v] != masks[1 - c]:
                return None
    a, b = sorted(len(p) for p in part)
    return a, b


def graph_iso_small(G: SimpleGraph, H: SimpleGraph) -> bool:
    return find_graph_iso(G, H) is not None


def find_graph_iso(G: SimpleGraph, H: SimpleGraph) -> list[int] | None:
    """An isomorphism ``G -> H`` as a list, by backtracking.

    Vertices are matched only within classes of equal degree and equal
    sorted neighbour-degree lists; adjacency to every earlier mapped vertex
    is checked before descending.
    """
    if G.m > ISO_LIMIT or H.m > ISO_LIMIT:
        raise TooLarge(f"graph_iso_small handles at most {ISO_LIMIT} vertices")
    if G.m != H.m or G.edge_count() != H.edge_count():
        return None

    def signature(X: SimpleGraph):
        d = X.degrees()
        return [(d[v], tuple(sorted(d[u] for u in bits(X.rows[v])))) for v in range(X.m)]

    sg, sh = signature(G), signature(H)
    if sorted(sg) != sorted(sh):
        return None
    # map high-degree, then BFS-adjacent vertices first so constraints bite early
    order: list[int] = []
    placed = 0
    while len(order) < G.m:
        rest = [v for v in range(G.m) if not (placed >> v) & 1]
        linked = [v for v in rest if G.rows[v] & placed]
        pool = linked or rest
        v = max(pool, key=lambda x: ((G.rows[x] & placed).bit_count(), sg[x][0], -x))
        order.append(v)
        placed |= 1 << v
    cand = {v: [u for u in range(H.m) if sh[u] == sg[v]] for v in range(G.m)}
    phi = [-1] * G.m
    used = 0

    def search(i: int) -> bool:
        nonlocal used
        if i == G.m:
            return True
        v = order[i]
        for u in cand[v]:
            if (used >> u) & 1:
                continue
            ok = True
            for w in order[:i]:
                if G.adjacent(v, w) != H.adjacent(u, phi[w]):
                    ok = False
                    break
            if not ok:
                continue
            phi[v] = u
            used |= 1 << u
            if search(i + 1):
                return True
            used &= ~(1 << u)
            phi[v] = -1
        return False

    return list(phi) if search(0) else None


# ------------------------------------------------------------ exchange

def to_dimacs(G: SimpleGraph, comment: str = "") -> str:
    lines = []
    if comment:
        lines.extend(f"c {ln}" for ln in comment.splitlines())
    edges = G.edges()
    lines.append(f"p edge {G.m} {len(edges)}")
    lines.extend(f"e {a + 1} {b + 1}" for a, b in edges)
    return "\n".join(lines) + "\n"


def from_dimacs(text: str) -> SimpleGraph:
    m = None
    declared = 0
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if m is not None:
                raise DimacsError(f"line {lineno}: second problem line")
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise DimacsError(f"line {lineno}: expected 'p edge <m> <k>'")
            m, declared = int(parts[2]), int(parts[3])
        elif parts[0] == "e":
            if m is None:
                raise DimacsError(f"line {lineno}: edge before problem line")
            if len(parts) != 3:
                raise DimacsError(f"line {lineno}: expected 'e <i> <j>'")
            a, b = int(parts[1]) - 1, int(parts[2]) - 1
            if not (0 <= a < m and 0 <= b < m) or a == b:
                raise DimacsError(f"line {lineno}: bad edge {parts[1]} {parts[2]}")
            edges.append((a, b))
        else:
            raise DimacsError(f"line {lineno}: unknown record {parts[0]!r}")
    if m is None:
        raise DimacsError("missing problem line")
    G = SimpleGraph.from_edges(m, edges)
    if G.edge_count() != declared and len(edges) != declared:
        raise DimacsError(f"declared {declared} edges, found {len(edges)}")
    return G


def to_dot(G: SimpleGraph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in range(G.m):
        lines.append(f'  {v} [label="{G.labels[v]}"];')
    for a, b in G.edges():
        lines.append(f"  {a} -- {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
