"""Executable checks of the commuting-graph domination results.

Every check has an id (``ThmA.i``, ``Lem16``, ...) and is evaluated
definitionally from exact solver output on each corpus member satisfying its
hypothesis.  A check whose hypothesis no corpus member satisfies is reported
once as ``vacuous``; a ``fail`` record always carries the counterexample.
"""

from __future__ import annotations

import json
import random
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations_with_replacement
from pathlib import Path
from typing import Callable, Iterable

from commring.domination import (
    gamma_bounds,
    gamma_bruteforce,
    gamma_exact,
    gamma_signed_exact,
    verify_dominating,
    verify_signed,
)
from commring.factory import (
    EnumerationSpec,
    enumerate_rings,
    read_manifests,
)
from commring.graph import (
    INFINITE,
    SimpleGraph,
    bfs_distances,
    commuting_graph,
    complement,
    complete_graph,
    component_shapes,
    components,
    diameter,
    is_complete_bipartite,
    random_graph,
    strong_product,
)
from commring.ring import (
    FiniteRing,
    additive_order,
    center,
    centralizer,
    direct_product,
    functional_ring,
    is_commutative,
    is_prime,
    load_ring,
    presentation_E,
    presentation_F,
    ring_iso,
)

PASS, FAIL, VACUOUS = "pass", "fail", "vacuous"

# id -> (suite, hypothesis class); the hypothesis text is what a vacuous
# record reports as empty.
CHECKS: dict[str, tuple[str, str]] = {
    "Inv.centralizer": ("prelim", "non-commutative rings"),
    "Inv.degree": ("prelim", "non-commutative rings"),
    "Lem3": ("prelim", "non-commutative rings with Z(R)=0"),
    "Lem30": ("prelim", "non-commutative rings with Z(R)=0"),
    "Lem40": ("prelim", "non-commutative rings with Z(R)=0"),
    "Thm20": ("prelim", "non-commutative rings with |R|>4"),
    "Thm17": ("prelim", "non-commutative rings"),
    "Thm21": ("prelim", "non-commutative rings"),
    "Thm18": ("prelim", "non-commutative rings with diam of the complement equal to 1"),
    "Lem6": ("prelim", "exhaustive enumerations at prime order"),
    "Lem16": ("prelim", "exhaustive enumeration at order 6"),
    "Cor4": ("prelim", "non-commutative rings with Z(R)=0"),
    "Thm2": ("prelim", "non-commutative rings of order p^2"),
    "Lem10": ("prelim", "rings of order p^2 with Z(R)!=0"),
    "Lem8": ("prelim", "vertex pairs x, y in C(x) with C(x), C(y) commutative"),
    "Lem19": ("domination", "corpus graphs"),
    "ThmGbar.i": ("domination", "corpus graphs"),
    "ThmGbar.ii": ("domination", "corpus graphs"),
    "Thmc4": ("domination", "corpus graphs of even order without isolated vertices"),
    "Thm39": ("domination", "corpus graphs without isolated vertices"),
    "Thm13": ("domination", "corpus graphs"),
    "Thm14": ("domination", "corpus graphs without isolated vertices"),
    "Thm3k": ("domination", "rings of odd order with Z(R)=0"),
    "Cor3k": ("domination", "non-commutative rings of odd order"),
    "Lem37": ("domination", "non-commutative rings with Z(R)=0"),
    "Lem38": ("domination", "non-commutative rings with Z(R)=0"),
    "Cor38": ("domination", "non-commutative rings with Z(R)!=0"),
    "Lem2t": ("domination", "Z(R)=0 and gamma of the complement equal to 1"),
    "Lem42": ("domination", "Z(R)=0, odd order n with 3 not dividing n"),
    "Lem43": ("domination", "non-commutative rings with Z(R)=0"),
    "Thm.gbar2": ("domination", "non-commutative rings with Z(R)!=0"),
    "CorUnity": ("domination", "non-commutative rings with unity"),
    "ThmA.i": ("domination", "non-commutative rings with Z(R)=0"),
    "ThmA.ii": ("domination", "non-commutative rings with Z(R)=0"),
    "ThmA.iii": ("domination", "non-commutative rings with Z(R)=0"),
    "Thm.p2": ("domination", "the presentations E_p, F_p"),
    "Lem11": ("domination", "rings of order p^3 with Z(R)=0"),
    "ThmB": ("domination", "rings of order p^3 with Z(R)=0"),
    "Lem1": ("signed", "corpus graphs"),
    "LemParity": ("signed", "corpus graphs"),
    "Thm9": ("signed", "complete graphs K_n"),
    "Lem5": ("signed", "corpus graphs with minimum degree >= 6"),
    "ThmD.i": ("signed", "rings of even order with Z(R)=0"),
    "ThmD.ii": ("signed", "rings of odd order with Z(R)=0"),
    "Thm32": ("signed", "rings of odd order with Z(R)!=0"),
    "Lem26": ("signed", "rings of order 8 with Z(R)=0"),
    "Lem24": ("signed", "rings of order 2p, p an odd prime, with Z(R)=0"),
    "Thm22": ("signed", "non-commutative rings with Z(R)=0"),
    "Cor22": ("signed", "Z(R)=0 and gamma_s of the complement equal to n-3"),
    "Thm23": ("signed", "non-commutative rings with Z(R)=0"),
    "Lem15": ("signed", "Z(R)=0 and a non-empty minus set on the complement"),
    "ThmB.signed": ("signed", "rings of order p^3 with Z(R)=0"),
    "ThmC": ("products", "products of zero-center non-commutative rings within the size cap"),
    "Thm.strong": ("products", "R1 x R2 with Z(R1)=0 and R2 commutative within the size cap"),
    "ThmE": ("products", "products of zero-center non-commutative rings within the size cap"),
    "Oracle.gamma": ("oracle", "random graphs G(12, p)"),
    "Oracle.signed": ("oracle", "random graphs G(12, p)"),
}

SUITES = ("prelim", "domination", "signed", "products", "oracle")


@dataclass
class CheckReport:
    check: str
    subject: str
    status: str
    evidence: dict = field(default_factory=dict)
    millis: float = 0.0

    def to_json(self, timing: bool = True) -> str:
        return json.dumps({
            "check": self.check,
            "subject": self.subject,
            "status": self.status,
            "evidence": self.evidence,
            "millis": round(self.millis, 3) if timing else 0,
        }, sort_keys=False, separators=(", ", ": "))


def _natural_key(s: str):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", s)]


def sort_records(records: Iterable[CheckReport]) -> list[CheckReport]:
    return sorted(records, key=lambda r: (r.check, _natural_key(r.subject)))


# ------------------------------------------------------------------ corpus

@dataclass
class CorpusEntry:
    subject: str
    ring: FiniteRing
    source: str  # "enumerated", "constructed" or "file"


@dataclass
class Corpus:
    entries: list[CorpusEntry]
    # order -> {"noncommutative": k, "zero_center": k, "exhaustive": bool}
    enumeration: dict[int, dict]
    max_order: int

    def zero_center(self) -> list[CorpusEntry]:
        return [e for e in self.entries if len(center(e.ring)) == 1]


def constructed_family() -> list[CorpusEntry]:
    rings = [presentation_E(2), presentation_F(2), presentation_E(3), presentation_F(3),
             presentation_E(5), presentation_F(5),
             functional_ring(3, 3, True), functional_ring(3, 3, False)]
    return [CorpusEntry(R.name, R, "constructed") for R in rings]


def build_corpus(max_order: int = 9, corpus_dir=None, jobs: int = 1, budget: int | None = None,
                 families: bool = True) -> Corpus:
    """Non-commutative rings of every order ``2..max_order``.

    Orders covered by a manifest in ``corpus_dir`` are read from its ring
    files; the rest are enumerated in-process.
    """
    entries: list[CorpusEntry] = []
    enumeration: dict[int, dict] = {}
    if corpus_dir is not None:
        corpus_dir = Path(corpus_dir)
        for man in read_manifests(corpus_dir):
            n = man["order"]
            if n > max_order or not man["filters"]["noncommutative"] or man["filters"].get("group"):
                continue
            rings = [load_ring(corpus_dir / f) for f in man["files"]]
            zc = sum(1 for R in rings if len(center(R)) == 1)
            enumeration[n] = {
                "noncommutative": None if man["filters"]["zero_center"] else len(rings),
                "zero_center": zc,
                "exhaustive": man["exhaustive"],
            }
            entries.extend(CorpusEntry(R.name, R, "file") for R in rings)
    for n in range(2, max_order + 1):
        if n in enumeration:
            continue
        kwargs = {} if budget is None else {"budget": budget}
        res = enumerate_rings(EnumerationSpec(n, require_noncommutative=True, **kwargs), jobs=jobs)
        zc = sum(1 for R in res.rings if len(center(R)) == 1)
        enumeration[n] = {"noncommutative": len(res.rings), "zero_center": zc,
                          "exhaustive": res.exhaustive}
        entries.extend(CorpusEntry(R.name, R, "enumerated") for R in res.rings)
    if families:
        entries.extend(constructed_family())
    return Corpus(entries, enumeration, max_order)


# ----------------------------------------------------------------- profile

class RingProfile:
    """Lazily computed graphs and solver results for one ring."""

    def __init__(self, subject: str, R: FiniteRing):
        self.subject = subject
        self.R = R
        self.n = R.order

    @cached_property
    def z(self) -> int:
        return len(center(self.R))

    @property
    def zero_center(self) -> bool:
        return self.z == 1

    @cached_property
    def G(self) -> SimpleGraph:
        return commuting_graph(self.R)

    @cached_property
    def Gb(self) -> SimpleGraph:
        return complement(self.G)

    @cached_property
    def gamma(self):
        return gamma_exact(self.G)

    @cached_property
    def gamma_b(self):
        return gamma_exact(self.Gb)

    @cached_property
    def signed(self):
        return gamma_signed_exact(self.G)

    @cached_property
    def signed_b(self):
        return gamma_signed_exact(self.Gb)

    @cached_property
    def shapes(self):
        return component_shapes(self.G)

    @cached_property
    def iso_EF(self) -> str | None:
        if self.n != 4:
            return None
        for S in (presentation_E(2), presentation_F(2)):
            if ring_iso(self.R, S) is not None:
                return S.name
        return None

    def union_of_p2(self, copies: int) -> bool:
        return len(self.shapes) == copies and all(s.tag == "P2" for s in self.shapes)

    def has_unity(self) -> bool:
        R = self.R
        return any(all(R.mul[u][a] == a and R.mul[a][u] == a for a in range(self.n))
                   for u in range(self.n))


def _timed(fn: Callable[[], tuple[str, dict] | None]):
    t = time.perf_counter()
    out = fn()
    return out, (time.perf_counter() - t) * 1000.0


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


def _p_power(n: int, k: int) -> int | None:
    """The prime ``p`` with ``n == p**k``, else None."""
    p = round(n ** (1.0 / k))
    for q in (p - 1, p, p + 1):
        if q >= 2 and q**k == n and is_prime(q):
            return q
    return None


def _power_of(n: int, base: int) -> int | None:
    k = 0
    while n > 1 and n % base == 0:
        n //= base
        k += 1
    return k if n == 1 else None


# ------------------------------------------------------- per-graph checks

def _graph_checks(P: RingProfile, which: str) -> dict[str, Callable]:
    G = P.G if which == "G" else P.Gb

    def cert():
        return P.gamma if which == "G" else P.gamma_b

    def scert():
        return P.signed if which == "G" else P.signed_b

    m = G.m

    def lem19():
        g = cert().gamma
        ok = (g == 1) == (G.max_degree() == m - 1)
        return _status(ok), {"gamma": g, "max_degree": G.max_degree(), "m": m}

    def thm39():
        if G.isolated():
            return None
        g = cert().gamma
        return _status(2 * g <= m), {"gamma": g, "m": m}

    def thm13():
        g = cert().gamma
        lo = -(-m // (1 + G.max_degree()))
        hi = m - G.max_degree()
        b = gamma_bounds(G)
        ok = lo <= g <= hi and b.lower <= g <= b.upper
        return _status(ok), {"gamma": g, "lower": lo, "upper": hi, "max_degree": G.max_degree()}

    def thm14():
        if G.isolated():
            return None
        g = cert().gamma
        d = G.min_degree()
        return _status(2 * g <= m + 2 - d), {"gamma": g, "m": m, "min_degree": d}

    def thmc4():
        if G.isolated() or m % 2:
            return None
        g = cert().gamma
        shapes = component_shapes(G)
        pattern = all(s.tag in ("P2", "CoronaHK1") or (s.tag == "CycleC" and s.params == (4,))
                      for s in shapes)
        ok = (2 * g == m) == pattern
        return _status(ok), {"gamma": g, "m": m, "components": [str(s) for s in shapes]}

    def lem1():
        s = scert().gamma_s
        deg = G.degrees()
        ends = {v for v in range(m) if deg[v] == 1}
        cond = all(deg[v] == 0 or v in ends or any(u in ends for u in G.neighbors(v))
                   for v in range(m))
        return _status((s == m) == cond), {"gamma_s": s, "m": m, "condition": cond}

    def parity():
        s = scert().gamma_s
        return _status((m - s) % 2 == 0), {"gamma_s": s, "m": m}

    def lem5():
        if G.min_degree() < 6 or m == 0:
            return None
        c = scert()
        return _status(len(c.minus_set) >= 3), {"minus": len(c.minus_set),
                                                 "min_degree": G.min_degree()}

    return {"Lem19": lem19, "Thm39": thm39, "Thm13": thm13, "Thm14": thm14, "Thmc4": thmc4,
            "Lem1": lem1, "LemParity": parity, "Lem5": lem5}


def _ring_checks(P: RingProfile) -> dict[str, Callable]:
    R, n = P.R, P.n

    def zc(fn):
        def wrapped():
            return fn() if P.zero_center else None
        return wrapped

    def inv_centralizer():
        sizes = sorted({len(centralizer(R, a)) for a in range(n)})
        ok = all(n % c == 0 for c in sizes)
        return _status(ok), {"centralizer_sizes": sizes, "n": n}

    def inv_degree():
        bad = [lab for v, lab in enumerate(P.G.labels)
               if P.G.degree(v) != len(centralizer(R, lab)) - P.z - 1]
        return _status(not bad), {"vertices": P.G.m, "counterexamples": bad[:5]}

    @zc
    def lem3():
        d = P.Gb.min_degree()
        return _status(2 * d > n - 1), {"min_degree_complement": d, "n": n}

    @zc
    def lem30():
        comps = components(P.G)
        is_cycle = (len(comps) == 1 and P.G.m >= 3
                    and all(d == 2 for d in P.G.degrees()))
        c4 = [str(s) for s in P.shapes if s.tag == "CycleC" and s.params == (4,)]
        return _status(not is_cycle and not c4), {"is_cycle": is_cycle, "c4_components": len(c4)}

    @zc
    def lem40():
        degs = P.G.degrees()
        both = 0 in degs and 1 in degs
        return _status(not both), {"isolated": degs.count(0), "degree_one": degs.count(1)}

    def thm20():
        if n <= 4:
            return None
        d = diameter(P.Gb)
        return _status(d == 2), {"diameter_complement": d if d != INFINITE else "inf"}

    def thm17():
        worst = 0
        for s in range(P.Gb.m):
            worst = max(worst, max(bfs_distances(P.Gb, s)))
        ok = worst <= 2
        return _status(ok), {"max_distance": worst if worst != INFINITE else "inf"}

    def thm21():
        bip = is_complete_bipartite(P.Gb)
        return _status(bip is None), {"complete_bipartite": list(bip) if bip else None}

    def thm18():
        if P.Gb.m < 2 or diameter(P.Gb) != 1:
            return None
        return _status(P.iso_EF is not None), {"iso": P.iso_EF, "n": n}

    @zc
    def cor4():
        return _status(n == 4 or n >= 8), {"n": n}

    def thm2():
        p = _p_power(n, 2)
        if p is None:
            return None
        hit = None
        for S in (presentation_E(p), presentation_F(p)):
            if ring_iso(R, S) is not None:
                hit = S.name
        return _status(hit is not None), {"iso": hit, "p": p}

    def lem8():
        verts = P.G.labels
        comm_cent = {}
        for x in verts:
            C = list(centralizer(R, x))
            comm_cent[x] = all(R.commute_rows[a] >> b & 1 for a in C for b in C)
        pairs, bad = 0, None
        for x in verts:
            if not comm_cent[x]:
                continue
            Cx = centralizer(R, x)
            for y in verts:
                if y == x or not comm_cent[y] or y not in Cx:
                    continue
                pairs += 1
                if Cx != centralizer(R, y) and bad is None:
                    bad = [x, y]
        if pairs == 0:
            return None
        return _status(bad is None), {"pairs": pairs, "counterexample": bad}

    def thm3k():
        if not P.zero_center or n % 2 == 0:
            return None
        g = P.gamma.gamma
        half = (n - 1) // 2
        left = g == half
        right = P.union_of_p2(half)
        k = _power_of(n, 3)
        ok = left == right and (not left or (k is not None and k > 1))
        return _status(ok), {"gamma": g, "half": half, "union_of_P2": right, "n": n}

    def cor3k():
        if n % 2 == 0:
            return None
        g = P.gamma.gamma
        half = (n - P.z) // 2
        ok = (g == half) == P.union_of_p2(half)
        return _status(ok), {"gamma": g, "target": half, "center": P.z}

    @zc
    def lem37():
        g = P.gamma.gamma
        return _status(g >= 3), {"gamma": g}

    @zc
    def lem38():
        g = P.gamma.gamma
        return _status((g == 3) == (P.iso_EF is not None)), {"gamma": g, "iso": P.iso_EF}

    def cor38():
        if P.zero_center:
            return None
        g = P.gamma.gamma
        return _status(g >= 4), {"gamma": g, "center": P.z}

    @zc
    def lem2t():
        if P.gamma_b.gamma != 1:
            return None
        return _status(_power_of(n, 2) is not None), {"n": n}

    @zc
    def lem42():
        if n % 2 == 0 or n % 3 == 0:
            return None
        g = P.gamma.gamma
        return _status(3 < g and 2 * g < n - 1), {"gamma": g, "n": n}

    @zc
    def lem43():
        g = P.gamma_b.gamma
        return _status(2 * g < n - 1), {"gamma_complement": g, "n": n}

    def gbar2():
        if P.zero_center:
            return None
        g = P.gamma_b.gamma
        return _status(g >= 2), {"gamma_complement": g, "center": P.z}

    def unity():
        if not P.has_unity():
            return None
        iso = P.G.isolated()
        return _status(not iso), {"isolated": len(iso)}

    @zc
    def thmA_i():
        s = P.gamma.gamma + P.gamma_b.gamma
        return _status((s == n) == (P.iso_EF is not None)), {
            "gamma": P.gamma.gamma, "gamma_complement": P.gamma_b.gamma, "sum": s, "n": n,
            "iso": P.iso_EF}

    @zc
    def thmA_ii():
        s = P.gamma.gamma + P.gamma_b.gamma
        return _status(s != n - 1), {"sum": s, "n": n}

    @zc
    def thmA_iii():
        s = P.gamma.gamma + P.gamma_b.gamma
        tags = [sh.tag for sh in P.shapes]
        k3 = sum(1 for sh in P.shapes if sh.tag == "CompleteK" and sh.params == (3,))
        shape = k3 == 1 and tags.count("IsolatedVertex") == n - 4 and len(tags) == n - 3
        ok = (s == n - 2) == (n % 2 == 0 and shape)
        return _status(ok), {"sum": s, "n": n, "K3_plus_isolated": shape}

    @zc
    def lem11():
        p = _p_power(n, 3)
        if p is None:
            return None
        verts = P.G.labels
        bad = None
        pairs = 0
        for i, x in enumerate(verts):
            for y in verts[i + 1:]:
                if R.mul[x][y] == R.mul[y][x]:
                    continue
                pairs += 1
                if len(centralizer(R, x) & centralizer(R, y)) != 1:
                    bad = [x, y]
                    break
            if bad:
                break
        return _status(bad is None), {"noncommuting_pairs": pairs, "counterexample": bad, "p": p}

    def _ell(p):
        l1 = l2 = 0
        other = []
        for sh in P.shapes:
            size = {"IsolatedVertex": 1, "P2": 2}.get(sh.tag, sh.params[0] if sh.tag == "CompleteK" else None)
            if size == p - 1:
                l1 += 1
            elif size == p * p - 1:
                l2 += 1
            else:
                other.append(str(sh))
        return l1, l2, other

    @zc
    def thmB():
        p = _p_power(n, 3)
        if p is None:
            return None
        l1, l2, other = _ell(p)
        g = P.gamma.gamma
        ok = not other and l1 + (p + 1) * l2 == p * p + p + 1 and g == l1 + l2
        return _status(ok), {"p": p, "l1": l1, "l2": l2, "gamma": g, "other_components": other}

    @zc
    def thmB_signed():
        p = _p_power(n, 3)
        if p is None:
            return None
        l1, l2, other = _ell(p)
        s = P.signed.gamma_s
        ok = not other and s == 2 * (l1 + l2)
        return _status(ok), {"p": p, "l1": l1, "l2": l2, "gamma_s": s,
                             "claimed": 2 * (l1 + l2), "minus_set": list(P.signed.minus_set),
                             "other_components": other}

    @zc
    def thmD_i():
        if n % 2:
            return None
        s = P.signed.gamma_s
        return _status((s == n - 1) == (P.iso_EF is not None)), {"gamma_s": s, "n": n,
                                                                  "iso": P.iso_EF}

    @zc
    def thmD_ii():
        if n % 2 == 0:
            return None
        s = P.signed.gamma_s
        right = P.union_of_p2((n - 1) // 2)
        return _status((s == n - 1) == right), {"gamma_s": s, "n": n, "union_of_P2": right}

    def thm32():
        if n % 2 == 0 or P.zero_center:
            return None
        s = P.signed.gamma_s
        right = P.union_of_p2((n - P.z) // 2)
        return _status((s == n - 1) == right), {"gamma_s": s, "n": n, "center": P.z,
                                                "union_of_P2": right}

    @zc
    def lem26():
        if n != 8:
            return None
        s = P.signed_b.gamma_s
        return _status(s == 1), {"gamma_s_complement": s,
                                 "minus_set": list(P.signed_b.minus_set)}

    @zc
    def lem24():
        if n % 2 or not is_prime(n // 2) or n // 2 == 2:
            return None
        s = P.signed_b.gamma_s
        return _status(s == 2), {"gamma_s_complement": s}

    @zc
    def thm22():
        s = P.signed_b.gamma_s
        return _status((s == n - 3) == (P.iso_EF is not None)), {"gamma_s_complement": s,
                                                                  "n": n, "iso": P.iso_EF}

    @zc
    def cor22():
        if P.signed_b.gamma_s != n - 3:
            return None
        return _status(P.gamma_b.gamma == 1), {"gamma_complement": P.gamma_b.gamma}

    @zc
    def thm23():
        s = P.signed_b.gamma_s
        return _status(s not in (n - 1, n - 5)), {"gamma_s_complement": s, "n": n}

    @zc
    def lem15():
        t = len(P.signed_b.minus_set)
        if t == 0:
            return None
        d = P.Gb.min_degree()
        return _status(d <= 2 * t + 1 and n <= 4 * t + 2), {"t": t, "min_degree_complement": d,
                                                             "n": n}

    return {
        "Inv.centralizer": inv_centralizer, "Inv.degree": inv_degree,
        "Lem3": lem3, "Lem30": lem30, "Lem40": lem40, "Thm20": thm20, "Thm17": thm17,
        "Thm21": thm21, "Thm18": thm18, "Cor4": cor4, "Thm2": thm2, "Lem8": lem8,
        "Thm3k": thm3k, "Cor3k": cor3k, "Lem37": lem37, "Lem38": lem38, "Cor38": cor38,
        "Lem2t": lem2t, "Lem42": lem42, "Lem43": lem43, "Thm.gbar2": gbar2, "CorUnity": unity,
        "ThmA.i": thmA_i, "ThmA.ii": thmA_ii, "ThmA.iii": thmA_iii, "Lem11": lem11,
        "ThmB": thmB, "ThmB.signed": thmB_signed, "ThmD.i": thmD_i, "ThmD.ii": thmD_ii,
        "Thm32": thm32, "Lem26": lem26, "Lem24": lem24, "Thm22": thm22, "Cor22": cor22,
        "Thm23": thm23, "Lem15": lem15,
    }


def _run(checks: dict[str, Callable], subject: str, wanted: set[str]) -> list[CheckReport]:
    out = []
    for cid, fn in checks.items():
        if cid not in wanted:
            continue
        res, ms = _timed(fn)
        if res is None:
            continue
        status, evidence = res
        out.append(CheckReport(cid, subject, status, evidence, ms))
    return out


def check_ring(subject: str, R: FiniteRing, wanted: Iterable[str] | None = None) -> list[CheckReport]:
    """Every per-ring and per-graph check applicable to one non-commutative ring."""
    wanted = set(CHECKS) if wanted is None else set(wanted)
    P = RingProfile(subject, R)
    out = _run(_ring_checks(P), subject, wanted)
    for which in ("G", "Gbar"):
        out.extend(_run(_graph_checks(P, which), f"{subject}/{which}", wanted))
    if "ThmGbar.i" in wanted or "ThmGbar.ii" in wanted:
        a, b, m = P.gamma.gamma, P.gamma_b.gamma, P.G.m
        ev = {"gamma": a, "gamma_complement": b, "m": m}
        if "ThmGbar.i" in wanted:
            out.append(CheckReport("ThmGbar.i", subject, _status(a + b <= m + 1), ev))
        if "ThmGbar.ii" in wanted:
            out.append(CheckReport("ThmGbar.ii", subject, _status(a * b <= m), dict(ev)))
    return out


def check_preliminaries(R: FiniteRing, subject: str | None = None) -> list[CheckReport]:
    wanted = {c for c, (suite, _) in CHECKS.items() if suite == "prelim"}
    return check_ring(subject or R.name or f"R{R.order}", R, wanted)


def check_theorem_A(entries: Iterable[CorpusEntry]) -> list[CheckReport]:
    out = []
    for e in entries:
        out.extend(check_ring(e.subject, e.ring, {"ThmA.i", "ThmA.ii", "ThmA.iii"}))
    return out


def check_theorem_B(entries: Iterable[CorpusEntry], p: int) -> list[CheckReport]:
    out = []
    for e in entries:
        if e.ring.order == p**3:
            out.extend(check_ring(e.subject, e.ring, {"ThmB", "Lem11", "ThmB.signed"}))
    if not out:
        out = [_vacuous(c, f"order {p**3}") for c in ("ThmB", "Lem11", "ThmB.signed")]
    return out


def check_signed(entries: Iterable[CorpusEntry]) -> list[CheckReport]:
    wanted = {c for c, (suite, _) in CHECKS.items() if suite == "signed"}
    out = []
    for e in entries:
        out.extend(check_ring(e.subject, e.ring, wanted))
    return out


def _vacuous(cid: str, scope: str = "corpus") -> CheckReport:
    return CheckReport(cid, scope, VACUOUS, {
        "hypothesis": CHECKS[cid][1],
        "reason": "no corpus member satisfies the hypothesis"})


# -------------------------------------------------------- family checks

def check_order_p2(p: int) -> list[CheckReport]:
    """gamma(Gamma) = p + 1 for both presentations and, at p = 2, gamma = 3."""
    out = []
    for R in (presentation_E(p), presentation_F(p)):
        res, ms = _timed(lambda: gamma_exact(commuting_graph(R)))
        g = res.gamma
        out.append(CheckReport("Thm.p2", R.name, _status(g == p + 1 and (p != 2 or g == 3)),
                               {"gamma": g, "expected": p + 1, "witness": list(res.witness)}, ms))
    return out


def check_complete_graphs(max_n: int = 10) -> list[CheckReport]:
    out = []
    for k in range(1, max_n + 1):
        c, ms = _timed(lambda: gamma_signed_exact(complete_graph(k)))
        expected = 2 if k % 2 == 0 else 1
        out.append(CheckReport("Thm9", f"K_{k}", _status(c.gamma_s == expected),
                               {"gamma_s": c.gamma_s, "expected": expected}, ms))
    return out


def check_enumeration(corpus: Corpus) -> list[CheckReport]:
    """Claims about whole enumerated classes: Lem6, Lem16, Thm2 coverage, Lem10."""
    out = []
    for n, info in sorted(corpus.enumeration.items()):
        if is_prime(n) and info["noncommutative"] is not None:
            ok = info["noncommutative"] == 0 and info["exhaustive"]
            out.append(CheckReport("Lem6", f"order-{n}", _status(ok), dict(info)))
        if n == 6:
            ok = info["zero_center"] == 0 and info["exhaustive"]
            out.append(CheckReport("Lem16", "order-6", _status(ok), dict(info)))
    for n in sorted(corpus.enumeration):
        p = _p_power(n, 2)
        if p is None:
            continue
        t = time.perf_counter()
        res = enumerate_rings(EnumerationSpec(n))
        for i, R in enumerate(res.rings):
            if len(center(R)) == 1:
                continue
            comm = is_commutative(R)
            out.append(CheckReport("Lem10", f"all{n}_{i}", _status(comm),
                                   {"center": len(center(R)), "commutative": comm},
                                   (time.perf_counter() - t) * 1000.0))
            t = time.perf_counter()
    return out


# ------------------------------------------------------------- products

def _dedupe(entries: list[CorpusEntry]) -> list[CorpusEntry]:
    kept: list[CorpusEntry] = []
    for e in entries:
        if not any(k.ring.order == e.ring.order and ring_iso(e.ring, k.ring) is not None for k in kept):
            kept.append(e)
    return kept


def _theorem_E_bound(orders: list[int], deltas: list[int]) -> tuple[int, str]:
    prod_n = 1
    prod_d = 1
    for n, d in zip(orders, deltas):
        prod_n *= n
        prod_d *= d + 2
    if all(d % 2 == 1 for d in deltas):
        return prod_n - prod_d + 2, "all odd"
    return prod_n - prod_d + 1, "some even"


def check_products(rings: list[tuple[str, FiniteRing]], max_order: int = 36,
                   commutative: list[tuple[str, FiniteRing]] | None = None,
                   max_factors: int = 3) -> list[CheckReport]:
    """Theorem C and E on products of zero-center rings, and the
    strong-product theorem on ``R1 x R2`` with ``R2`` commutative."""
    out = []
    pool = [(s, R) for s, R in rings if len(center(R)) == 1 and not is_commutative(R)]
    base = {s: (R, gamma_exact(commuting_graph(R)).gamma, commuting_graph(R).min_degree())
            for s, R in pool}
    names = [s for s, _ in pool]
    for t in range(2, max_factors + 1):
        for combo in combinations_with_replacement(names, t):
            order = 1
            for s in combo:
                order *= base[s][0].order
            if order > max_order:
                continue
            subject = "x".join(combo)
            t0 = time.perf_counter()
            Rp = direct_product([base[s][0] for s in combo])
            G = commuting_graph(Rp)
            g = gamma_exact(G)
            expected = min(base[s][1] for s in combo)
            ms = (time.perf_counter() - t0) * 1000.0
            out.append(CheckReport("ThmC", subject, _status(g.gamma == expected and len(center(Rp)) == 1),
                                   {"gamma": g.gamma, "min_factor_gamma": expected,
                                    "factor_gammas": [base[s][1] for s in combo],
                                    "witness": list(g.witness)}, ms))
            t0 = time.perf_counter()
            sg = gamma_signed_exact(G)
            bound, case = _theorem_E_bound([base[s][0].order for s in combo],
                                           [base[s][2] for s in combo])
            ms = (time.perf_counter() - t0) * 1000.0
            out.append(CheckReport("ThmE", subject, _status(sg.gamma_s <= bound),
                                   {"gamma_s": sg.gamma_s, "bound": bound, "delta_case": case,
                                    "deltas": [base[s][2] for s in combo]}, ms))
    for s1, R1 in pool:
        for s2, R2 in commutative or []:
            if R1.order * R2.order > max_order:
                continue
            t0 = time.perf_counter()
            ok, ev = _strong_product_claim(R1, R2)
            out.append(CheckReport("Thm.strong", f"{s1}x{s2}", _status(ok), ev,
                                   (time.perf_counter() - t0) * 1000.0))
    return out


def _strong_product_claim(R1: FiniteRing, R2: FiniteRing) -> tuple[bool, dict]:
    """gamma(Gamma(R1 x R2)) = gamma(Gamma(R1)) and Gamma(R1 x R2) is
    isomorphic to Gamma(R1) strong K_{n2} under (a, b) -> (a, b)."""
    P = direct_product([R1, R2])
    G = commuting_graph(P)
    G1 = commuting_graph(R1)
    H = strong_product(G1, complete_graph(R2.order))
    pos1 = {a: i for i, a in enumerate(G1.labels)}
    # product element (a, b) has index a*n2 + b, so labels map directly
    phi = [pos1[lab // R2.order] * R2.order + lab % R2.order for lab in G.labels]
    iso = G.m == H.m and all(
        G.adjacent(u, v) == H.adjacent(phi[u], phi[v]) for u in range(G.m) for v in range(u + 1, G.m))
    g, g1 = gamma_exact(G).gamma, gamma_exact(G1).gamma
    return iso and g == g1, {"gamma_product": g, "gamma_factor": g1, "isomorphic": iso,
                              "vertices": G.m}


# ---------------------------------------------------------------- oracle

def check_oracle(seed: int = 0, count: int = 200, m: int = 12,
                 probs=(0.2, 0.5, 0.8)) -> list[CheckReport]:
    """Branch and bound against enumeration on random ``G(m, p)`` graphs."""
    from commring.domination import gamma_signed_bruteforce

    rng = random.Random(seed)
    out = []
    for p in probs:
        t0 = time.perf_counter()
        bad_g, bad_s = [], []
        for i in range(count):
            G = random_graph(m, p, rng)
            a, b = gamma_exact(G), gamma_bruteforce(G)
            if a.gamma != b.gamma or not verify_dominating(G, a.witness):
                bad_g.append(i)
            s, t = gamma_signed_exact(G), gamma_signed_bruteforce(G)
            if s.gamma_s != t.gamma_s or not verify_signed(G, s.minus_set):
                bad_s.append(i)
        ms = (time.perf_counter() - t0) * 1000.0
        subject = f"G({m},{p})"
        out.append(CheckReport("Oracle.gamma", subject, _status(not bad_g),
                               {"graphs": count, "seed": seed, "discrepancies": bad_g}, ms / 2))
        out.append(CheckReport("Oracle.signed", subject, _status(not bad_s),
                               {"graphs": count, "seed": seed, "discrepancies": bad_s}, ms / 2))
    return out


# ----------------------------------------------------------------- driver

def _suite_checks(suite: str) -> set[str]:
    if suite == "all":
        return set(CHECKS)
    names = {s.strip() for s in suite.split(",")}
    unknown = names - set(SUITES)
    if unknown:
        raise ValueError(f"unknown suite(s): {', '.join(sorted(unknown))}")
    return {c for c, (s, _) in CHECKS.items() if s in names}


def _ring_task(args):
    subject, R, wanted = args
    return check_ring(subject, R, wanted)


def _commutative_small(max_n: int = 4) -> list[tuple[str, FiniteRing]]:
    out = []
    for n in range(2, max_n + 1):
        for i, R in enumerate(enumerate_rings(EnumerationSpec(n)).rings):
            if is_commutative(R):
                out.append((f"C{n}_{i}", R))
    return out


def run_suite(corpus: Corpus, suite: str = "all", jobs: int = 1, seed: int = 0,
              max_product: int = 36, oracle_count: int = 200) -> list[CheckReport]:
    """Run the selected checks; records are sorted by check id then subject."""
    wanted = _suite_checks(suite)
    records: list[CheckReport] = []
    tasks = [(e.subject, e.ring, wanted) for e in corpus.entries]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for recs in pool.map(_ring_task, tasks):
                records.extend(recs)
    else:
        for task in tasks:
            records.extend(_ring_task(task))
    if wanted & {"Lem6", "Lem16", "Lem10"}:
        records.extend(r for r in check_enumeration(corpus) if r.check in wanted)
    if "Thm.p2" in wanted:
        for p in (2, 3, 5):
            records.extend(check_order_p2(p))
    if "Thm9" in wanted:
        records.extend(check_complete_graphs(10))
    if wanted & {"ThmC", "ThmE", "Thm.strong"}:
        pool = [(e.subject, e.ring) for e in _dedupe(corpus.zero_center())]
        recs = check_products(pool, max_product, _commutative_small(4))
        records.extend(r for r in recs if r.check in wanted)
    if wanted & {"Oracle.gamma", "Oracle.signed"}:
        records.extend(r for r in check_oracle(seed, oracle_count) if r.check in wanted)
    seen = {r.check for r in records}
    for cid in sorted(wanted - seen):
        records.append(_vacuous(cid))
    return sort_records(records)


def write_report(records: Iterable[CheckReport], path, timing: bool = True) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for r in records:
            fh.write(r.to_json(timing) + "\n")


def read_report(path) -> list[CheckReport]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                obj = json.loads(line)
                out.append(CheckReport(obj["check"], obj["subject"], obj["status"],
                                       obj["evidence"], obj["millis"]))
    return out


def summarize(records: Iterable[CheckReport]) -> dict[str, dict[str, int]]:
    out: dict[str, dict[str, int]] = {}
    for r in records:
        out.setdefault(r.check, {PASS: 0, FAIL: 0, VACUOUS: 0})[r.status] += 1
    return out
