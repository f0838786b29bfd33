"""Executable checkers for the classical lemmas behind the (C_m, F_n) bounds.

Each checker separates "hypothesis-not-met" (nothing to check) from
"conclusion-violated".  The lemmas are theorems, so the latter always means
a bug somewhere in this package; harnesses save the offending input for
post-mortem.

``claims_audit`` is different: the Claims it evaluates hold only for huge
reduced graphs, so it just reports which thresholds a given instance meets.
"""

from __future__ import annotations

import multiprocessing
import os
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .constructions import HALF, RegimeError, star_matching_ramsey
from .cycles import check_bondy, check_dirac, circumference, is_two_connected
from .enumeration import nonisomorphic_graphs
from .graph import SimpleGraph, TwoColoring, bits, component_masks, mask_of
from .graph6 import write_coloring, write_graph6
from .matching import _matching_in, connected_matching_number, max_fan_blades
from .search import _matching_at_least

OK = "ok"
NOT_MET = "hypothesis-not-met"
VIOLATED = "conclusion-violated"


def _frac(x) -> Fraction:
    if isinstance(x, float):
        return Fraction(str(x))
    return Fraction(x)


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass
class LemmaReport:
    lemma: str
    status: str
    details: dict = field(default_factory=dict)

    @property
    def violated(self) -> bool:
        return self.status == VIOLATED

    def as_dict(self) -> dict:
        return {"lemma": self.lemma, "status": self.status, "details": self.details}


class PartialTwoColoring:
    """A 2-coloring of some of the pairs of an n-set; the rest are absent.

    Absent pairs are non-edges in both colour projections.
    """

    __slots__ = ("n", "red", "blue")

    def __init__(self, red: SimpleGraph, blue: SimpleGraph):
        if red.n != blue.n:
            raise ValueError("colour classes live on different vertex sets")
        for v in range(red.n):
            if red.adj[v] & blue.adj[v]:
                raise ValueError(f"vertex {v} has a pair coloured both red and blue")
        self.n = red.n
        self.red = red
        self.blue = blue

    @classmethod
    def from_edges(cls, n: int, red_edges, blue_edges) -> PartialTwoColoring:
        return cls(SimpleGraph.from_edges(n, red_edges), SimpleGraph.from_edges(n, blue_edges))

    @classmethod
    def from_coloring(cls, c: TwoColoring) -> PartialTwoColoring:
        return cls(c.red, c.blue)

    def state(self, u: int, v: int) -> str:
        if u == v:
            raise ValueError("no pair on a single vertex")
        if self.red.has_edge(u, v):
            return "red"
        if self.blue.has_edge(u, v):
            return "blue"
        return "absent"

    def host(self) -> SimpleGraph:
        return SimpleGraph(self.n, [r | b for r, b in zip(self.red.adj, self.blue.adj)], check=False)

    def defect_profile(self) -> list[int]:
        """Per vertex, the number of absent pairs at it."""
        return [self.n - 1 - (r | b).bit_count() for r, b in zip(self.red.adj, self.blue.adj)]

    def max_defect(self) -> int:
        return max(self.defect_profile(), default=0)

    def as_dict(self) -> dict:
        return {"n": self.n, "red": write_graph6(self.red), "blue": write_graph6(self.blue)}


def _as_partial(h) -> PartialTwoColoring:
    return PartialTwoColoring.from_coloring(h) if isinstance(h, TwoColoring) else h


# ------------------------------------------------------------ component


def check_component_lemma(h) -> LemmaReport:
    """Large monochromatic component in a 2-coloured graph of minimum degree >= 3n/4.

    ``h`` is a PartialTwoColoring (the host graph is red plus blue) or a
    TwoColoring (host K_n).
    """
    h = _as_partial(h)
    g = h.host()
    if g.n == 0:
        return LemmaReport("component", NOT_MET, {"n": 0})
    delta = g.min_degree()
    details = {"n": g.n, "min_degree": delta}
    if 4 * delta < 3 * g.n:
        return LemmaReport("component", NOT_MET, details)
    best = (0, "red", 0)
    for colour, graph in (("red", h.red), ("blue", h.blue)):
        for comp in component_masks(graph):
            if comp.bit_count() > best[0]:
                best = (comp.bit_count(), colour, comp)
    details.update(component_order=best[0], colour=best[1], component=bits(best[2]))
    return LemmaReport("component", OK if best[0] > delta else VIOLATED, details)


# ---------------------------------------------------------- Figaj-Luczak


def check_figaj_luczak(g: SimpleGraph, v1, v2, eps) -> LemmaReport:
    """Dense bipartite graphs have a big component holding a big matching.

    Parts must satisfy |V1| >= |V2|; ``eps`` is taken exactly (floats via
    their decimal repr).
    """
    eps = _frac(eps)
    m1, m2 = mask_of(v1), mask_of(v2)
    n1, n2 = m1.bit_count(), m2.bit_count()
    if m1 & m2:
        raise ValueError("parts must be disjoint")
    if n1 < n2:
        raise ValueError("need |V1| >= |V2|")
    for v in range(g.n):
        side = m2 if m1 >> v & 1 else m1 if m2 >> v & 1 else 0
        if g.adj[v] & ~side:
            raise ValueError(f"graph is not bipartite between the given parts (vertex {v})")
    e = g.num_edges()
    need_edges = (1 - eps) * n1 * n2
    details = {"v1": n1, "v2": n2, "eps": _fmt(eps), "edges": e, "edge_threshold": _fmt(need_edges)}
    if not (0 < eps < Fraction(1, 100)) or e < need_edges:
        return LemmaReport("figaj-luczak", NOT_MET, details)
    need_order = (1 - 3 * eps) * (n1 + n2)
    need_matching = (1 - 3 * eps) * n2
    best = (0, 0, 0)
    for comp in component_masks(g, m1 | m2):
        if comp.bit_count() < need_order:
            continue
        size = len(_matching_in(g, comp))
        if size > best[1]:
            best = (comp.bit_count(), size, comp)
    ok = best[1] >= need_matching and best[0] >= need_order
    details.update(component_order=best[0], matching=best[1],
                   order_threshold=_fmt(need_order), matching_threshold=_fmt(need_matching))
    return LemmaReport("figaj-luczak", OK if ok else VIOLATED, details)


# ------------------------------------------------------- star / matchings


def _three_coloring_search(N: int, k: int, n1: int, n2: int, deadline: float | None):
    """A 3-coloring of K_N with colour-0 degrees < k and colour-1/2 matchings < n1/n2.

    Returns (colour per edge or None, nodes, timed_out).
    """
    edges = [(i, j) for j in range(N) for i in range(j)]
    adj = [[0] * N for _ in range(3)]
    limits = (None, n1, n2)
    colour = [0] * len(edges)
    full = (1 << N) - 1
    nodes = 0

    def bad(c: int, i: int, j: int) -> bool:
        if c == 0:
            return adj[0][i].bit_count() >= k or adj[0][j].bit_count() >= k
        return _matching_at_least(adj[c], full, limits[c])

    def rec(e: int) -> bool:
        nonlocal nodes
        if e == len(edges):
            return True
        i, j = edges[e]
        for c in range(3):
            adj[c][i] |= 1 << j
            adj[c][j] |= 1 << i
            if not bad(c, i, j):
                nodes += 1
                if deadline is not None and nodes % 4096 == 0 and time.monotonic() > deadline:
                    raise TimeoutError
                colour[e] = c
                if rec(e + 1):
                    return True
            adj[c][i] &= ~(1 << j)
            adj[c][j] &= ~(1 << i)
        return False

    try:
        found = rec(0)
    except TimeoutError:
        return None, nodes, True
    return (dict(zip(edges, colour)) if found else None), nodes, False


@dataclass
class StarMatchingReport:
    k: int
    n1: int
    n2: int
    value: int
    interpreted: bool
    status: str  # confirmed | refuted | budget-exhausted
    arrows_at_value: bool | None
    good_coloring_below: dict | None
    nodes: int

    def as_dict(self) -> dict:
        good = None
        if self.good_coloring_below is not None:
            good = [[u, v, c + 1] for (u, v), c in sorted(self.good_coloring_below.items())]
        return {
            "k": self.k, "n1": self.n1, "n2": self.n2, "value": self.value,
            "interpreted": self.interpreted, "status": self.status,
            "arrows_at_value": self.arrows_at_value, "good_coloring_below": good,
            "nodes": self.nodes,
        }


def check_star_matching_small(k: int, n1: int, n2: int, budget: float | None = None,
                              interpret_t_as_k: bool = False) -> StarMatchingReport:
    """Confirm R(S_k, n1 K_2, n2 K_2) by exhaustive 3-coloring search.

    At N = formula value every coloring must contain a colour-1 star with k
    edges, a colour-2 matching of size n1 or a colour-3 matching of size
    n2; at N - 1 some coloring must avoid all three.  Good colorings list
    edges as [u, v, colour] with colours 1..3.
    """
    value, interpreted = star_matching_ramsey(k, n1, n2, interpret_t_as_k)
    deadline = time.monotonic() + budget if budget is not None else None
    nodes = 0
    at_value, n_at, out = _three_coloring_search(value, k, n1, n2, deadline)
    nodes += n_at
    if out:
        return StarMatchingReport(k, n1, n2, value, interpreted, "budget-exhausted", None, None, nodes)
    below, n_below, out = _three_coloring_search(value - 1, k, n1, n2, deadline)
    nodes += n_below
    if out:
        return StarMatchingReport(k, n1, n2, value, interpreted, "budget-exhausted", at_value is None, None, nodes)
    ok = at_value is None and below is not None
    return StarMatchingReport(k, n1, n2, value, interpreted, "confirmed" if ok else "refuted",
                              at_value is None, below, nodes)


def star_matching_cases(max_value: int = 6) -> list[tuple[int, int, int]]:
    """All (k, n1, n2) with n1 >= n2 >= 1, k <= n1 and 2 n1 + n2 - 1 <= max_value."""
    out = []
    for n1 in range(1, max_value + 1):
        for n2 in range(1, n1 + 1):
            if 2 * n1 + n2 - 1 > max_value:
                continue
            out.extend((k, n1, n2) for k in range(1, n1 + 1))
    return out


# ---------------------------------------------------------------- claims


@dataclass(frozen=True)
class ClaimCheck:
    claim: str
    quantity: int | bool
    relation: str
    threshold: Fraction | bool
    holds: bool

    def as_dict(self) -> dict:
        th = self.threshold if isinstance(self.threshold, bool) else _fmt(self.threshold)
        return {"claim": self.claim, "quantity": self.quantity, "relation": self.relation,
                "threshold": th, "holds": self.holds}


@dataclass
class ClaimsAudit:
    t: int
    max_red_connected_matching: int
    max_blue_fan_blades: int
    min_red_degree: int
    red_two_connected: bool
    red_circumference: int
    red_circumference_exact: bool
    a: Fraction
    beta: Fraction
    regime: str
    max_defect: int
    checks: list[ClaimCheck] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "t": self.t,
            "max_red_connected_matching": self.max_red_connected_matching,
            "max_blue_fan_blades": self.max_blue_fan_blades,
            "min_red_degree": self.min_red_degree,
            "red_two_connected": self.red_two_connected,
            "red_circumference": self.red_circumference,
            "red_circumference_exact": self.red_circumference_exact,
            "a": _fmt(self.a), "beta": _fmt(self.beta), "regime": self.regime,
            "max_defect": self.max_defect,
            "checks": [c.as_dict() for c in self.checks],
        }


def _claim_thresholds(a: Fraction, beta: Fraction, regime: str, t: int):
    if regime == "partI":
        if not HALF <= a < 1:
            raise RegimeError("partI needs 1/2 <= a < 1")
        return ((a / (2 * a + 2) - Fraction(3, 20) * beta) * t,
                (1 / (2 * a + 2) - Fraction(1, 20) * beta) * t,
                a / (2 * a + 2) * t + 1)
    if regime == "partII":
        if a < 1:
            raise RegimeError("partII needs a >= 1")
        return ((Fraction(1, 4) - Fraction(3, 20) * beta) * t,
                (1 / (4 * a) - Fraction(1, 20) * beta) * t,
                (2 * a - 1) / (4 * a) * t + 1)
    raise RegimeError(f"unknown regime {regime!r} (partI or partII)")


def claims_audit(h, a, beta, regime: str, defect_cap: int | None = None) -> ClaimsAudit:
    """Evaluate the reduced-graph Claims on a concrete partial coloring.

    Every quantity is computed on the red and blue projections (absent
    pairs are non-edges in both).  ``defect_cap`` bounds the absent pairs
    per vertex; exceeding it is an error.
    """
    h = _as_partial(h)
    a, beta = _frac(a), _frac(beta)
    if beta < 0:
        raise ValueError("beta must be non-negative")
    t = h.n
    cm_max, fan_min, deg_min = _claim_thresholds(a, beta, regime, t)
    defect = h.max_defect()
    if defect_cap is not None and defect > defect_cap:
        raise ValueError(f"a vertex has {defect} absent pairs, above the cap {defect_cap}")
    red, blue = h.red, h.blue
    cm, _ = connected_matching_number(red)
    blades = max((max_fan_blades(blue, v)[0] for v in range(t)), default=0)
    delta = red.min_degree() if t else 0
    two = bool(is_two_connected(red))
    circ = circumference(red, heuristic=True)
    audit = ClaimsAudit(t, cm, blades, delta, two, circ.length, circ.exact, a, beta, regime, defect)
    audit.checks = [
        ClaimCheck("red-connected-matching", cm, "<=", cm_max, cm <= cm_max),
        ClaimCheck("blue-fan-blades", blades, "<", fan_min, blades < fan_min),
        ClaimCheck("red-min-degree", delta, ">=", deg_min, delta >= deg_min),
        ClaimCheck("red-two-connected", two, "==", True, two),
    ]
    return audit


# ----------------------------------------------------------- Dirac chain


def dirac_chain_check(g: SimpleGraph) -> LemmaReport:
    """2-connected => c(g) >= min(2 delta, n); always nu_conn(g) >= floor(c(g) / 2)."""
    two = bool(is_two_connected(g))
    c = circumference(g).length
    delta = g.min_degree() if g.n else 0
    cm, _ = connected_matching_number(g)
    bound = min(2 * delta, g.n)
    dirac_ok = not two or c >= bound
    details = {"n": g.n, "two_connected": two, "min_degree": delta, "circumference": c,
               "dirac_bound": bound, "connected_matching": cm, "matching_bound": c // 2}
    return LemmaReport("dirac-chain", OK if dirac_ok and cm >= c // 2 else VIOLATED, details)


# ---------------------------------------------------------------- harnesses


def _instance_rng(seed: int, i: int) -> random.Random:
    # one independent stream per instance, so workers need not share state
    return random.Random(f"{seed}/{i}")


def _random_component_instance(rng: random.Random, n_min: int, n_max: int) -> PartialTwoColoring:
    n = rng.randint(n_min, n_max)
    need = -(-3 * n // 4)
    deg = [n - 1] * n
    adj = [((1 << n) - 1) & ~(1 << v) for v in range(n)]
    pairs = [(u, v) for v in range(n) for u in range(v)]
    rng.shuffle(pairs)
    for u, v in pairs[:rng.randint(0, len(pairs))]:
        if deg[u] > need and deg[v] > need:
            adj[u] &= ~(1 << v)
            adj[v] &= ~(1 << u)
            deg[u] -= 1
            deg[v] -= 1
    p = rng.random()
    red = [0] * n
    for v in range(n):
        for u in bits(adj[v]):
            if u < v and rng.random() < p:
                red[u] |= 1 << v
                red[v] |= 1 << u
    blue = [row & ~r for row, r in zip(adj, red)]
    return PartialTwoColoring(SimpleGraph(n, red, check=False), SimpleGraph(n, blue, check=False))


def _component_task(args):
    seed, i, n_min, n_max = args
    h = _random_component_instance(_instance_rng(seed, i), n_min, n_max)
    return h, check_component_lemma(h)


def _random_figaj_instance(rng: random.Random):
    a = rng.randint(1, 40)
    b = rng.randint(1, a)
    eps = Fraction(rng.randint(1, 99), 10000)
    v1, v2 = list(range(a)), list(range(a, a + b))
    pairs = [(u, v) for u in v1 for v in v2]
    drop = rng.randint(0, int(eps * a * b))
    kept = set(rng.sample(range(len(pairs)), len(pairs) - drop))
    edges = [p for idx, p in enumerate(pairs) if idx in kept]
    return SimpleGraph.from_edges(a + b, edges), v1, v2, eps


def _figaj_task(args):
    seed, i = args
    g, v1, v2, eps = _random_figaj_instance(_instance_rng(seed, i))
    return g, check_figaj_luczak(g, v1, v2, eps)


@dataclass
class HarnessResult:
    lemma: str
    instances: int
    checked: int
    violations: int
    seed: int
    artifacts: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"lemma": self.lemma, "instances": self.instances, "checked": self.checked,
                "violations": self.violations, "seed": self.seed, "artifacts": self.artifacts}


def _run(task, args: list, threads: int):
    if threads <= 1:
        return [task(a) for a in args]
    with multiprocessing.get_context().Pool(threads) as pool:
        return pool.map(task, args)


def component_lemma_harness(instances: int = 500, seed: int = 0, n_min: int = 4, n_max: int = 12,
                            threads: int = 1, save_dir: str | os.PathLike | None = None) -> HarnessResult:
    """Random hypothesis-satisfying 2-coloured graphs through check_component_lemma."""
    res = HarnessResult("component", instances, 0, 0, seed)
    for i, (h, rep) in enumerate(_run(_component_task, [(seed, i, n_min, n_max) for i in range(instances)], threads)):
        if rep.status == NOT_MET:
            continue
        res.checked += 1
        if rep.violated:
            res.violations += 1
            if save_dir is not None:
                path = os.path.join(save_dir, f"component_violation_{seed}_{i}")
                with open(path + ".host.g6", "w", encoding="ascii") as fh:
                    fh.write(write_graph6(h.host()) + "\n")
                with open(path + ".red.g6", "w", encoding="ascii") as fh:
                    fh.write(write_graph6(h.red) + "\n")
                res.artifacts.append(path)
    return res


def figaj_luczak_harness(instances: int = 500, seed: int = 0, threads: int = 1,
                         save_dir: str | os.PathLike | None = None) -> HarnessResult:
    """Random near-complete bipartite graphs through check_figaj_luczak."""
    res = HarnessResult("figaj-luczak", instances, 0, 0, seed)
    for i, (g, rep) in enumerate(_run(_figaj_task, [(seed, i) for i in range(instances)], threads)):
        if rep.status == NOT_MET:
            continue
        res.checked += 1
        if rep.violated:
            res.violations += 1
            if save_dir is not None:
                path = os.path.join(save_dir, f"figaj_violation_{seed}_{i}.g6")
                with open(path, "w", encoding="ascii") as fh:
                    fh.write(write_graph6(g) + "\n")
                res.artifacts.append(path)
    return res


@dataclass
class SweepResult:
    max_n: int
    graphs: int = 0
    dirac_checked: int = 0
    dirac_violations: int = 0
    bondy_checked: int = 0
    bondy_exceptions: int = 0
    bondy_violations: int = 0
    chain_violations: int = 0
    violators: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def theorem_sweep(max_n: int = 8, save_dir: str | os.PathLike | None = None) -> SweepResult:
    """Dirac, Bondy and the Dirac chain on every graph with at most ``max_n`` vertices (up to isomorphism)."""
    res = SweepResult(max_n)
    for n in range(max_n + 1):
        for g in nonisomorphic_graphs(n):
            res.graphs += 1
            bad = False
            d = check_dirac(g)
            if d.hypothesis_met:
                res.dirac_checked += 1
                if not d.holds:
                    res.dirac_violations += 1
                    bad = True
            b = check_bondy(g)
            if b.verdict != "hypothesis-not-met":
                res.bondy_checked += 1
                res.bondy_exceptions += b.verdict == "exception-K_rr"
                if not b.holds:
                    res.bondy_violations += 1
                    bad = True
            if dirac_chain_check(g).violated:
                res.chain_violations += 1
                bad = True
            if bad:
                res.violators.append(write_graph6(g))
                if save_dir is not None:
                    write_coloring(os.path.join(save_dir, f"sweep_violation_{len(res.violators)}.coloring"),
                                   TwoColoring(g))
    return res
