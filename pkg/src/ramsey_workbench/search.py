"""Exhaustive search for good colorings of K_N with respect to (C_m, F_n).

Colorings are built by vertex extension: vertex ``i`` arrives with the
colours of all its edges to ``0..i-1`` at once, encoded as the bitmask of
its red back-neighbours.  Since the partial coloring was already free of a
red C_m and a blue F_n, only structures through ``i`` need checking.

Symmetry pruning (optional, never needed for correctness): every good
coloring can be relabelled so that vertex 0 has maximum red degree and its
red neighbours are ``1..d``.  So edge ``(0, i)`` may be red only if
``(0, i-1)`` is, and once vertex 0's degree is settled no vertex may
exceed it.

The tree is cut at depth ``PREFIX_DEPTH``; each surviving prefix is an
independent task.  Results are merged in prefix order, so the reported
witness and node count do not depend on the number of workers.

Checkpoint files are JSON::

    {"format": "ramsey-workbench-frontier", "version": 1,
     "N": 9, "m": 3, "n_fan": 2, "symmetry": true, "prefix_depth": 5,
     "prefix_nodes": 57, "completed_nodes": 1234,
     "pending": [[0, 1, 2, 4, 8], ...]}

``pending`` lists the prefixes (red back-neighbour masks of vertices
``0..prefix_depth-1``) whose subtrees are still unexplored.
"""

from __future__ import annotations

import json
import multiprocessing
import os
import random
import time
from dataclasses import dataclass, field

from .constructions import verify_witness
from .graph import SimpleGraph, TwoColoring, bits
from .graph6 import write_coloring, write_graph6

PREFIX_DEPTH = 5
CHECKPOINT_FORMAT = "ramsey-workbench-frontier"
CHECKPOINT_VERSION = 1
_CLOCK_EVERY = 2048


class CheckpointError(ValueError):
    pass


@dataclass
class SearchReport:
    question: str
    result: str  # arrows | good-coloring-found | exact | exceeds-max | budget-exhausted
    N: int | None
    m: int
    n_fan: int
    witness: TwoColoring | None = None
    value: int | None = None
    nodes_expanded: int = 0
    wall_time: float = 0.0
    budget: float | None = None
    threads: int = 1
    symmetry: bool = True
    prefix_depth: int = PREFIX_DEPTH
    frontier: dict | None = None
    steps: list = field(default_factory=list)

    @property
    def arrows(self) -> bool | None:
        if self.result == "arrows":
            return True
        if self.result == "good-coloring-found":
            return False
        return None

    def as_dict(self, stable: bool = False) -> dict:
        out = {
            "question": self.question,
            "result": self.result,
            "N": self.N,
            "m": self.m,
            "n_fan": self.n_fan,
            "value": self.value,
            "nodes_expanded": self.nodes_expanded,
            "witness_graph6": write_graph6(self.witness.red) if self.witness else None,
            "budget": self.budget,
            "symmetry": self.symmetry,
            "prefix_depth": self.prefix_depth,
            "wall_time": None if stable else self.wall_time,
            "steps": [s.as_dict(stable) for s in self.steps],
        }
        # worker count changes neither the answer nor the node count
        if not stable:
            out["threads"] = self.threads
        return out


# ------------------------------------------------------------ detectors


def _matching_at_least(adj: list[int], s: int, k: int) -> bool:
    """Does the graph ``adj`` restricted to the vertex mask ``s`` have k disjoint edges?"""
    if k <= 0:
        return True
    while s:
        if s.bit_count() < 2 * k:
            return False
        low = s & -s
        v = low.bit_length() - 1
        s ^= low
        nb = adj[v] & s
        while nb:
            lb = nb & -nb
            if _matching_at_least(adj, s ^ lb, k - 1):
                return True
            nb ^= lb
        # otherwise v stays unmatched
    return False


def _path_to(adj: list[int], v: int, targets: int, avail: int, steps: int) -> bool:
    if steps == 1:
        return bool(adj[v] & targets & avail)
    nb = adj[v] & avail
    while nb:
        lb = nb & -nb
        if _path_to(adj, lb.bit_length() - 1, targets, avail ^ lb, steps - 1):
            return True
        nb ^= lb
    return False


def _cycle_through(adj: list[int], i: int, m: int) -> bool:
    """Is there a cycle of length exactly m through vertex i?"""
    nb = adj[i]
    if nb.bit_count() < 2:
        return False
    if m == 3:
        x = nb
        while x:
            lb = x & -x
            if adj[lb.bit_length() - 1] & nb:
                return True
            x ^= lb
        return False
    x = nb
    while x:
        lb = x & -x
        u = lb.bit_length() - 1
        x ^= lb
        targets = nb & ~((lb << 1) - 1)
        if targets and _path_to(adj, u, targets, ~(1 << i) & ~lb, m - 2):
            return True
    return False


def _fan_through(blue: list[int], i: int, n_fan: int) -> bool:
    """Is there a fan with n_fan blades that uses vertex i?"""
    nb = blue[i]
    if _matching_at_least(blue, nb, n_fan):
        return True
    x = nb
    while x:
        lb = x & -x
        c = lb.bit_length() - 1
        if blue[c].bit_count() >= 2 * n_fan and _matching_at_least(blue, blue[c], n_fan):
            return True
        x ^= lb
    return False


# --------------------------------------------------------------- engine


class _Timeout(Exception):
    pass


class _Engine:
    def __init__(self, N: int, m: int, n_fan: int, symmetry: bool, deadline: float | None = None):
        self.N, self.m, self.n_fan = N, m, n_fan
        self.symmetry = symmetry
        self.deadline = deadline
        self.red = [0] * N
        self.blue = [0] * N
        self.nodes = 0

    def place(self, i: int, r: int) -> bool:
        """Add vertex i with red back-neighbours r; False (and nothing changed) if it creates a target."""
        red, blue = self.red, self.blue
        b = ((1 << i) - 1) & ~r
        red[i], blue[i] = r, b
        bit = 1 << i
        for j in bits(r):
            red[j] |= bit
        for j in bits(b):
            blue[j] |= bit
        ok = self._admissible(i) and not _cycle_through(red, i, self.m) and not _fan_through(blue, i, self.n_fan)
        if not ok:
            self.remove(i)
        return ok

    def remove(self, i: int) -> None:
        red, blue = self.red, self.blue
        clear = ~(1 << i)
        for j in bits(red[i]):
            red[j] &= clear
        for j in bits(blue[i]):
            blue[j] &= clear
        red[i] = blue[i] = 0

    def _admissible(self, i: int) -> bool:
        if not self.symmetry or i < 2:
            return True
        red = self.red
        d0 = red[0].bit_count()
        if red[0] >> i & 1 and not red[0] >> (i - 1) & 1:
            return False
        if red[0] >> i & 1:
            return True  # vertex 0's degree is still growing
        for j in range(1, i + 1):
            if red[j].bit_count() > d0:
                return False
        return True

    def candidates(self, i: int):
        return range(1 << i)

    def tick(self) -> None:
        self.nodes += 1
        if self.deadline is not None and self.nodes % _CLOCK_EVERY == 0 and time.monotonic() > self.deadline:
            raise _Timeout

    def extend(self, i: int) -> bool:
        """Depth-first completion from vertex i; leaves the first good coloring in place."""
        if i == self.N:
            return True
        for r in self.candidates(i):
            if self.place(i, r):
                self.tick()
                if self.extend(i + 1):
                    return True
                self.remove(i)
        return False

    def leaves(self, i: int):
        if i == self.N:
            yield self.coloring()
            return
        for r in self.candidates(i):
            if self.place(i, r):
                self.nodes += 1
                yield from self.leaves(i + 1)
                self.remove(i)

    def prefixes(self, depth: int) -> list[tuple[int, ...]]:
        out: list[tuple[int, ...]] = []
        chosen: list[int] = []

        def walk(i: int) -> None:
            if i == depth:
                out.append(tuple(chosen))
                return
            for r in self.candidates(i):
                if self.place(i, r):
                    self.nodes += 1
                    chosen.append(r)
                    walk(i + 1)
                    chosen.pop()
                    self.remove(i)

        walk(0)
        return out

    def load(self, prefix: tuple[int, ...]) -> None:
        for i, r in enumerate(prefix):
            if not self.place(i, r):
                raise CheckpointError(f"prefix {list(prefix)} is not a valid partial coloring")

    def coloring(self) -> TwoColoring:
        return TwoColoring(SimpleGraph(self.N, list(self.red), check=False))


def _solve_prefix(task):
    """Worker entry point: (status, nodes, red rows of the witness or None)."""
    N, m, n_fan, symmetry, prefix, deadline = task
    if deadline is not None and time.monotonic() > deadline:
        return "timeout", 0, None
    eng = _Engine(N, m, n_fan, symmetry, deadline)
    eng.load(prefix)
    try:
        found = eng.extend(len(prefix))
    except _Timeout:
        return "timeout", 0, None
    return "done", eng.nodes, tuple(eng.red) if found else None


def _check_params(N: int, m: int, n_fan: int) -> None:
    if N < 1 or m < 3 or n_fan < 1:
        raise ValueError("need N >= 1, m >= 3 and n_fan >= 1")


def _default_threads(threads: int | None) -> int:
    if threads is None:
        threads = int(os.environ.get("RAMSEY_WORKBENCH_THREADS", "1"))
    if threads < 1:
        raise ValueError("threads must be at least 1")
    return threads


def _map_tasks(tasks: list, threads: int):
    if threads == 1 or len(tasks) <= 1:
        yield from map(_solve_prefix, tasks)
        return
    with multiprocessing.get_context().Pool(threads) as pool:
        # ordered, so merging is independent of scheduling
        yield from pool.imap(_solve_prefix, tasks, chunksize=1)
        pool.terminate()


def arrows(
    N: int,
    m: int,
    n_fan: int,
    budget: float | None = None,
    threads: int | None = None,
    symmetry: bool = True,
    checkpoint: str | os.PathLike | None = None,
    resume: str | os.PathLike | None = None,
) -> SearchReport:
    """Decide whether every red/blue coloring of K_N has a red C_m or a blue F_{n_fan}.

    ``budget`` is wall-clock seconds.  When it runs out the report is
    ``budget-exhausted`` and carries the unexplored frontier, which is also
    written to ``checkpoint`` if given; pass that file as ``resume`` to
    continue.
    """
    _check_params(N, m, n_fan)
    threads = _default_threads(threads)
    start = time.monotonic()
    deadline = start + budget if budget is not None else None
    depth = min(PREFIX_DEPTH, N)
    if resume is not None:
        state = load_checkpoint(resume)
        if (state["N"], state["m"], state["n_fan"], state["symmetry"]) != (N, m, n_fan, symmetry):
            raise CheckpointError("checkpoint was written for different search parameters")
        depth = state["prefix_depth"]
        prefixes = [tuple(p) for p in state["pending"]]
        prefix_nodes = state["prefix_nodes"]
        nodes = prefix_nodes + state["completed_nodes"]
    else:
        root = _Engine(N, m, n_fan, symmetry)
        prefixes = root.prefixes(depth)
        prefix_nodes = nodes = root.nodes

    report = SearchReport(f"arrows({N},{m},{n_fan})", "arrows", N, m, n_fan, budget=budget,
                          threads=threads, symmetry=symmetry, prefix_depth=depth)
    tasks = [(N, m, n_fan, symmetry, p, deadline) for p in prefixes]
    pending = []
    for prefix, (status, sub_nodes, red) in zip(prefixes, _map_tasks(tasks, threads)):
        if status == "timeout":
            pending.append(prefix)
            continue
        nodes += sub_nodes
        if red is not None:
            report.result = "good-coloring-found"
            report.witness = TwoColoring(SimpleGraph(N, red, check=False))
            break
    report.nodes_expanded = nodes
    if report.witness is None and pending:
        report.result = "budget-exhausted"
        report.frontier = {
            "format": CHECKPOINT_FORMAT,
            "version": CHECKPOINT_VERSION,
            "N": N, "m": m, "n_fan": n_fan, "symmetry": symmetry,
            "prefix_depth": depth,
            "prefix_nodes": prefix_nodes,
            "completed_nodes": nodes - prefix_nodes,
            "pending": [list(p) for p in pending],
        }
        if checkpoint is not None:
            save_checkpoint(checkpoint, report.frontier)
    if report.witness is not None:
        cert = verify_witness(report.witness, m, n_fan)
        if not cert.avoids:
            raise AssertionError(f"search returned a coloring that fails verification: {cert.verdict}")
    report.wall_time = time.monotonic() - start
    return report


def good_colorings(N: int, m: int, n_fan: int, symmetry: bool = True):
    """Every good coloring of K_N the search tree reaches, in search order.

    With symmetry pruning on, each isomorphism class still appears at least once.
    """
    _check_params(N, m, n_fan)
    yield from _Engine(N, m, n_fan, symmetry).leaves(0)


def save_checkpoint(path: str | os.PathLike, frontier: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(frontier, fh, indent=1)
        fh.write("\n")


def load_checkpoint(path: str | os.PathLike) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            state = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CheckpointError(f"cannot read checkpoint {path}: {exc}") from exc
    if not isinstance(state, dict) or state.get("format") != CHECKPOINT_FORMAT:
        raise CheckpointError("not a search frontier checkpoint")
    if state.get("version") != CHECKPOINT_VERSION:
        raise CheckpointError(f"unsupported checkpoint version {state.get('version')!r}")
    for key in ("N", "m", "n_fan", "symmetry", "prefix_depth", "prefix_nodes", "completed_nodes", "pending"):
        if key not in state:
            raise CheckpointError(f"checkpoint lacks {key!r}")
    return state


def ramsey_exact(
    m: int,
    n_fan: int,
    N_max: int,
    budget: float | None = None,
    threads: int | None = None,
    symmetry: bool = True,
) -> SearchReport:
    """Smallest N <= N_max such that K_N arrows (C_m, F_{n_fan}), with a good coloring on N - 1."""
    _check_params(1, m, n_fan)
    start = time.monotonic()
    report = SearchReport(f"exact({m},{n_fan})", "exceeds-max", None, m, n_fan, budget=budget,
                          threads=_default_threads(threads), symmetry=symmetry)
    good = None
    for N in range(1, N_max + 1):
        left = None if budget is None else max(0.0, budget - (time.monotonic() - start))
        step = arrows(N, m, n_fan, budget=left, threads=threads, symmetry=symmetry)
        report.steps.append(step)
        report.nodes_expanded += step.nodes_expanded
        if step.result == "budget-exhausted":
            report.result = "budget-exhausted"
            report.N = N
            report.frontier = step.frontier
            break
        if step.result == "arrows":
            report.result = "exact"
            report.value = report.N = N
            break
        if good is not None:
            # arrowing is monotone: a good coloring on N restricts to one on N - 1
            smaller = step.witness.restrict(range(N - 1))
            if not verify_witness(smaller, m, n_fan).avoids:
                raise AssertionError("restriction of a good coloring is not good")
        good = step.witness
    report.witness = good
    report.wall_time = time.monotonic() - start
    return report


@dataclass
class AuditResult:
    N: int
    m: int
    n_fan: int
    samples: int
    hits: int
    red_cycles: int
    blue_fans: int
    seed: int | None
    exhaustive: bool
    good_colorings: list[TwoColoring] = field(default_factory=list)
    saved: list[str] = field(default_factory=list)

    @property
    def fraction(self) -> float:
        return self.hits / self.samples if self.samples else 1.0

    def as_dict(self) -> dict:
        return {
            "N": self.N, "m": self.m, "n_fan": self.n_fan,
            "samples": self.samples, "hits": self.hits, "fraction": self.fraction,
            "red_cycles": self.red_cycles, "blue_fans": self.blue_fans,
            "seed": self.seed, "exhaustive": self.exhaustive,
            "good_colorings": [write_graph6(c.red) for c in self.good_colorings],
            "saved": self.saved,
        }


def _random_red(N: int, rng: random.Random) -> SimpleGraph:
    adj = [0] * N
    for j in range(1, N):
        row = rng.getrandbits(j)
        adj[j] = row
        for i in bits(row):
            adj[i] |= 1 << j
    return SimpleGraph(N, adj, check=False)


def random_coloring_audit(
    N: int,
    m: int,
    n_fan: int,
    samples: int,
    seed: int | None = None,
    exhaustive: bool = False,
    save_dir: str | os.PathLike | None = None,
    keep: int = 5,
) -> AuditResult:
    """Fraction of colorings of K_N containing a red C_m or a blue F_{n_fan}.

    Random mode draws ``samples`` uniform colorings from ``random.Random(seed)``;
    exhaustive mode walks all 2^(N choose 2) colorings and ignores ``samples``.
    Good colorings found (up to ``keep``) are returned and, with ``save_dir``,
    written as coloring files.
    """
    _check_params(N, m, n_fan)
    if exhaustive:
        from .enumeration import all_labeled_graphs

        source = all_labeled_graphs(N)
        seed = None
    else:
        rng = random.Random(seed)
        source = (_random_red(N, rng) for _ in range(samples))
    res = AuditResult(N, m, n_fan, 0, 0, 0, 0, seed, exhaustive)
    for red in source:
        res.samples += 1
        cert = verify_witness(TwoColoring(red), m, n_fan)
        if cert.verdict == "contains-red-cycle":
            res.hits += 1
            res.red_cycles += 1
        elif cert.verdict == "contains-blue-fan":
            res.hits += 1
            res.blue_fans += 1
        elif len(res.good_colorings) < keep:
            c = TwoColoring(red)
            res.good_colorings.append(c)
            if save_dir is not None:
                path = os.path.join(save_dir, f"good_N{N}_m{m}_f{n_fan}_{len(res.saved)}.coloring")
                write_coloring(path, c)
                res.saved.append(path)
    return res
