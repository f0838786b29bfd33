"""Canonical labelling and generation of graphs up to isomorphism.

Canonical forms come from individualisation-refinement: equitable colour
refinement, then branching on the first non-singleton cell, keeping the
smallest adjacency code over all leaves.  Twins inside a cell are
interchangeable, so only one vertex per twin class is branched on.  This
is plenty for the n <= 10 sweeps the test-suite runs.
"""

from __future__ import annotations

from collections.abc import Iterator
from functools import lru_cache
from itertools import combinations

from .graph import SimpleGraph, bits, relabel


def _refine(adj: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    while True:
        masks = []
        for cell in cells:
            m = 0
            for v in cell:
                m |= 1 << v
            masks.append(m)
        new_cells = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            sig = {v: tuple((adj[v] & m).bit_count() for m in masks) for v in cell}
            keys = sorted(set(sig.values()))
            if len(keys) == 1:
                new_cells.append(cell)
                continue
            changed = True
            for key in keys:
                new_cells.append([v for v in cell if sig[v] == key])
        cells = new_cells
        if not changed:
            return cells


def _code(adj: tuple[int, ...], order: list[int]) -> int:
    code = 0
    for j in range(1, len(order)):
        row = adj[order[j]]
        for i in range(j):
            code = (code << 1) | (row >> order[i] & 1)
    return code


def canonical_order(g: SimpleGraph) -> list[int]:
    """A vertex order such that relabelling by it is an isomorphism invariant."""
    adj = g.adj
    if g.n == 0:
        return []
    best: list = [None, None]

    def search(cells: list[list[int]]) -> None:
        cells = _refine(adj, cells)
        for idx, cell in enumerate(cells):
            if len(cell) > 1:
                break
        else:
            order = [c[0] for c in cells]
            code = _code(adj, order)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, order
            return
        seen_twins: list[int] = []
        for v in cell:
            if any((adj[v] & ~(1 << u)) == (adj[u] & ~(1 << v)) for u in seen_twins):
                continue
            seen_twins.append(v)
            rest = [u for u in cell if u != v]
            search(cells[:idx] + [[v], rest] + cells[idx + 1:])

    search([list(range(g.n))])
    return best[1]


def canonical_form(g: SimpleGraph) -> SimpleGraph:
    return relabel(g, canonical_order(g))


def is_isomorphic(g: SimpleGraph, h: SimpleGraph) -> bool:
    return g.n == h.n and g.num_edges() == h.num_edges() and canonical_form(g) == canonical_form(h)


@lru_cache(maxsize=None)
def _classes(n: int) -> tuple[SimpleGraph, ...]:
    if n == 0:
        return (SimpleGraph(0, ()),)
    seen: dict[tuple[int, ...], SimpleGraph] = {}
    full = (1 << (n - 1)) - 1
    for parent in _classes(n - 1):
        for nb in range(full + 1):
            adj = [row | ((nb >> v & 1) << (n - 1)) for v, row in enumerate(parent.adj)]
            adj.append(nb)
            g = canonical_form(SimpleGraph(n, adj, check=False))
            seen.setdefault(g.adj, g)
    return tuple(sorted(seen.values(), key=lambda g: (g.num_edges(), g.adj)))


def nonisomorphic_graphs(n: int) -> tuple[SimpleGraph, ...]:
    """One canonical representative of every isomorphism class on ``n`` vertices."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return _classes(n)


def all_labeled_graphs(n: int) -> Iterator[SimpleGraph]:
    """Every labelled graph on ``n`` vertices (2^(n choose 2) of them)."""
    pairs = list(combinations(range(n), 2))
    for code in range(1 << len(pairs)):
        adj = [0] * n
        for k in bits(code):
            u, v = pairs[k]
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        yield SimpleGraph(n, adj, check=False)
