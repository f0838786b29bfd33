"""Matchings in general graphs and the structures built on them.

``max_matching`` is Edmonds' augmenting-path algorithm with blossom
contraction, seeded by a greedy matching.  Fans reduce to matchings: the
blades of a fan centred at ``v`` are exactly a matching inside ``N(v)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import SimpleGraph, VertexSet, bits, component_masks, induced_subgraph, mask_of


@dataclass(frozen=True)
class Matching:
    edges: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.edges)

    def vertices(self) -> set[int]:
        return {v for e in self.edges for v in e}

    def validate(self, g: SimpleGraph) -> None:
        used: set[int] = set()
        for u, v in self.edges:
            if not g.has_edge(u, v):
                raise AssertionError(f"({u}, {v}) is not an edge")
            if u in used or v in used:
                raise AssertionError(f"edge ({u}, {v}) is not vertex-disjoint")
            used.update((u, v))


@dataclass(frozen=True)
class FanEmbedding:
    center: int
    blades: tuple[tuple[int, int], ...]

    def validate(self, g: SimpleGraph) -> None:
        used = {self.center}
        for x, y in self.blades:
            if x in used or y in used:
                raise AssertionError(f"blade ({x}, {y}) reuses a vertex")
            used.update((x, y))
            for a, b in ((self.center, x), (self.center, y), (x, y)):
                if not g.has_edge(a, b):
                    raise AssertionError(f"fan edge ({a}, {b}) missing")


@dataclass(frozen=True)
class DeficiencyWitness:
    deficiency: int
    witness_set: VertexSet


def _greedy(n: int, nbrs: list[list[int]]) -> list[int]:
    mate = [-1] * n
    for v in range(n):
        if mate[v] == -1:
            for u in nbrs[v]:
                if mate[u] == -1:
                    mate[v], mate[u] = u, v
                    break
    return mate


def _augment_from(root: int, n: int, nbrs: list[list[int]], mate: list[int]) -> bool:
    """Search an augmenting path from the free vertex ``root``; apply it if found."""
    parent = [-1] * n
    base = list(range(n))
    used = [False] * n
    used[root] = True
    queue = [root]

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if mate[a] == -1:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[mate[b]]

    def mark_path(v: int, b: int, child: int, in_blossom: list[bool]) -> None:
        while base[v] != b:
            in_blossom[base[v]] = in_blossom[base[mate[v]]] = True
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    head = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        for to in nbrs[v]:
            if base[v] == base[to] or mate[v] == to:
                continue
            if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                cur = lca(v, to)
                in_blossom = [False] * n
                mark_path(v, cur, to, in_blossom)
                mark_path(to, cur, v, in_blossom)
                for i in range(n):
                    if in_blossom[base[i]]:
                        base[i] = cur
                        if not used[i]:
                            used[i] = True
                            queue.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if mate[to] == -1:
                    while to != -1:
                        pv = parent[to]
                        nxt = mate[pv]
                        mate[to], mate[pv] = pv, to
                        to = nxt
                    return True
                used[mate[to]] = True
                queue.append(mate[to])
    return False


def _mate_array(g: SimpleGraph) -> list[int]:
    n = g.n
    nbrs = [bits(row) for row in g.adj]
    mate = _greedy(n, nbrs)
    for root in range(n):
        if mate[root] == -1 and nbrs[root]:
            _augment_from(root, n, nbrs, mate)
    return mate


def max_matching(g: SimpleGraph) -> Matching:
    """A maximum matching of ``g``; deterministic for a given labelling."""
    mate = _mate_array(g)
    return Matching(tuple((v, u) for v, u in enumerate(mate) if v < u))


def matching_number(g: SimpleGraph) -> int:
    return len(max_matching(g))


def _matching_in(g: SimpleGraph, mask: int) -> Matching:
    sub, index = induced_subgraph(g, bits(mask))
    return Matching(tuple((index[u], index[v]) for u, v in max_matching(sub).edges))


def connected_matching_number(g: SimpleGraph) -> tuple[int, VertexSet]:
    """Largest matching contained in one component, and that component.

    Ties go to the component listed first by ``graph.components`` order.
    """
    best, best_comp = 0, ()
    comps = sorted(component_masks(g), key=lambda m: (-m.bit_count(), bits(m)))
    for comp in comps:
        if comp.bit_count() < 2 * best + 2:
            continue
        size = len(_matching_in(g, comp))
        if size > best:
            best, best_comp = size, tuple(bits(comp))
    if not best_comp and comps:
        best_comp = tuple(bits(comps[0]))
    return best, best_comp


def odd_components(g: SimpleGraph, removed: int = 0) -> int:
    """Number of odd-order components of ``g`` minus the vertex mask ``removed``."""
    keep = g.vertex_mask() & ~removed
    return sum(1 for comp in component_masks(g, keep) if comp.bit_count() & 1)


def tutte_berge_value(g: SimpleGraph, s: VertexSet) -> int:
    """q(G - S) - |S|, a lower bound on the deficiency for every ``S``."""
    return odd_components(g, mask_of(s)) - len(set(s))


def gallai_edmonds(g: SimpleGraph) -> tuple[VertexSet, VertexSet, VertexSet]:
    """The Gallai-Edmonds partition (D, A, C).

    D: vertices missed by some maximum matching; A: neighbours of D outside D;
    C: everything else.
    """
    nu = matching_number(g)
    d_mask = 0
    for v in range(g.n):
        sub, _ = induced_subgraph(g, [u for u in range(g.n) if u != v])
        if matching_number(sub) == nu:
            d_mask |= 1 << v
    a_mask = 0
    for v in bits(d_mask):
        a_mask |= g.adj[v]
    a_mask &= ~d_mask
    c_mask = g.vertex_mask() & ~d_mask & ~a_mask
    return tuple(bits(d_mask)), tuple(bits(a_mask)), tuple(bits(c_mask))


def berge_deficiency(g: SimpleGraph) -> DeficiencyWitness:
    """Vertices missed by a maximum matching, with a set S attaining q(G-S) - |S|.

    The witness is the Gallai-Edmonds set A; it is checked against the
    matching, which certifies both at once.
    """
    deficiency = g.n - 2 * matching_number(g)
    _, a_set, _ = gallai_edmonds(g)
    if tutte_berge_value(g, a_set) != deficiency:
        raise AssertionError("Gallai-Edmonds witness does not attain the deficiency")
    return DeficiencyWitness(deficiency, a_set)


def berge_deficiency_exhaustive(g: SimpleGraph, max_n: int = 20) -> DeficiencyWitness:
    """max over all S of q(G - S) - |S| by subset enumeration (first maximiser in mask order)."""
    if g.n > max_n:
        raise ValueError(f"exhaustive witness search limited to n <= {max_n}")
    best, best_mask = None, 0
    for s in range(1 << g.n):
        val = odd_components(g, s) - s.bit_count()
        if best is None or val > best:
            best, best_mask = val, s
    return DeficiencyWitness(best, tuple(bits(best_mask)))


def hall_deficiency(g: SimpleGraph, x: VertexSet, y: VertexSet) -> tuple[int, VertexSet]:
    """Hall deficiency max(0, max_{S in X} |S| - |N(S)|) and a set attaining it.

    The violator is the set of X-vertices reachable by alternating paths
    from unmatched X-vertices (Konig), so ``nu(G) = |X| - d`` holds exactly.
    """
    mx, my = mask_of(x), mask_of(y)
    if mx & my:
        raise ValueError("parts must be disjoint")
    for v in range(g.n):
        row = g.adj[v]
        if mx >> v & 1:
            bad = row & ~my
        elif my >> v & 1:
            bad = row & ~mx
        else:
            bad = row
        if bad:
            raise ValueError(f"graph is not bipartite between the given parts (vertex {v})")
    mate = _mate_array(g)
    free_x = [v for v in bits(mx) if mate[v] == -1]
    reach = mask_of(free_x)
    frontier = list(free_x)
    while frontier:
        v = frontier.pop()
        for u in bits(g.adj[v] & ~reach):
            reach |= 1 << u
            w = mate[u]
            if w != -1 and not reach >> w & 1:
                reach |= 1 << w
                frontier.append(w)
    return len(free_x), tuple(bits(reach & mx))


def max_fan_blades(g: SimpleGraph, v: int) -> tuple[int, FanEmbedding]:
    """The largest fan centred at ``v``: a maximum matching inside N(v)."""
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    blades = _matching_in(g, g.adj[v]).edges if g.adj[v] else ()
    return len(blades), FanEmbedding(v, tuple(blades))


def find_fan(g: SimpleGraph, n_blades: int) -> FanEmbedding | None:
    """A fan with ``n_blades`` blades anywhere in ``g``, or None."""
    if n_blades < 1:
        raise ValueError("a fan needs at least one blade")
    for v in range(g.n):
        if g.degree(v) < 2 * n_blades:
            continue
        count, fan = max_fan_blades(g, v)
        if count >= n_blades:
            return FanEmbedding(v, fan.blades[:n_blades])
    return None
