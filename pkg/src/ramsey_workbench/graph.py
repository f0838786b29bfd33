"""Simple undirected graphs and red/blue colorings of complete graphs.

Vertices are the integers ``0..n-1``.  Adjacency is kept as one integer
bitmask per vertex, so pair queries are O(1) and neighborhood
intersections are word-parallel.  Everything here is immutable.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

VertexSet = tuple[int, ...]


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class SimpleGraph:
    """Undirected loopless graph on ``0..n-1`` stored as adjacency bitmasks."""

    __slots__ = ("n", "adj")

    def __init__(self, n: int, adj: Sequence[int], *, check: bool = True):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        if len(adj) != n:
            raise ValueError(f"expected {n} adjacency rows, got {len(adj)}")
        adj = tuple(adj)
        if check:
            full = (1 << n) - 1
            for v, row in enumerate(adj):
                if row & ~full:
                    raise ValueError(f"vertex {v} has a neighbor outside range")
                if row >> v & 1:
                    raise ValueError(f"self-loop at vertex {v}")
                for u in bits(row):
                    if not adj[u] >> v & 1:
                        raise ValueError(f"asymmetric adjacency between {v} and {u}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", adj)

    def __setattr__(self, name, value):
        raise AttributeError("SimpleGraph is immutable")

    def __reduce__(self):
        return (_rebuild_graph, (self.n, self.adj))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> SimpleGraph:
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj, check=False)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return bits(self.adj[v])

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v``, sorted lexicographically."""
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def __eq__(self, other):
        if not isinstance(other, SimpleGraph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"SimpleGraph(n={self.n}, edges={self.edges()})"


def _rebuild_graph(n, adj):
    return SimpleGraph(n, adj, check=False)


class TwoColoring:
    """Red/blue coloring of the edges of K_n, stored as its red graph."""

    __slots__ = ("red",)

    def __init__(self, red: SimpleGraph):
        object.__setattr__(self, "red", red)

    def __setattr__(self, name, value):
        raise AttributeError("TwoColoring is immutable")

    def __reduce__(self):
        return (TwoColoring, (self.red,))

    @property
    def n(self) -> int:
        return self.red.n

    @property
    def blue(self) -> SimpleGraph:
        return complement(self.red)

    def restrict(self, vertices: Iterable[int]) -> TwoColoring:
        sub, _ = induced_subgraph(self.red, vertices)
        return TwoColoring(sub)

    def __eq__(self, other):
        if not isinstance(other, TwoColoring):
            return NotImplemented
        return self.red == other.red

    def __hash__(self):
        return hash(self.red)

    def __repr__(self):
        return f"TwoColoring(n={self.n}, red_edges={self.red.num_edges()})"


def coloring_of_red(red: SimpleGraph) -> TwoColoring:
    return TwoColoring(red)


def blue_graph(c: TwoColoring) -> SimpleGraph:
    return complement(c.red)


def empty_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n, [0] * n, check=False)


def complete_graph(n: int) -> SimpleGraph:
    if n < 0:
        raise ValueError("vertex count must be non-negative")
    full = (1 << n) - 1
    return SimpleGraph(n, [full ^ (1 << v) for v in range(n)], check=False)


def complement(g: SimpleGraph) -> SimpleGraph:
    full = g.vertex_mask()
    return SimpleGraph(g.n, [full & ~row & ~(1 << v) for v, row in enumerate(g.adj)], check=False)


def induced_subgraph(g: SimpleGraph, s: Iterable[int]) -> tuple[SimpleGraph, VertexSet]:
    """Subgraph induced on ``s``; the second value maps new index -> original vertex."""
    index_map = tuple(sorted(set(s)))
    for v in index_map:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
    pos = {v: i for i, v in enumerate(index_map)}
    keep = mask_of(index_map)
    adj = []
    for v in index_map:
        adj.append(mask_of(pos[u] for u in bits(g.adj[v] & keep)))
    return SimpleGraph(len(index_map), adj, check=False), index_map


def bipartite_between(g: SimpleGraph, a: Iterable[int], b: Iterable[int]) -> SimpleGraph:
    """Spanning subgraph keeping only the edges of ``g`` with one end in ``a`` and one in ``b``."""
    ma, mb = mask_of(a), mask_of(b)
    if ma & mb:
        raise ValueError("vertex sets must be disjoint")
    adj = []
    for v, row in enumerate(g.adj):
        if ma >> v & 1:
            adj.append(row & mb)
        elif mb >> v & 1:
            adj.append(row & ma)
        else:
            adj.append(0)
    return SimpleGraph(g.n, adj, check=False)


def component_masks(g: SimpleGraph, within: int | None = None) -> list[int]:
    """Connected components (as bitmasks) of ``g`` restricted to ``within``."""
    remaining = g.vertex_mask() if within is None else within
    out = []
    while remaining:
        start = remaining & -remaining
        comp = start
        frontier = start
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            new = g.adj[low.bit_length() - 1] & remaining & ~comp
            comp |= new
            frontier |= new
        remaining &= ~comp
        out.append(comp)
    return out


def components(g: SimpleGraph) -> list[VertexSet]:
    """Vertex sets of the connected components, largest first, ties lexicographic."""
    comps = [tuple(bits(m)) for m in component_masks(g)]
    comps.sort(key=lambda c: (-len(c), c))
    return comps


def is_connected(g: SimpleGraph) -> bool:
    return len(component_masks(g)) <= 1


def disjoint_union(*graphs: SimpleGraph) -> SimpleGraph:
    adj = []
    offset = 0
    for h in graphs:
        adj.extend(row << offset for row in h.adj)
        offset += h.n
    return SimpleGraph(offset, adj, check=False)


def join(g: SimpleGraph, h: SimpleGraph) -> SimpleGraph:
    """Disjoint union of ``g`` and ``h`` plus every edge between them."""
    n = g.n + h.n
    gmask = g.vertex_mask()
    hmask = h.vertex_mask() << g.n
    adj = [row | hmask for row in g.adj] + [(row << g.n) | gmask for row in h.adj]
    return SimpleGraph(n, adj, check=False)


def cycle_graph(n: int) -> SimpleGraph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return SimpleGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_multipartite(*parts: int) -> SimpleGraph:
    g = empty_graph(0)
    for p in parts:
        g = join(g, empty_graph(p))
    return g


def complete_bipartite(p: int, q: int) -> SimpleGraph:
    return complete_multipartite(p, q)


def star_graph(k: int) -> SimpleGraph:
    """K_{1,k} with center 0."""
    return complete_bipartite(1, k)


def fan_graph(blades: int) -> SimpleGraph:
    """The fan with ``blades`` triangles sharing center 0."""
    edges = []
    for i in range(blades):
        x, y = 2 * i + 1, 2 * i + 2
        edges += [(0, x), (0, y), (x, y)]
    return SimpleGraph.from_edges(2 * blades + 1, edges)


def petersen_graph() -> SimpleGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return SimpleGraph.from_edges(10, outer + spokes + inner)


def relabel(g: SimpleGraph, order: Sequence[int]) -> SimpleGraph:
    """Graph whose vertex ``i`` is vertex ``order[i]`` of ``g``."""
    pos = {v: i for i, v in enumerate(order)}
    if len(pos) != g.n:
        raise ValueError("order must be a permutation of the vertices")
    adj = [0] * g.n
    for i, v in enumerate(order):
        adj[i] = mask_of(pos[u] for u in bits(g.adj[v]))
    return SimpleGraph(g.n, adj, check=False)
