"""Cycle structure: girth, circumference, fixed-length cycles, spectra, 2-connectivity.

Every cycle lives inside one 2-connected block, so the exact routines work
block by block.  A block is handled by, in order:

* a closed form when it is complete multipartite (its spectrum is
  ``{L : sum_i min(p_i, L // 2) >= L}`` for part sizes ``p_i``);
* a subset dynamic program over paths that start at the lowest vertex of
  their vertex set (pure Python up to 16 vertices, numba up to
  ``EXACT_LIMIT``);
* a rotation/extension heuristic, only when the caller allows a
  non-exact answer.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import SimpleGraph, bits, component_masks, induced_subgraph, mask_of

EXACT_LIMIT = 24
_PY_DP_LIMIT = 16
_SHORT_CYCLE_DFS = 6


class SizeLimitError(ValueError):
    """Exact cycle analysis requested on a block larger than the exact limit."""


@dataclass(frozen=True)
class CycleEmbedding:
    vertices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    def validate(self, g: SimpleGraph) -> None:
        vs = self.vertices
        if len(vs) < 3:
            raise AssertionError("a cycle needs at least 3 vertices")
        if len(set(vs)) != len(vs):
            raise AssertionError("cycle repeats a vertex")
        for i, v in enumerate(vs):
            u = vs[(i + 1) % len(vs)]
            if not g.has_edge(v, u):
                raise AssertionError(f"cycle edge ({v}, {u}) missing")


@dataclass(frozen=True)
class CycleResult:
    length: int
    cycle: CycleEmbedding | None
    exact: bool = True


@dataclass(frozen=True)
class TwoConnectivity:
    two_connected: bool
    cut_vertex: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.two_connected


@dataclass(frozen=True)
class DiracReport:
    hypothesis_met: bool
    n: int
    min_degree: int
    bound: int
    circumference: int | None = None
    cycle: CycleEmbedding | None = None

    @property
    def holds(self) -> bool:
        return not self.hypothesis_met or self.circumference >= self.bound

    @property
    def status(self) -> str:
        if not self.hypothesis_met:
            return "hypothesis-not-met"
        return "ok" if self.holds else "conclusion-violated"


@dataclass(frozen=True)
class BondyReport:
    verdict: str  # pancyclic | exception-K_rr | hypothesis-not-met | conclusion-violated
    n: int
    min_degree: int
    spectrum: frozenset[int] = field(default_factory=frozenset)

    @property
    def holds(self) -> bool:
        return self.verdict != "conclusion-violated"


# ---------------------------------------------------------------- blocks


def biconnected_blocks(g: SimpleGraph) -> tuple[list[int], set[int]]:
    """Blocks (vertex masks, bridges included) and the articulation points."""
    n = g.n
    disc = [-1] * n
    low = [0] * n
    blocks: list[int] = []
    cuts: set[int] = set()
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        if not g.adj[root]:
            continue
        root_children = 0
        edge_stack: list[tuple[int, int]] = []
        stack = [(root, -1, bits(g.adj[root]), 0)]
        while stack:
            v, parent, nbrs, i = stack[-1]
            if i < len(nbrs):
                stack[-1] = (v, parent, nbrs, i + 1)
                u = nbrs[i]
                if disc[u] == -1:
                    edge_stack.append((v, u))
                    disc[u] = low[u] = timer
                    timer += 1
                    if v == root:
                        root_children += 1
                    stack.append((u, v, bits(g.adj[u]), 0))
                elif u != parent and disc[u] < disc[v]:
                    edge_stack.append((v, u))
                    low[v] = min(low[v], disc[u])
                continue
            stack.pop()
            if parent == -1:
                continue
            low[parent] = min(low[parent], low[v])
            if low[v] >= disc[parent]:
                if parent != root:
                    cuts.add(parent)
                block = 0
                while True:
                    a, b = edge_stack.pop()
                    block |= (1 << a) | (1 << b)
                    if (a, b) == (parent, v):
                        break
                blocks.append(block)
        if root_children > 1:
            cuts.add(root)
    return blocks, cuts


def is_two_connected(g: SimpleGraph) -> TwoConnectivity:
    if g.n < 3:
        return TwoConnectivity(False, None, "fewer than 3 vertices")
    if len(component_masks(g)) > 1:
        return TwoConnectivity(False, None, "disconnected")
    _, cuts = biconnected_blocks(g)
    if cuts:
        return TwoConnectivity(False, min(cuts), "cut vertex")
    return TwoConnectivity(True)


# ---------------------------------------------------- complete multipartite


def multipartite_parts(g: SimpleGraph, mask: int | None = None) -> list[int] | None:
    """Parts of ``g[mask]`` if it is complete multipartite, else None.

    Non-adjacency must be an equivalence relation on the vertex set.
    """
    if mask is None:
        mask = g.vertex_mask()
    parts = []
    remaining = mask
    while remaining:
        v = (remaining & -remaining).bit_length() - 1
        part = mask & ~g.adj[v]
        for u in bits(part):
            if mask & ~g.adj[u] != part:
                return None
        parts.append(part)
        remaining &= ~part
    return parts


def _multipartite_spectrum(sizes: list[int]) -> set[int]:
    total = sum(sizes)
    return {L for L in range(3, total + 1) if sum(min(p, L // 2) for p in sizes) >= L}


def _multipartite_cycle(parts: list[int], length: int) -> list[int] | None:
    """A cycle of the given length in a complete multipartite graph, or None."""
    cap = length // 2
    chosen: list[list[int]] = []
    need = length
    for part in sorted(parts, key=lambda p: (-p.bit_count(), p)):
        take = bits(part)[:min(cap, need)]
        if take:
            chosen.append(take)
            need -= len(take)
        if not need:
            break
    if need:
        return None
    chosen.sort(key=len, reverse=True)
    seq = [v for part in chosen for v in part]
    h = (length + 1) // 2
    order = []
    for i in range(h):
        order.append(seq[i])
        if h + i < length:
            order.append(seq[h + i])
    return order


# ------------------------------------------------------------ subset DP


def _py_cycle_dp(adj: list[int]) -> tuple[list[int], dict[int, int]]:
    k = len(adj)
    dp = [0] * (1 << k)
    for s in range(k):
        dp[1 << s] = 1 << s
    first: dict[int, int] = {}
    for mask in range(1, 1 << k):
        ends = dp[mask]
        if not ends:
            continue
        low = mask & -mask
        s = low.bit_length() - 1
        pc = mask.bit_count()
        if pc >= 3 and ends & adj[s] and pc not in first:
            first[pc] = mask
        reach = 0
        e = ends
        while e:
            lb = e & -e
            reach |= adj[lb.bit_length() - 1]
            e ^= lb
        cand = reach & ~mask & ~((low << 1) - 1)
        while cand:
            lb = cand & -cand
            dp[mask | lb] |= lb
            cand ^= lb
    return dp, first


_numba_kernel = None


def _get_numba_kernel():
    global _numba_kernel
    if _numba_kernel is None:
        import numba
        import numpy as np

        @numba.njit(cache=True)
        def kernel(adj, k):
            size = 1 << k
            dp = np.zeros(size, np.uint32)
            first = np.full(k + 1, -1, np.int64)
            for s in range(k):
                dp[1 << s] = 1 << s
            for mask in range(1, size):
                ends = np.int64(dp[mask])
                if ends == 0:
                    continue
                low = mask & -mask
                s = 0
                while (low >> s) != 1:
                    s += 1
                pc = 0
                m = mask
                while m:
                    m &= m - 1
                    pc += 1
                if pc >= 3 and (ends & adj[s]) != 0 and first[pc] == -1:
                    first[pc] = mask
                reach = np.int64(0)
                e = ends
                while e:
                    lb = e & -e
                    w = 0
                    while (lb >> w) != 1:
                        w += 1
                    reach |= adj[w]
                    e ^= lb
                cand = reach & ~np.int64(mask) & ~np.int64((low << 1) - 1)
                while cand:
                    lb = cand & -cand
                    dp[mask | lb] |= np.uint32(lb)
                    cand ^= lb
            return dp, first

        _numba_kernel = kernel
    return _numba_kernel


def _numba_cycle_dp(adj: list[int]):
    import numpy as np

    kernel = _get_numba_kernel()
    dp, first_arr = kernel(np.array(adj, dtype=np.int64), len(adj))
    first = {L: int(m) for L, m in enumerate(first_arr) if m != -1}
    return dp, first


def _cycle_dp(adj: list[int], force: str | None = None):
    if force == "python" or (force is None and len(adj) <= _PY_DP_LIMIT):
        return _py_cycle_dp(adj)
    return _numba_cycle_dp(adj)


def _dp_witness(dp, adj: list[int], mask: int) -> list[int]:
    low = mask & -mask
    s = low.bit_length() - 1
    closing = int(dp[mask]) & adj[s]
    w = (closing & -closing).bit_length() - 1
    rev = [w]
    cur = mask
    while cur != low:
        prev = cur ^ (1 << w)
        options = int(dp[prev]) & adj[w]
        u = (options & -options).bit_length() - 1
        rev.append(u)
        cur = prev
        w = u
    rev.reverse()
    return rev


# ------------------------------------------------------------ heuristic


def _heuristic_cycle(g: SimpleGraph, mask: int, tries: int = 8, rotations: int = 200) -> list[int]:
    """Long cycle inside ``g[mask]`` by greedy path extension with rotations."""
    adj = [row & mask for row in g.adj]
    vs = sorted(bits(mask), key=lambda v: (-adj[v].bit_count(), v))
    best: list[int] = []
    for start in vs[:tries]:
        path = [start]
        used = 1 << start
        budget = rotations
        flipped = False
        while True:
            tail = path[-1]
            free = adj[tail] & ~used
            if free:
                nxt = min(bits(free), key=lambda u: ((adj[u] & ~used).bit_count(), u))
                path.append(nxt)
                used |= 1 << nxt
                continue
            rotated = False
            if budget > 0:
                pos = {v: i for i, v in enumerate(path)}
                for u in bits(adj[tail]):
                    i = pos[u]
                    if i + 1 < len(path) - 1 and adj[path[i + 1]] & ~used:
                        path[i + 1:] = reversed(path[i + 1:])
                        budget -= 1
                        rotated = True
                        break
            if rotated:
                continue
            if not flipped:
                path.reverse()
                flipped = True
                continue
            break
        for ends in (path, path[::-1]):
            tail = ends[-1]
            for i, v in enumerate(ends[:-2]):
                if adj[tail] >> v & 1:
                    if len(ends) - i > len(best):
                        best = ends[i:]
                    break
    return best if len(best) >= 3 else []


# --------------------------------------------------------- per-block API


def _blocks_with_cycles(g: SimpleGraph) -> list[int]:
    blocks, _ = biconnected_blocks(g)
    return sorted((b for b in blocks if b.bit_count() >= 3), key=lambda b: (-b.bit_count(), b))


def _cycle_regions(g: SimpleGraph) -> list[int]:
    """Vertex masks that together contain every cycle, largest first.

    Complete multipartite components are kept whole (their closed form
    needs no block decomposition); other components are split into blocks.
    """
    regions = []
    rest = 0
    for comp in component_masks(g):
        if comp.bit_count() < 3:
            continue
        if multipartite_parts(g, comp) is not None:
            regions.append(comp)
        else:
            rest |= comp
    if rest:
        sub, index = induced_subgraph(g, bits(rest))
        for block in _blocks_with_cycles(sub):
            regions.append(mask_of(index[v] for v in bits(block)))
    return sorted(regions, key=lambda b: (-b.bit_count(), b))


def _block_spectrum(g: SimpleGraph, block: int, exact_limit: int):
    """(spectrum, first-mask table, dp, local graph, index) for one block."""
    parts = multipartite_parts(g, block)
    if parts is not None:
        return _multipartite_spectrum([p.bit_count() for p in parts]), ("multipartite", parts)
    if block.bit_count() > exact_limit:
        raise SizeLimitError(f"block of order {block.bit_count()} exceeds exact limit {exact_limit}")
    sub, index = induced_subgraph(g, bits(block))
    dp, first = _cycle_dp(list(sub.adj))
    return set(first), ("dp", dp, first, sub, index)


def _witness_from(info, length: int) -> list[int]:
    if info[0] == "multipartite":
        return _multipartite_cycle(info[1], length)
    _, dp, first, sub, index = info
    return [index[v] for v in _dp_witness(dp, list(sub.adj), first[length])]


def cycle_spectrum(g: SimpleGraph, exact_limit: int = EXACT_LIMIT) -> set[int]:
    """Every k such that ``g`` has a cycle of length exactly k."""
    out: set[int] = set()
    for block in _cycle_regions(g):
        spec, _ = _block_spectrum(g, block, exact_limit)
        out |= spec
    return out


def circumference(g: SimpleGraph, heuristic: bool = False, exact_limit: int = EXACT_LIMIT) -> CycleResult:
    """Longest cycle (length 0 and no witness for forests).

    Blocks above ``exact_limit`` raise SizeLimitError unless ``heuristic``
    is set, in which case the result is a lower bound marked ``exact=False``.
    """
    best_len, best_cycle, exact = 0, None, True
    for block in _cycle_regions(g):
        size = block.bit_count()
        if size <= best_len:
            break
        parts = multipartite_parts(g, block)
        if parts is not None:
            spec = _multipartite_spectrum([p.bit_count() for p in parts])
            if spec and max(spec) > best_len:
                best_len = max(spec)
                best_cycle = _multipartite_cycle(parts, best_len)
            continue
        guess = _heuristic_cycle(g, block)
        if len(guess) == size:
            best_len, best_cycle = size, guess
            continue
        if size > exact_limit:
            if not heuristic:
                raise SizeLimitError(f"block of order {size} exceeds exact limit {exact_limit}")
            exact = False
            if len(guess) > best_len:
                best_len, best_cycle = len(guess), guess
            continue
        spec, info = _block_spectrum(g, block, exact_limit)
        if spec and max(spec) > best_len:
            best_len = max(spec)
            best_cycle = _witness_from(info, best_len)
    cycle = CycleEmbedding(tuple(best_cycle)) if best_cycle else None
    return CycleResult(best_len, cycle, exact)


def _short_cycle_dfs(g: SimpleGraph, block: int, k: int) -> list[int] | None:
    """Exact search for a k-cycle by depth-first path growth (small k)."""
    adj = [row & block for row in g.adj]
    for s in bits(block):
        higher = block & ~((1 << (s + 1)) - 1)

        def grow(path: list[int], used: int) -> list[int] | None:
            tail = path[-1]
            if len(path) == k:
                return path if adj[tail] >> s & 1 else None
            cand = adj[tail] & higher & ~used
            while cand:
                lb = cand & -cand
                cand ^= lb
                u = lb.bit_length() - 1
                found = grow(path + [u], used | lb)
                if found:
                    return found
            return None

        found = grow([s], 1 << s)
        if found:
            return found
    return None


def has_cycle_of_length(
    g: SimpleGraph, k: int, heuristic: bool = False, exact_limit: int = EXACT_LIMIT
) -> CycleEmbedding | None:
    """A cycle of length exactly ``k`` or None.

    Large non-multipartite blocks are searched by depth-first path growth
    when ``k`` is small (or when ``heuristic`` is set); the answer stays exact.
    """
    if k < 3:
        raise ValueError("cycle length must be at least 3")
    for block in _cycle_regions(g):
        if block.bit_count() < k:
            continue
        parts = multipartite_parts(g, block)
        if parts is not None:
            found = _multipartite_cycle(parts, k)
            if found:
                return CycleEmbedding(tuple(found))
            continue
        if block.bit_count() > exact_limit:
            if k > _SHORT_CYCLE_DFS and not heuristic:
                raise SizeLimitError(f"block of order {block.bit_count()} exceeds exact limit {exact_limit}")
            found = _short_cycle_dfs(g, block, k)
            if found:
                return CycleEmbedding(tuple(found))
            continue
        spec, info = _block_spectrum(g, block, exact_limit)
        if k in spec:
            return CycleEmbedding(tuple(_witness_from(info, k)))
    return None


def girth(g: SimpleGraph) -> tuple[int, CycleEmbedding] | None:
    """Shortest cycle by breadth-first search from every vertex."""
    n = g.n
    nbrs = [bits(row) for row in g.adj]
    best = None
    best_cycle = None
    for root in range(n):
        dist = [-1] * n
        parent = [-1] * n
        dist[root] = 0
        queue = [root]
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            if best is not None and 2 * dist[u] + 1 >= best:
                break
            for w in nbrs[u]:
                if dist[w] == -1:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u] and dist[w] >= dist[u]:
                    length = dist[u] + dist[w] + 1
                    if best is None or length < best:
                        best = length
                        left, right = [u], [w]
                        while parent[left[-1]] != -1:
                            left.append(parent[left[-1]])
                        while parent[right[-1]] != -1:
                            right.append(parent[right[-1]])
                        best_cycle = left[::-1] + right[:-1]
    if best is None:
        return None
    return best, CycleEmbedding(tuple(best_cycle))


def is_weakly_pancyclic(g: SimpleGraph) -> bool:
    spec = cycle_spectrum(g)
    return not spec or spec == set(range(min(spec), max(spec) + 1))


def is_balanced_complete_bipartite(g: SimpleGraph) -> bool:
    """K_{r,r} test: the complement is two disjoint cliques of equal order."""
    if g.n == 0 or g.n % 2:
        return False
    parts = multipartite_parts(g)
    return parts is not None and len(parts) == 2 and parts[0].bit_count() == parts[1].bit_count()


def check_dirac(g: SimpleGraph) -> DiracReport:
    delta = g.min_degree()
    bound = min(2 * delta, g.n)
    if not is_two_connected(g):
        return DiracReport(False, g.n, delta, bound)
    res = circumference(g)
    return DiracReport(True, g.n, delta, bound, res.length, res.cycle)


def check_bondy(g: SimpleGraph) -> BondyReport:
    delta = g.min_degree()
    if g.n == 0 or 2 * delta < g.n:
        return BondyReport("hypothesis-not-met", g.n, delta)
    if is_balanced_complete_bipartite(g):
        return BondyReport("exception-K_rr", g.n, delta, frozenset(cycle_spectrum(g)))
    spec = frozenset(cycle_spectrum(g))
    verdict = "pancyclic" if spec == frozenset(range(3, g.n + 1)) else "conclusion-violated"
    return BondyReport(verdict, g.n, delta, spec)


__all__ = [
    "CycleEmbedding",
    "CycleResult",
    "SizeLimitError",
    "biconnected_blocks",
    "check_bondy",
    "check_dirac",
    "circumference",
    "cycle_spectrum",
    "girth",
    "has_cycle_of_length",
    "is_two_connected",
    "is_weakly_pancyclic",
    "multipartite_parts",
]
