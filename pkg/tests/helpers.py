from ramsey_workbench.graph import SimpleGraph


def random_graph(rng, n, p=None):
    if p is None:
        p = rng.random()
    edges = [(u, v) for v in range(n) for u in range(v) if rng.random() < p]
    return SimpleGraph.from_edges(n, edges)


def edges_of(g):
    return list(g.edges())
