"""Generators and small oracles shared between test modules."""

import random

from decobs import ColoredGraph


def random_colored_graph(rng: random.Random, max_nodes: int = 8, max_agents: int = 3) -> ColoredGraph:
    """Arbitrary coloured graph: random signatures over small per-agent pools,
    random node colours.  Duplicate signatures (empty-set edges) are likely."""
    n = rng.randint(1, max_agents)
    size = rng.randint(1, max_nodes)
    pools = [[f"v{k}" for k in range(rng.randint(1, 3))] for _ in range(n)]
    signatures = tuple(
        tuple(rng.choice(pools[i]) for i in range(n)) for _ in range(size)
    )
    colours = tuple(rng.randint(0, 1) for _ in range(size))
    return ColoredGraph(
        n=n,
        keys=tuple(range(size)),
        signatures=signatures,
        colours=colours,
        kind="generic",
    )


def brute_force_morphism_exists(src: ColoredGraph, dst: ColoredGraph) -> bool:
    """Try every node map; independent of the backtracking search."""
    if len(src) == 0:
        return True
    if len(dst) == 0:
        return False

    def ok(mapping):
        for v in range(len(src)):
            if src.colours[v] != dst.colours[mapping[v]]:
                return False
        for u in range(len(src)):
            for v in range(u + 1, len(src)):
                if not dst.edge_colour(mapping[u], mapping[v]) <= src.edge_colour(u, v):
                    return False
        return True

    import itertools

    return any(ok(m) for m in itertools.product(range(len(dst)), repeat=len(src)))
