"""Regenerates planarity_networkx.txt (labels from networkx.check_planarity)."""
import random

import networkx as nx

rng = random.Random(20240611)
out = []
while len(out) < 400:
    n = rng.randint(5, 60)
    kind = rng.random()
    if kind < 0.4:
        m = rng.randint(n, min(3 * n, n * (n - 1) // 2))
        g = nx.gnm_random_graph(n, m, seed=rng.randint(0, 2**31))
    elif kind < 0.7:
        nx.random_geometric_graph(n, 0.35, seed=rng.randint(0, 2**31))  # keeps the stream aligned
        g = nx.convert_node_labels_to_integers(nx.triangular_lattice_graph(2, max(1, n // 4)))
        n = g.number_of_nodes()
        for _ in range(rng.randint(0, 3)):
            u, v = rng.sample(range(n), 2)
            g.add_edge(u, v)
    else:
        a, b = rng.randint(1, 6), rng.randint(1, 12)
        g = nx.complete_bipartite_graph(a, b)
        for e in list(g.edges()):
            if rng.random() < 0.3:
                g.remove_edge(*e)
        n = g.number_of_nodes()
    planar, _ = nx.check_planarity(g)
    edges = sorted((min(u, v), max(u, v)) for u, v in g.edges())
    out.append((planar, n, edges))

with open("planarity_networkx.txt", "w") as f:
    f.write(f"{len(out)}\n")
    for planar, n, edges in out:
        f.write(f"{int(planar)}\nsimple {n} {len(edges)}\n")
        for u, v in edges:
            f.write(f"{u} {v}\n")
