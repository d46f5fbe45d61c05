import networkx as nx
import numpy as np

from klsf import InstanceSpec, LabeledGraph, generate_graph


def nx_components(g: LabeledGraph, labels) -> int:
    chosen = set(labels)
    h = nx.Graph()
    h.add_nodes_from(range(1, g.n + 1))
    h.add_edges_from((u, v) for u, v, lab in g.edges if lab in chosen)
    return nx.number_connected_components(h)


def random_graph(rng: np.random.Generator, n_max=20, l_max=10) -> LabeledGraph:
    n = int(rng.integers(2, n_max + 1))
    labels = int(rng.integers(1, l_max + 1))
    density = float(rng.uniform(0.05, 0.6))
    return generate_graph(InstanceSpec(n, labels, density, int(rng.integers(2**32))))


def random_subset(rng: np.random.Generator, labels: int) -> set[int]:
    return {lab for lab in range(1, labels + 1) if rng.random() < 0.5}
