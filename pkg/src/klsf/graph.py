"""
Edge-labelled graphs, label subsets and connectivity evaluation.

Vertices are numbered ``1..n`` and labels ``1..label_count``. The number of
connected components of the subgraph induced by a label subset is the
objective every solver in this package minimises.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field


class UnionFind:
    """Disjoint sets over ``0..size-1`` with path halving and union by size."""

    __slots__ = ("parent", "size", "count")

    def __init__(self, size: int, count: int | None = None):
        self.parent = list(range(size))
        self.size = [1] * size
        self.count = size if count is None else count

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        """Merge the sets holding ``a`` and ``b``; return True if they were distinct."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.count -= 1
        return True

    def roots(self) -> list[int]:
        return [self.find(x) for x in range(len(self.parent))]

    def copy(self) -> UnionFind:
        uf = UnionFind.__new__(UnionFind)
        uf.parent = self.parent.copy()
        uf.size = self.size.copy()
        uf.count = self.count
        return uf


@dataclass(frozen=True)
class LabeledGraph:
    """Immutable undirected graph whose edges carry labels.

    Parallel edges are allowed, self-loops are not. Labels that appear on no
    edge are legal and simply contribute nothing to connectivity.
    """

    n: int
    edges: tuple[tuple[int, int, int], ...]
    label_count: int
    label_index: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    label_pairs: tuple[tuple[tuple[int, int], ...], ...] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"graph needs at least one vertex, got n={self.n}")
        if self.label_count < 1:
            raise ValueError(f"label_count must be >= 1, got {self.label_count}")
        edges = tuple((int(u), int(v), int(lab)) for u, v, lab in self.edges)
        index: list[list[int]] = [[] for _ in range(self.label_count + 1)]
        for i, (u, v, lab) in enumerate(edges):
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"edge {i} has vertex outside [1, {self.n}]: {(u, v)}")
            if u == v:
                raise ValueError(f"edge {i} is a self-loop on vertex {u}")
            if not 1 <= lab <= self.label_count:
                raise ValueError(f"edge {i} has label {lab} outside [1, {self.label_count}]")
            index[lab].append(i)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "label_index", tuple(tuple(ix) for ix in index))
        # Slot 0 is unused so that labels index directly.
        pairs = tuple(tuple((edges[i][0], edges[i][1]) for i in ix) for ix in index)
        object.__setattr__(self, "label_pairs", pairs)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def labels(self) -> range:
        return range(1, self.label_count + 1)

    def edges_with_label(self, label: int) -> list[tuple[int, int, int]]:
        return [self.edges[i] for i in self.label_index[label]]

    def union_find(self, labels: Iterable[int] = ()) -> UnionFind:
        """Union-find over the vertices after merging every edge whose label is in ``labels``."""
        # Index 0 is a dummy vertex that is never counted.
        uf = UnionFind(self.n + 1, count=self.n)
        for lab in labels:
            for u, v in self.label_pairs[lab]:
                uf.union(u, v)
        return uf

    def comp_after_adding(self, roots: list[int], count: int, label: int) -> int:
        """Component count obtained by adding ``label`` to a state given by its root map."""
        local: dict[int, int] = {}
        merges = 0
        for u, v in self.label_pairs[label]:
            a, b = roots[u], roots[v]
            if a == b:
                continue
            while a in local:
                a = local[a]
            while b in local:
                b = local[b]
            if a != b:
                local[a] = b
                merges += 1
        return count - merges


class LabelSubset:
    """A mutable set of label ids with a cached component count.

    Any membership change drops the cache. ``comp`` is ``None`` until the
    subset is evaluated against a graph with :func:`comp_count`.
    """

    __slots__ = ("_members", "comp")

    def __init__(self, members: Iterable[int] = (), comp: int | None = None):
        self._members = set(members)
        self.comp = comp

    @property
    def members(self) -> frozenset[int]:
        return frozenset(self._members)

    def add(self, label: int) -> None:
        if label not in self._members:
            self._members.add(label)
            self.comp = None

    def remove(self, label: int) -> None:
        self._members.remove(label)
        self.comp = None

    def copy(self) -> LabelSubset:
        return LabelSubset(self._members, self.comp)

    def sorted(self) -> list[int]:
        return sorted(self._members)

    def key(self) -> tuple[int, int]:
        """Ordering used to compare solutions: fewer components first, then fewer labels."""
        if self.comp is None:
            raise ValueError("subset has not been evaluated")
        return (self.comp, len(self._members))

    def __len__(self) -> int:
        return len(self._members)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self._members))

    def __contains__(self, label: object) -> bool:
        return label in self._members

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LabelSubset):
            return self._members == other._members
        if isinstance(other, (set, frozenset)):
            return self._members == other
        return NotImplemented

    __hash__ = None  # mutable

    def __repr__(self) -> str:
        return f"LabelSubset({self.sorted()}, comp={self.comp})"


@dataclass(frozen=True)
class SpanningForest:
    edges: tuple[tuple[int, int, int], ...]
    tree_count: int


def comp_count(g: LabeledGraph, c: LabelSubset) -> int:
    """Number of connected components of the subgraph keeping edges labelled in ``c``.

    The result is cached on ``c``.
    """
    for lab in c._members:
        if not 1 <= lab <= g.label_count:
            raise ValueError(f"label {lab} outside [1, {g.label_count}]")
    c.comp = g.union_find(c._members).count
    return c.comp


def evaluate(g: LabeledGraph, c: LabelSubset) -> LabelSubset:
    """Make sure ``c`` carries its component count; returns ``c``."""
    if c.comp is None:
        comp_count(g, c)
    return c


def hamming_distance(c1: LabelSubset | Iterable[int], c2: LabelSubset | Iterable[int]) -> int:
    a = c1.members if isinstance(c1, LabelSubset) else set(c1)
    b = c2.members if isinstance(c2, LabelSubset) else set(c2)
    return len(a ^ b)


def extract_forest(g: LabeledGraph, c: LabelSubset) -> SpanningForest:
    """Spanning forest of the subgraph induced by ``c``.

    A single union-find pass keeps only the edges that join two different
    trees, so every cycle loses exactly one edge.
    """
    uf = UnionFind(g.n + 1, count=g.n)
    kept = []
    for lab in sorted(c.members):
        for i in g.label_index[lab]:
            u, v, _ = g.edges[i]
            if uf.union(u, v):
                kept.append(g.edges[i])
    c.comp = uf.count
    return SpanningForest(tuple(kept), uf.count)
