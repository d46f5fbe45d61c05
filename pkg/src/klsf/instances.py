"""
Random instance generation, budget selection and the ``.klsf`` file format.

File layout (ASCII, 1-based ids)::

    c optional comment lines
    p klsf <n> <m> <labels> <k>
    e <u> <v> <label>        (m lines)
"""

from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO

import numpy as np

from .constructive import mvca
from .graph import LabeledGraph


class InstanceFormatError(ValueError):
    """Problem with an instance file; ``lineno`` is 1-based (0 when not tied to a line)."""

    def __init__(self, message: str, lineno: int = 0):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)


class HeaderError(InstanceFormatError):
    pass


class EdgeLineError(InstanceFormatError):
    pass


class IdRangeError(InstanceFormatError):
    pass


class SelfLoopError(InstanceFormatError):
    pass


class EdgeCountError(InstanceFormatError):
    pass


class UnrecognizedLayoutError(InstanceFormatError):
    pass


class NoValidKError(ValueError):
    pass


@dataclass(frozen=True)
class InstanceSpec:
    n: int
    label_count: int
    density: float = 0.5
    seed: int = 0

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if self.label_count < 1:
            raise ValueError(f"label_count must be >= 1, got {self.label_count}")
        if not 0 < self.density <= 1:
            raise ValueError(f"density must lie in (0, 1], got {self.density}")


@dataclass(frozen=True)
class Instance:
    graph: LabeledGraph
    k: int
    provenance: str = field(default="", compare=False)

    def __post_init__(self):
        if not 1 <= self.k <= self.graph.label_count:
            raise ValueError(f"k={self.k} outside [1, {self.graph.label_count}]")


def edge_count(n: int, density: float) -> int:
    # Round half up so that the count does not depend on banker's rounding.
    return int(math.floor(density * n * (n - 1) / 2 + 0.5))


def generate_graph(spec: InstanceSpec) -> LabeledGraph:
    """Uniformly sample distinct vertex pairs, each with a uniform label.

    Uses numpy's PCG64 so a seed gives the same graph on every platform. Edges
    are listed in lexicographic pair order.
    """
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    n = spec.n
    pairs = n * (n - 1) // 2
    m = edge_count(n, spec.density)
    chosen = np.sort(rng.choice(pairs, size=m, replace=False))
    us, vs = np.triu_indices(n, k=1)
    labels = rng.integers(1, spec.label_count + 1, size=m)
    edges = tuple(
        (int(u) + 1, int(v) + 1, int(lab))
        for u, v, lab in zip(us[chosen], vs[chosen], labels)
    )
    return LabeledGraph(n, edges, spec.label_count)


def determine_k(g: LabeledGraph) -> int:
    """Largest budget ``n // 2**j`` (smallest ``j >= 1``) whose greedy solution stays disconnected.

    Budgets above the number of labels are evaluated and returned as the
    label count.
    """
    j = 1
    while True:
        k = min(g.n >> j, g.label_count)
        if k < 1:
            raise NoValidKError(
                f"greedy solution is connected for every budget down to 1 (n={g.n})"
            )
        if mvca(g, k).comp > 1:
            return k
        j += 1


def generate_instance(spec: InstanceSpec, k: int | None = None) -> Instance:
    g = generate_graph(spec)
    if k is None:
        k = determine_k(g)
    prov = f"generated n={spec.n} l={spec.label_count} d={spec.density} seed={spec.seed}"
    return Instance(g, k, prov)


def format_instance(inst: Instance) -> str:
    g = inst.graph
    lines = []
    if inst.provenance:
        lines.append(f"c {inst.provenance}")
    lines.append(f"p klsf {g.n} {g.m} {g.label_count} {inst.k}")
    lines.extend(f"e {u} {v} {lab}" for u, v, lab in g.edges)
    return "\n".join(lines) + "\n"


def write_instance(inst: Instance, sink: str | os.PathLike | IO[str]) -> None:
    text = format_instance(inst)
    if hasattr(sink, "write"):
        sink.write(text)
    else:
        Path(sink).write_text(text, encoding="ascii")


def _ints(tokens: list[str], lineno: int, err: type[InstanceFormatError]) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise err(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def parse_instance(text: str, provenance: str = "") -> Instance:
    header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        if tokens[0] == "p":
            if header is not None:
                raise HeaderError("duplicate header", lineno)
            if len(tokens) != 6 or tokens[1] != "klsf":
                raise HeaderError(f"expected 'p klsf n m l k', got {raw.strip()!r}", lineno)
            n, m, labels, k = _ints(tokens[2:], lineno, HeaderError)
            if n < 1 or m < 0 or labels < 1 or not 1 <= k <= labels:
                raise HeaderError(f"invalid header values n={n} m={m} l={labels} k={k}", lineno)
            header = (n, m, labels, k, lineno)
        elif tokens[0] == "e":
            if header is None:
                raise HeaderError("edge line before header", lineno)
            if len(tokens) != 4:
                raise EdgeLineError(f"expected 'e u v label', got {raw.strip()!r}", lineno)
            u, v, lab = _ints(tokens[1:], lineno, EdgeLineError)
            n, _, labels, _, _ = header
            if not (1 <= u <= n and 1 <= v <= n):
                raise IdRangeError(f"vertex id outside [1, {n}]", lineno)
            if not 1 <= lab <= labels:
                raise IdRangeError(f"label id {lab} outside [1, {labels}]", lineno)
            if u == v:
                raise SelfLoopError(f"self-loop on vertex {u}", lineno)
            edges.append((u, v, lab))
        else:
            raise EdgeLineError(f"unknown line type {tokens[0]!r}", lineno)
    if header is None:
        raise HeaderError("missing 'p klsf' header")
    n, m, labels, k, lineno = header
    if len(edges) != m:
        raise EdgeCountError(f"header declares {m} edges, found {len(edges)}", lineno)
    return Instance(LabeledGraph(n, tuple(edges), labels), k, provenance)


def read_instance(source: str | os.PathLike | IO[str]) -> Instance:
    if hasattr(source, "read"):
        return parse_instance(source.read(), provenance="loaded <stream>")
    return parse_instance(Path(source).read_text(encoding="ascii"), provenance=f"loaded {source}")


MANIFEST_COLUMNS = ["path", "n", "l", "density", "seed", "k"]


def write_manifest(rows: list[dict], path: str | os.PathLike) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=MANIFEST_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)


def read_manifest(path: str | os.PathLike) -> list[dict]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def import_label_matrix(text: str, k: int | None = None, provenance: str = "") -> list[Instance]:
    """Best-effort reader for label-matrix instance files.

    Understands one or more blocks, each starting with ``n labels`` and
    followed by either the full ``n x n`` matrix or its strict upper
    triangle. Entries are 0-based labels; the value ``labels`` marks a
    missing edge. When both layouts fit a block, the one that lets the rest
    of the file parse wins (full first). Anything else is rejected.
    """
    try:
        values = [int(t) for t in text.split()]
    except ValueError:
        raise UnrecognizedLayoutError("non-integer token in label-matrix file") from None
    if not values:
        raise UnrecognizedLayoutError("no instance found")
    graphs = _parse_blocks(values, 0)
    if isinstance(graphs, str):
        raise UnrecognizedLayoutError(graphs)
    return [Instance(g, k if k is not None else determine_k(g), provenance) for g in graphs]


def _parse_blocks(values: list[int], pos: int) -> list[LabeledGraph] | str:
    """Graphs for ``values[pos:]``, or a message describing the first failure."""
    if pos == len(values):
        return []
    if pos + 2 > len(values):
        return f"truncated block header at token {pos}"
    n, labels = values[pos], values[pos + 1]
    if n < 2 or labels < 1:
        return f"implausible block header n={n} l={labels} at token {pos}"
    start = pos + 2
    failure = f"block at token {pos} (n={n}) fits neither a full nor an upper-triangle matrix"
    for reader, size in ((_full_edges, n * n), (_upper_edges, n * (n - 1) // 2)):
        if start + size > len(values):
            continue
        edges = reader(values[start:start + size], n, labels)
        if edges is None:
            continue
        rest = _parse_blocks(values, start + size)
        if isinstance(rest, str):
            failure = rest
            continue
        return [LabeledGraph(n, tuple(edges), labels)] + rest
    return failure


def _full_edges(block: list[int], n: int, labels: int) -> list | None:
    edges = []
    for i in range(n):
        if block[i * n + i] != labels:
            return None
        for j in range(i + 1, n):
            a = block[i * n + j]
            if a != block[j * n + i] or not 0 <= a <= labels:
                return None
            if a != labels:
                edges.append((i + 1, j + 1, a + 1))
    return edges


def _upper_edges(block: list[int], n: int, labels: int) -> list | None:
    edges = []
    idx = 0
    for i in range(n):
        for j in range(i + 1, n):
            a = block[idx]
            if not 0 <= a <= labels:
                return None
            if a != labels:
                edges.append((i + 1, j + 1, a + 1))
            idx += 1
    return edges


def import_official(path: str | os.PathLike, k: int | None = None) -> list[Instance]:
    return import_label_matrix(Path(path).read_text(), k=k, provenance=f"imported {path}")

