"""Word adjacency networks.

Each distinct lemma becomes a node; consecutive tokens are linked by an
undirected edge whose integer weight counts how often the pair occurs
adjacently. Co-occurrence weights are kept for export and for strength
measurements, but the symmetry walk operates on the unweighted topology.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .corpus import Token

__all__ = [
    "WordNetwork",
    "build_wan",
    "shared_vocabulary",
    "export_edgelist",
    "import_edgelist",
    "export_json",
    "import_json",
    "load_network",
]


@dataclass
class WordNetwork:
    """Undirected weighted graph over distinct lemmas.

    ``lemmas[i]`` is the lemma of node ``i``; ``lemma_ids`` is the
    inverse mapping. ``edges`` maps each pair ``(i, j)`` with ``i < j``
    to its positive co-occurrence count. ``node_frequency[i]`` counts
    occurrences of the lemma in the source text (isolated nodes are
    legal: a lemma alone in its sentence has frequency but no edges).
    """

    lemmas: list[str]
    lemma_ids: dict[str, int]
    edges: dict[tuple[int, int], int]
    node_frequency: list[int]
    _adjacency: list[list[int]] | None = field(default=None, repr=False, compare=False)
    _csr: tuple[np.ndarray, np.ndarray] | None = field(default=None, repr=False, compare=False)

    @property
    def node_count(self) -> int:
        return len(self.lemmas)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def adjacency(self) -> list[list[int]]:
        """Sorted neighbor lists, built once and cached."""
        if self._adjacency is None:
            adj: list[list[int]] = [[] for _ in range(self.node_count)]
            for i, j in self.edges:
                adj[i].append(j)
                adj[j].append(i)
            for nbrs in adj:
                nbrs.sort()
            self._adjacency = adj
        return self._adjacency

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """Unweighted adjacency in CSR form (indptr, indices), int32."""
        if self._csr is None:
            adj = self.adjacency()
            indptr = np.zeros(self.node_count + 1, dtype=np.int64)
            for i, nbrs in enumerate(adj):
                indptr[i + 1] = indptr[i] + len(nbrs)
            indices = np.empty(indptr[-1], dtype=np.int32)
            for i, nbrs in enumerate(adj):
                indices[indptr[i] : indptr[i + 1]] = nbrs
            self._csr = (indptr, indices)
        return self._csr

    def degree(self, node: int) -> int:
        return len(self.adjacency()[node])

    def has_node(self, lemma: str) -> bool:
        return lemma in self.lemma_ids

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.node_count))
        g.add_weighted_edges_from((i, j, w) for (i, j), w in self.edges.items())
        return g

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, str]],
                   frequencies: dict[str, int] | None = None) -> "WordNetwork":
        """Build a network from explicit lemma pairs (mainly for tests
        and edge-list import). Repeated pairs accumulate weight."""
        lemmas: list[str] = []
        ids: dict[str, int] = {}
        edges: dict[tuple[int, int], int] = {}

        def intern(lemma: str) -> int:
            if lemma not in ids:
                ids[lemma] = len(lemmas)
                lemmas.append(lemma)
            return ids[lemma]

        for a, b in pairs:
            i, j = intern(a), intern(b)
            if i == j:
                continue
            key = (i, j) if i < j else (j, i)
            edges[key] = edges.get(key, 0) + 1
        if frequencies:
            for lemma in frequencies:
                intern(lemma)
            freq = [frequencies.get(l, 1) for l in lemmas]
        else:
            freq = [1] * len(lemmas)
        return cls(lemmas, ids, edges, freq)


def build_wan(tokens: Sequence[Token], cross_sentence_edges: bool = False) -> WordNetwork:
    """Construct the word adjacency network of a token sequence.

    Consecutive tokens are linked unless the pair straddles a sentence
    boundary and ``cross_sentence_edges`` is false. Identical
    consecutive lemmas create no self-loop. Every lemma becomes a node
    even if all its adjacencies are suppressed.
    """
    lemmas: list[str] = []
    ids: dict[str, int] = {}
    freq: list[int] = []
    edges: dict[tuple[int, int], int] = {}

    prev_id = -1
    prev_sentence = -1
    for tok in tokens:
        node = ids.get(tok.lemma)
        if node is None:
            node = len(lemmas)
            ids[tok.lemma] = node
            lemmas.append(tok.lemma)
            freq.append(0)
        freq[node] += 1
        if prev_id >= 0 and (cross_sentence_edges or tok.sentence_index == prev_sentence):
            if node != prev_id:
                key = (prev_id, node) if prev_id < node else (node, prev_id)
                edges[key] = edges.get(key, 0) + 1
        prev_id = node
        prev_sentence = tok.sentence_index
    return WordNetwork(lemmas, ids, edges, freq)


def shared_vocabulary(networks: Sequence[WordNetwork]) -> list[str]:
    """Lemmas present in every network, sorted lexicographically."""
    if not networks:
        raise ValueError("shared_vocabulary needs at least one network")
    shared = set(networks[0].lemma_ids)
    for net in networks[1:]:
        shared &= net.lemma_ids.keys()
    return sorted(shared)


def export_edgelist(net: WordNetwork, path: str | Path) -> None:
    """Write ``lemma_a<TAB>lemma_b<TAB>weight`` lines, sorted.

    The edge list captures the weighted topology only; node frequencies
    and isolated nodes travel in the JSON format.
    """
    rows = []
    for (i, j), w in net.edges.items():
        a, b = sorted((net.lemmas[i], net.lemmas[j]))
        rows.append((a, b, w))
    rows.sort()
    with open(path, "w", encoding="utf-8") as fh:
        for a, b, w in rows:
            fh.write(f"{a}\t{b}\t{w}\n")


def import_edgelist(path: str | Path) -> WordNetwork:
    """Read an edge-list TSV back into a network (frequencies default 1)."""
    pairs: list[tuple[str, str]] = []
    weights: list[int] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise ValueError(f"{path}:{lineno}: expected 3 tab-separated fields")
            pairs.append((parts[0], parts[1]))
            weights.append(int(parts[2]))
    net = WordNetwork.from_pairs(pairs)
    for (a, b), w in zip(pairs, weights):
        i, j = net.lemma_ids[a], net.lemma_ids[b]
        key = (i, j) if i < j else (j, i)
        net.edges[key] = w
    return net


def export_json(net: WordNetwork, path: str | Path) -> None:
    """Write the full network (nodes with frequencies, weighted edges)."""
    payload = {
        "nodes": [{"lemma": l, "freq": f} for l, f in zip(net.lemmas, net.node_frequency)],
        "edges": sorted([i, j, w] for (i, j), w in net.edges.items()),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def import_json(path: str | Path) -> WordNetwork:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    lemmas = [n["lemma"] for n in payload["nodes"]]
    freq = [int(n["freq"]) for n in payload["nodes"]]
    ids = {l: i for i, l in enumerate(lemmas)}
    if len(ids) != len(lemmas):
        raise ValueError(f"{path}: duplicate lemmas in node list")
    edges: dict[tuple[int, int], int] = {}
    for i, j, w in payload["edges"]:
        if i == j:
            raise ValueError(f"{path}: self-loop on node {i}")
        key = (i, j) if i < j else (j, i)
        edges[key] = int(w)
    return WordNetwork(lemmas, ids, edges, freq)


def load_network(path: str | Path) -> WordNetwork:
    """Load a network from ``.json`` or edge-list ``.tsv`` by extension."""
    path = Path(path)
    if path.suffix == ".json":
        return import_json(path)
    return import_edgelist(path)
