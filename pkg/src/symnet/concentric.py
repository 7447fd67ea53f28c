"""Concentric symmetry of network neighborhoods.

A concentric pattern around a node collects the nodes at shortest-path
distance 0..h together with the edges inside each ring (intra-level) and
between consecutive rings (inter-level). Two pattern transformations
remove the degeneracy caused by intra-level edges:

* backbone: intra-level edges are deleted, nodes stay singletons;
* merged: each level's intra-level connected components collapse into
  weighted super-nodes, the weight between two super-nodes counting the
  original edges that ran between their members.

An agent starts on the center and walks strictly outward, never back to
a lower level, splitting its probability mass over inter-level edges
proportionally to weight. A (super-)node with no edge to the next level
is a dead end and keeps its mass. The symmetry value is the exponential
of the Shannon entropy of the terminal mass distribution, normalized by
the number of level-h super-nodes plus the number of dead ends; it is 1
exactly for a perfectly uniform reach of the h-th neighborhood and
drops toward 0 as the access gets more lopsided.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Literal

from .wan import WordNetwork

__all__ = [
    "Kind",
    "KINDS",
    "ConcentricPattern",
    "TransformedPattern",
    "TransitionDistribution",
    "SymmetryValue",
    "extract_pattern",
    "backbone_transform",
    "merged_transform",
    "propagate",
    "symmetry",
    "symmetry_all",
]

Kind = Literal["backbone", "merged"]
KINDS: tuple[Kind, ...] = ("backbone", "merged")

SuperNode = tuple[int, ...]
Outcome = tuple[int, SuperNode]  # (level, super-node members)


@dataclass
class ConcentricPattern:
    """BFS rings around ``center`` with their induced edges.

    ``levels[r]`` holds the sorted node ids at distance exactly ``r``
    (``levels[0] == [center]``; trailing levels may be empty when the
    graph runs out before ``h`` hops). ``intra_edges[r]`` are the edges
    inside level ``r``; ``inter_edges[r]`` connect level ``r`` to level
    ``r + 1``, always written lower-level endpoint first.
    """

    center: int
    h: int
    levels: list[list[int]]
    intra_edges: list[list[tuple[int, int]]]
    inter_edges: list[list[tuple[int, int]]]


@dataclass
class TransformedPattern:
    """A backbone or merged variant of a concentric pattern.

    ``super_nodes[r]`` partitions level ``r`` into member tuples
    (singletons for backbone, intra-level components for merged),
    ordered by smallest member. ``inter_weights[r]`` maps super-node
    index pairs ``(a, b)`` — ``a`` at level ``r``, ``b`` at ``r + 1`` —
    to the number of original edges between the two groups.
    ``dead_end_counts[r]`` counts the level-``r`` super-nodes with no
    edge onward, for ``r`` in ``0..h-1``.
    """

    kind: Kind
    center: int
    h: int
    super_nodes: list[list[SuperNode]]
    inter_weights: list[dict[tuple[int, int], int]]
    dead_end_counts: list[int]


@dataclass
class TransitionDistribution:
    """Terminal probability mass of the strictly-outward walk.

    Keys are ``(level, super-node members)``: either a super-node at
    level ``h`` or a dead-end super-node at some lower level. Empty when
    the walk cannot leave the center (isolated node).
    """

    terminal_mass: dict[Outcome, float] = field(default_factory=dict)

    def total(self) -> float:
        return sum(self.terminal_mass.values())

    def items(self) -> Iterator[tuple[Outcome, float]]:
        return iter(self.terminal_mass.items())

    def __bool__(self) -> bool:
        return bool(self.terminal_mass)


@dataclass(frozen=True)
class SymmetryValue:
    """Per-node symmetry result; ``value`` is None for isolated nodes."""

    node: int
    kind: Kind
    h: int
    value: float | None

    @property
    def defined(self) -> bool:
        return self.value is not None


def extract_pattern(net: WordNetwork, center: int, h: int) -> ConcentricPattern:
    """BFS out to ``h`` hops and split the induced edges by ring."""
    if not 0 <= center < net.node_count:
        raise ValueError(f"unknown node id {center}")
    if h < 1:
        raise ValueError(f"h must be >= 1, got {h}")
    adj = net.adjacency()

    dist: dict[int, int] = {center: 0}
    levels: list[list[int]] = [[center]]
    frontier = [center]
    for r in range(1, h + 1):
        nxt: list[int] = []
        for u in frontier:
            for v in adj[u]:
                if v not in dist:
                    dist[v] = r
                    nxt.append(v)
        nxt.sort()
        levels.append(nxt)
        frontier = nxt

    intra: list[list[tuple[int, int]]] = [[] for _ in range(h + 1)]
    inter: list[list[tuple[int, int]]] = [[] for _ in range(h)]
    for r, nodes in enumerate(levels):
        for u in nodes:
            for v in adj[u]:
                dv = dist.get(v)
                if dv == r and u < v:
                    intra[r].append((u, v))
                elif dv == r + 1 and r < h:
                    inter[r].append((u, v))
    return ConcentricPattern(center, h, levels, intra, inter)


def backbone_transform(pattern: ConcentricPattern) -> TransformedPattern:
    """Drop intra-level edges; every node stays its own super-node."""
    supers = [[(u,) for u in level] for level in pattern.levels]
    index = [{u: i for i, u in enumerate(level)} for level in pattern.levels]
    weights: list[dict[tuple[int, int], int]] = []
    for r in range(pattern.h):
        w: dict[tuple[int, int], int] = {}
        for u, v in pattern.inter_edges[r]:
            w[(index[r][u], index[r + 1][v])] = 1
        weights.append(w)
    return TransformedPattern("backbone", pattern.center, pattern.h, supers,
                              weights, _dead_ends(supers, weights, pattern.h))


def merged_transform(pattern: ConcentricPattern) -> TransformedPattern:
    """Collapse each level's intra-level components into super-nodes.

    The weight between a super-node and one at the next level counts the
    original edges spanning the two groups, so a walk leaving the merged
    node splits proportionally to how many connections each direction
    absorbed.
    """
    supers: list[list[SuperNode]] = []
    member_index: list[dict[int, int]] = []
    for r, level in enumerate(pattern.levels):
        parent = {u: u for u in level}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in pattern.intra_edges[r]:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
        groups: dict[int, list[int]] = {}
        for u in level:
            groups.setdefault(find(u), []).append(u)
        level_supers = [tuple(sorted(groups[root])) for root in sorted(groups)]
        supers.append(level_supers)
        member_index.append({u: i for i, s in enumerate(level_supers) for u in s})

    weights: list[dict[tuple[int, int], int]] = []
    for r in range(pattern.h):
        w: dict[tuple[int, int], int] = {}
        for u, v in pattern.inter_edges[r]:
            key = (member_index[r][u], member_index[r + 1][v])
            w[key] = w.get(key, 0) + 1
        weights.append(w)
    return TransformedPattern("merged", pattern.center, pattern.h, supers,
                              weights, _dead_ends(supers, weights, pattern.h))


def _dead_ends(supers: list[list[SuperNode]], weights: list[dict[tuple[int, int], int]],
               h: int) -> list[int]:
    counts = []
    for r in range(h):
        outgoing = {a for a, _ in weights[r]}
        counts.append(sum(1 for i in range(len(supers[r])) if i not in outgoing))
    return counts


def propagate(tp: TransformedPattern) -> TransitionDistribution:
    """Sweep the walk's probability mass outward level by level.

    The center starts with mass 1. At each level a super-node's
    accumulated mass splits over its weighted edges to the next level
    proportionally to weight; with no outgoing edge the super-node is a
    dead end and its mass becomes terminal. Whatever reaches level ``h``
    is terminal. An isolated center yields an empty distribution: the
    walk has nowhere to go, so no outcome exists.
    """
    if tp.h >= 1 and not tp.super_nodes[1]:
        return TransitionDistribution({})

    terminal: dict[Outcome, float] = {}
    mass = [0.0] * len(tp.super_nodes[0])
    mass[0] = 1.0
    for r in range(tp.h):
        out_weight = [0] * len(tp.super_nodes[r])
        for (a, _), w in tp.inter_weights[r].items():
            out_weight[a] += w
        next_mass = [0.0] * len(tp.super_nodes[r + 1])
        for a, m in enumerate(mass):
            if m == 0.0:
                continue
            if out_weight[a] == 0:
                terminal[(r, tp.super_nodes[r][a])] = m
        for (a, b), w in sorted(tp.inter_weights[r].items()):
            if mass[a] > 0.0:
                next_mass[b] += mass[a] * (w / out_weight[a])
        mass = next_mass
    for b, m in enumerate(mass):
        if m > 0.0:
            terminal[(tp.h, tp.super_nodes[tp.h][b])] = m
    return TransitionDistribution(terminal)


def _value_from(tp: TransformedPattern, dist: TransitionDistribution) -> float | None:
    if not dist.terminal_mass:
        return None
    entropy = -sum(p * math.log(p) for p in dist.terminal_mass.values())
    denominator = len(tp.super_nodes[tp.h]) + sum(tp.dead_end_counts)
    return math.exp(entropy) / denominator


def _transform(pattern: ConcentricPattern, kind: Kind) -> TransformedPattern:
    if kind == "backbone":
        return backbone_transform(pattern)
    if kind == "merged":
        return merged_transform(pattern)
    raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")


def symmetry(net: WordNetwork, node: int, h: int, kind: Kind) -> SymmetryValue:
    """Symmetry of one node: exp(entropy of terminal masses) divided by
    the number of level-h super-nodes plus dead ends.

    Isolated nodes have no walk and get an undefined value rather than
    an exception; they are excluded from downstream statistics.
    """
    pattern = extract_pattern(net, node, h)
    tp = _transform(pattern, kind)
    return SymmetryValue(node, kind, h, _value_from(tp, propagate(tp)))


def symmetry_all(net: WordNetwork, h: int, kind: Kind, threads: int | None = None,
                 accelerate: bool | None = None) -> dict[int, SymmetryValue]:
    """Symmetry of every node.

    Dispatches to the compiled level-sweep kernel when numba is
    available (``accelerate=None``); results are identical to per-node
    :func:`symmetry` calls and independent of ``threads``. Pass
    ``accelerate=False`` to force the pure-Python path.
    """
    if h < 1:
        raise ValueError(f"h must be >= 1, got {h}")
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    from . import _sweep

    if accelerate is None:
        accelerate = _sweep.HAVE_NUMBA
    if accelerate and net.node_count > 0:
        values = _sweep.sweep_values(net, h, kind, threads=threads)
        return {
            i: SymmetryValue(i, kind, h, None if math.isnan(v) else float(v))
            for i, v in enumerate(values)
        }
    return {i: symmetry(net, i, h, kind) for i in range(net.node_count)}
