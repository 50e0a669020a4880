"""Labelled-DAG episode patterns and their structural operations.

An episode is a DAG whose nodes carry sequence symbols (labels). An
occurrence of an episode in an event sequence assigns each node a
distinct sequence position with its label, such that every edge points
left-to-right. Two constraints keep occurrences unambiguous:

* strictness: any two nodes with the same label are connected by a
  directed path, so equal-label nodes form a chain;
* canonical node order: node indices sort by label, and equal-label
  nodes sort by ancestry (the earlier index reaches the later one).

Episodes are immutable. Mining works inside the class of transitively
closed episodes; ``Episode.is_tc`` reports whether the stored edge set
is its own transitive closure.
"""

from __future__ import annotations

import re
import sys
from itertools import combinations, product
from typing import Iterable, Optional

Edge = tuple[int, int]


class CycleError(ValueError):
    """The edge set has a directed cycle."""


class NotStrictError(ValueError):
    """Two equal-label nodes are order-incomparable."""


def _reachability(n: int, succ: list[int]) -> list[int]:
    """Reachability bitmasks from successor bitmasks.

    Raises CycleError when the graph is not a DAG.
    """
    indeg = [0] * n
    for u in range(n):
        m = succ[u]
        while m:
            low = m & -m
            indeg[low.bit_length() - 1] += 1
            m ^= low
    queue = [u for u in range(n) if indeg[u] == 0]
    topo = []
    while queue:
        u = queue.pop()
        topo.append(u)
        m = succ[u]
        while m:
            low = m & -m
            v = low.bit_length() - 1
            indeg[v] -= 1
            if indeg[v] == 0:
                queue.append(v)
            m ^= low
    if len(topo) != n:
        raise CycleError("edge set has a directed cycle")
    reach = [0] * n
    for u in reversed(topo):
        r = succ[u]
        m = succ[u]
        while m:
            low = m & -m
            r |= reach[low.bit_length() - 1]
            m ^= low
        reach[u] = r
    return reach


class Episode:
    """Immutable episode in canonical node order.

    Construction validates the canonical invariants and raises
    CycleError / NotStrictError / ValueError when they fail; use
    :func:`canonicalize` to build an episode from nodes in arbitrary
    order.
    """

    __slots__ = ("labels", "edges", "_succ", "_pred", "_reach", "_tc", "_hash")

    labels: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __init__(self, labels: Iterable[str], edges: Iterable[Edge] = ()):
        labels = tuple(sys.intern(str(lab)) for lab in labels)
        edge_set = {(int(u), int(v)) for u, v in edges}
        n = len(labels)
        succ = [0] * n
        pred = [0] * n
        for u, v in edge_set:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for {n} nodes")
            if u == v:
                raise CycleError(f"self-loop on node {u}")
            succ[u] |= 1 << v
            pred[v] |= 1 << u
        reach = _reachability(n, succ)
        for i in range(1, n):
            if labels[i - 1] > labels[i]:
                raise ValueError("node labels not in canonical sorted order")
        for i in range(n):
            for j in range(i + 1, n):
                if labels[i] != labels[j]:
                    break
                if not reach[i] >> j & 1:
                    if reach[j] >> i & 1:
                        raise ValueError(
                            "equal-label nodes not in ancestor order")
                    raise NotStrictError(
                        f"equal-label nodes {i} and {j} are incomparable")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "edges", tuple(sorted(edge_set)))
        object.__setattr__(self, "_succ", succ)
        object.__setattr__(self, "_pred", pred)
        object.__setattr__(self, "_reach", reach)
        object.__setattr__(self, "_tc", succ == reach)
        object.__setattr__(self, "_hash", hash((labels, tuple(sorted(edge_set)))))

    def __setattr__(self, name, value):
        raise AttributeError("Episode is immutable")

    # -- identity ----------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Episode):
            return NotImplemented
        return self.labels == other.labels and self.edges == other.edges

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Episode({format_episode(self)})"

    # -- structure ---------------------------------------------------

    @property
    def node_count(self) -> int:
        return len(self.labels)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def is_tc(self) -> bool:
        """True when the edge set equals its own transitive closure."""
        return self._tc

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._succ[u] >> v & 1)

    def succ_mask(self, u: int) -> int:
        return self._succ[u]

    def pred_mask(self, v: int) -> int:
        return self._pred[v]

    def reach_mask(self, u: int) -> int:
        return self._reach[u]

    def sort_key(self):
        return (len(self.labels), len(self.edges), self.labels, self.edges)

    # -- edits -------------------------------------------------------
    # Each edit re-canonicalizes; transitive closure is the caller's
    # decision. Node indices can shift; map nodes across edits with
    # label_rank / node_at_rank.

    def with_edge(self, edge: Edge) -> "Episode":
        if edge in self.edges:
            raise ValueError(f"edge {edge} already present")
        return canonicalize(self.labels, self.edges + (tuple(edge),))

    def without_edge(self, edge: Edge) -> "Episode":
        edge = tuple(edge)
        if edge not in self.edges:
            raise ValueError(f"edge {edge} not present")
        return canonicalize(self.labels, tuple(e for e in self.edges if e != edge))

    def with_node(self, label: str) -> "Episode":
        """Adds a solitary node. A duplicate label raises NotStrictError
        because the new node would be incomparable to its chain."""
        return canonicalize(self.labels + (str(label),), self.edges)

    def without_node(self, v: int) -> "Episode":
        """Induced subgraph on the remaining nodes, re-canonicalized."""
        if not 0 <= v < len(self.labels):
            raise ValueError(f"node {v} out of range")
        keep = [i for i in range(len(self.labels)) if i != v]
        pos = {old: new for new, old in enumerate(keep)}
        return canonicalize(
            tuple(self.labels[i] for i in keep),
            tuple((pos[u], pos[w]) for u, w in self.edges if u != v and w != v),
        )


EMPTY = Episode((), ())


def canonicalize(labels: Iterable[str], edges: Iterable[Edge] = ()) -> Episode:
    """Builds an Episode from nodes in arbitrary order.

    Sorts nodes by label and, within equal labels, by ancestry; edge
    endpoints are renumbered accordingly. Idempotent on canonical
    input. Raises CycleError / NotStrictError like the constructor.
    """
    labels = tuple(str(lab) for lab in labels)
    n = len(labels)
    edge_set = {(int(u), int(v)) for u, v in edges}
    succ = [0] * n
    for u, v in edge_set:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u},{v}) out of range for {n} nodes")
        if u == v:
            raise CycleError(f"self-loop on node {u}")
        succ[u] |= 1 << v
    reach = _reachability(n, succ)
    rank = [0] * n
    groups: dict[str, list[int]] = {}
    for i, lab in enumerate(labels):
        groups.setdefault(lab, []).append(i)
    for group in groups.values():
        for a, b in combinations(group, 2):
            if reach[a] >> b & 1:
                rank[b] += 1
            elif reach[b] >> a & 1:
                rank[a] += 1
            else:
                raise NotStrictError(
                    f"equal-label nodes {a} and {b} are incomparable")
    order = sorted(range(n), key=lambda i: (labels[i], rank[i]))
    pos = [0] * n
    for new, old in enumerate(order):
        pos[old] = new
    return Episode(
        tuple(labels[i] for i in order),
        tuple((pos[u], pos[v]) for u, v in edge_set),
    )


def transitive_closure(episode: Episode) -> Episode:
    """The same nodes with all reachability edges materialized."""
    if episode.is_tc:
        return episode
    edges = []
    for u in range(episode.node_count):
        m = episode.reach_mask(u)
        while m:
            low = m & -m
            edges.append((u, low.bit_length() - 1))
            m ^= low
    return Episode(episode.labels, edges)


# -- skeleton ---------------------------------------------------------


def skeleton_edges(episode: Episode) -> list[Edge]:
    """Edges (u,v) with no two-edge path u -> w -> v.

    In a transitively closed episode these are the covering relations;
    every other edge is implied by a chain of them.
    """
    return [
        (u, v)
        for u, v in episode.edges
        if not episode.succ_mask(u) & episode.pred_mask(v)
    ]


def proper_skeleton_edges(episode: Episode) -> list[Edge]:
    """Skeleton edges whose endpoints carry different labels."""
    return [
        (u, v)
        for u, v in skeleton_edges(episode)
        if episode.labels[u] != episode.labels[v]
    ]


def last_proper_skeleton(episode: Episode) -> Optional[Edge]:
    """Largest proper skeleton edge in (source, target) order."""
    edges = proper_skeleton_edges(episode)
    return max(edges) if edges else None


def has_proper_edges(episode: Episode) -> bool:
    """False exactly for parallel episodes (only equal-label chain edges)."""
    return any(episode.labels[u] != episode.labels[v] for u, v in episode.edges)


# -- label bookkeeping -------------------------------------------------


def label_runs(labels: tuple[str, ...]) -> dict[str, tuple[int, int]]:
    """Half-open index range of each label's (contiguous) run."""
    runs: dict[str, tuple[int, int]] = {}
    start = 0
    for i in range(1, len(labels) + 1):
        if i == len(labels) or labels[i] != labels[start]:
            runs[labels[start]] = (start, i)
            start = i
    return runs


def label_rank(episode: Episode, v: int) -> tuple[str, int]:
    """Node identity that survives re-canonicalization: (label, position
    within the label's chain)."""
    lab = episode.labels[v]
    start, _ = label_runs(episode.labels)[lab]
    return (lab, v - start)


def node_at_rank(episode: Episode, lab: str, rank: int) -> Optional[int]:
    run = label_runs(episode.labels).get(lab)
    if run is None or rank >= run[1] - run[0]:
        return None
    return run[0] + rank


# -- comparison ---------------------------------------------------------


def is_subepisode(inner: Episode, outer: Episode) -> bool:
    """True when some label-respecting embedding of ``inner`` into
    ``outer`` carries every edge of ``inner`` onto an edge of ``outer``.

    Embeddings are order-preserving within each equal-label chain.
    Both episodes must be transitively closed.
    """
    if not (inner.is_tc and outer.is_tc):
        raise ValueError("subepisode test requires transitively closed episodes")
    if inner.node_count > outer.node_count:
        return False
    in_runs = label_runs(inner.labels)
    out_runs = label_runs(outer.labels)
    for lab, (a, b) in in_runs.items():
        out = out_runs.get(lab)
        if out is None or out[1] - out[0] < b - a:
            return False
    if inner.node_count == outer.node_count:
        return all(outer.has_edge(u, v) for u, v in inner.edges)
    per_label = []
    for lab, (a, b) in sorted(in_runs.items()):
        oa, ob = out_runs[lab]
        per_label.append([
            (a, [oa + k for k in pick])
            for pick in combinations(range(ob - oa), b - a)
        ])
    for choice in product(*per_label):
        alpha: dict[int, int] = {}
        for start, targets in choice:
            for off, tgt in enumerate(targets):
                alpha[start + off] = tgt
        if all(outer.has_edge(alpha[u], alpha[v]) for u, v in inner.edges):
            return True
    return False


def equivalent(a: Episode, b: Episode) -> bool:
    """Structural equality of canonical episodes."""
    return a == b


# -- text form ----------------------------------------------------------

_NODES_RE = re.compile(r"nodes=\[([^\]]*)\]")
_EDGES_RE = re.compile(r"edges=\[([^\]]*)\]")
_EDGE_RE = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)")


def format_episode(episode: Episode) -> str:
    nodes = ",".join(episode.labels)
    edges = ",".join(f"({u},{v})" for u, v in episode.edges)
    return f"nodes=[{nodes}] edges=[{edges}]"


def parse_episode(text: str) -> Episode:
    """Inverse of format_episode; whitespace-insensitive.

    Labels are comma-separated tokens and may not contain commas,
    brackets, or whitespace.
    """
    nm = _NODES_RE.search(text)
    em = _EDGES_RE.search(text)
    if nm is None or em is None:
        raise ValueError(f"cannot parse episode from {text!r}")
    raw = nm.group(1).strip()
    labels = []
    if raw:
        for tok in raw.split(","):
            tok = tok.strip()
            if not tok or re.search(r"[\s\[\]()]", tok):
                raise ValueError(f"bad node label {tok!r}")
            labels.append(tok)
    body = em.group(1)
    edges = [(int(u), int(v)) for u, v in _EDGE_RE.findall(body)]
    if _EDGE_RE.sub("", body).strip(" ,"):
        raise ValueError(f"bad edge list {body!r}")
    return canonicalize(labels, edges)
