"""Level-wise candidate generation that preserves transitive closure.

Edge candidates with one extra edge come from three disjoint sources:

* a parallel episode (no distinct-label edges) gains its first proper
  edge, in every direction that keeps it transitively closed;
* Case A: two siblings sharing all but their last proper skeleton edge
  are joined, keeping both of those edges skeleton in the result;
* Case B: an episode's last proper skeleton edge is hidden behind a new
  two-edge path through a fresh edge.

Node candidates grow parallel episodes by an apriori join on their
label multisets plus a one-longer chain of the last label. No source
ever produces the same candidate twice, so callers assert uniqueness
rather than deduplicate.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .episode import (
    Edge,
    Episode,
    has_proper_edges,
    label_rank,
    last_proper_skeleton,
    node_at_rank,
    skeleton_edges,
)


def closes_transitively(episode: Episode, edge: Edge) -> bool:
    """True when adding ``edge`` to a transitively closed episode keeps
    it transitively closed: the source must already cover the target's
    children and the source's parents must cover the target."""
    x, y = edge
    return (
        not episode.succ_mask(y) & ~episode.succ_mask(x)
        and not episode.pred_mask(x) & ~episode.pred_mask(y)
    )


def join_case_a(g1: Episode, g2: Episode) -> Optional[Episode]:
    """Joins two episodes over identical nodes whose edge sets differ
    by exactly one edge each, g1's being its last proper skeleton edge.

    Returns g1 plus g2's extra edge when the union is acyclic and
    transitively closed, which holds exactly when the two extra edges
    do not chain, or chain in a direction g1 already shortcuts. None
    signals rejection.
    """
    if g1.labels != g2.labels or g1.edge_count != g2.edge_count:
        raise ValueError("join requires identical nodes and edge counts")
    e1 = last_proper_skeleton(g1)
    extra = set(g2.edges).difference(g1.edges)
    if e1 is None or len(extra) != 1 or e1 in g2.edges:
        raise ValueError("join requires siblings differing in last(g1) only")
    e2 = extra.pop()
    if not e2 > e1:
        return None
    x1, y1 = e1
    x2, y2 = e2
    if g1.has_edge(y2, x2):
        return None  # adding e2 would close a cycle
    if x1 != y2 and x2 != y1:
        ok = True
    elif x1 != y2 and x2 == y1:
        ok = g1.has_edge(x1, y2)
    elif x2 != y1:
        ok = g1.has_edge(x2, y1)
    else:
        ok = False
    if not ok:
        return None
    joined = Episode(g1.labels, g1.edges + (e2,))
    assert joined.is_tc, "case A join produced an unclosed episode"
    return joined


def extend_case_b(g1: Episode, closure_of_g1: Episode) -> list[Episode]:
    """Extensions of g1 by one edge that demote last(g1) from skeleton
    rank: a new edge from a sibling of its source to its target, or
    from its source to a sibling of its target. Edges already implied
    by the stored i-closure are pruned."""
    e1 = last_proper_skeleton(g1)
    if e1 is None:
        raise ValueError("case B requires a proper skeleton edge")
    x1, y1 = e1
    proposals = []
    for u, w in skeleton_edges(g1):
        if u == x1 and w != y1:
            proposals.append((w, y1))
        if w == y1 and u != x1:
            proposals.append((x1, u))
    to_closure = [
        node_at_rank(closure_of_g1, *label_rank(g1, v))
        for v in range(g1.node_count)
    ]
    out = []
    for a, b in proposals:
        if g1.has_edge(a, b) or g1.has_edge(b, a):
            continue
        if closure_of_g1.has_edge(to_closure[a], to_closure[b]):
            continue
        if not closes_transitively(g1, (a, b)):
            continue
        extended = Episode(g1.labels, g1.edges + ((a, b),))
        if last_proper_skeleton(extended) == (a, b):
            out.append(extended)
    return out


def _first_proper_edges(episode: Episode) -> list[Episode]:
    """Every one-proper-edge extension of a parallel episode that stays
    transitively closed: both directions of every distinct-label pair,
    except where an equal-label chain forces more edges than one."""
    out = []
    n = episode.node_count
    for x in range(n):
        for y in range(n):
            if episode.labels[x] == episode.labels[y]:
                continue
            if closes_transitively(episode, (x, y)):
                out.append(Episode(episode.labels, episode.edges + ((x, y),)))
    return out


def generate_edge_candidates(
    level: Sequence[tuple[Episode, Episode]]
) -> list[Episode]:
    """Candidates with one more edge from a complete level of surviving
    episodes, given as (episode, stored i-closure) pairs that all share
    one node count and edge count."""
    out = []
    for episode, _ in level:
        if not has_proper_edges(episode):
            out.extend(_first_proper_edges(episode))
    # case A partners: g2 indexed under its edge set minus each proper
    # edge, so g1's lookup of edges-minus-last yields the joint siblings
    buckets: dict[tuple, list[tuple[Episode, Edge]]] = {}
    for g2, _ in level:
        for e in g2.edges:
            if g2.labels[e[0]] != g2.labels[e[1]]:
                key = (g2.labels, frozenset(g2.edges).difference((e,)))
                buckets.setdefault(key, []).append((g2, e))
    for g1, icl1 in level:
        e1 = last_proper_skeleton(g1)
        if e1 is None:
            continue
        to_closure = [
            node_at_rank(icl1, *label_rank(g1, v)) for v in range(g1.node_count)
        ]
        shared = (g1.labels, frozenset(g1.edges).difference((e1,)))
        for g2, e2 in buckets.get(shared, ()):
            if not e2 > e1:
                continue
            if icl1.has_edge(to_closure[e2[0]], to_closure[e2[1]]):
                continue
            joined = join_case_a(g1, g2)
            if joined is not None:
                assert last_proper_skeleton(joined) == e2
                out.append(joined)
        out.extend(extend_case_b(g1, icl1))
    assert len(set(out)) == len(out), "duplicate edge candidates generated"
    return out


def _parallel(labels: tuple[str, ...]) -> Episode:
    edges = [
        (i, j)
        for i in range(len(labels))
        for j in range(i + 1, len(labels))
        if labels[i] == labels[j]
    ]
    return Episode(labels, edges)


def generate_node_candidates(parallel_level: Sequence[Episode]) -> list[Episode]:
    """Parallel candidates with one more node: an apriori join of label
    multisets sharing all but their greatest label, plus each episode's
    last-label chain grown by one node."""
    lasts_by_prefix: dict[tuple[str, ...], list[str]] = {}
    for episode in parallel_level:
        if has_proper_edges(episode):
            raise ValueError("node growth expects parallel episodes")
        lasts_by_prefix.setdefault(episode.labels[:-1], []).append(
            episode.labels[-1]
        )
    out = []
    for episode in parallel_level:
        prefix = episode.labels[:-1]
        last = episode.labels[-1]
        for other in lasts_by_prefix.get(prefix, ()):
            if other > last:
                out.append(_parallel(episode.labels + (other,)))
        out.append(_parallel(episode.labels + (last,)))
    assert len(set(out)) == len(out), "duplicate node candidates generated"
    return out
