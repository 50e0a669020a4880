"""Instance-based closure operators over episodes.

All three operators preserve an episode's minimal windows and hence
its frequency: node closure adds a solitary node for every label that
occurs in all minimal windows, edge closure adds every edge that holds
in all instances, and i-closure composes the two. Episodes without a
single minimal window within the window size are returned unchanged;
the miner never closes infrequent episodes anyway.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .episode import Episode, canonicalize, transitive_closure
from .scanner import EventSequence, Interval, find_minimal_windows, has_window


@dataclass(frozen=True)
class ClosureContext:
    sequence: EventSequence
    window: int

    def __post_init__(self):
        if self.window < 1:
            raise ValueError(f"window must be positive, got {self.window}")

    def scan(self, episode: Episode) -> list[Interval]:
        return find_minimal_windows(episode, self.sequence, self.window)

    def has_window(self, episode: Episode) -> bool:
        return has_window(episode, self.sequence, self.window)


def node_closure(
    episode: Episode,
    ctx: ClosureContext,
    windows: Optional[Sequence[Interval]] = None,
) -> Episode:
    """Adds one solitary node per label occurring in every minimal
    window but not yet labelling a node.

    ``windows`` are the episode's minimal windows, passed in when the
    caller has already scanned; omitted, they are computed here.
    """
    if windows is None:
        windows = ctx.scan(episode)
    if not windows:
        return episode
    tokens = ctx.sequence.tokens
    own = set(episode.labels)
    common = set(tokens[windows[0][0] - 1:windows[0][1]])
    for a, b in windows[1:]:
        # once nothing beyond the episode's own labels survives, no
        # further window can add a node
        if common <= own:
            return episode
        common.intersection_update(tokens[a - 1:b])
    fresh = sorted(common.difference(own))
    if not fresh:
        return episode
    return canonicalize(episode.labels + tuple(fresh), episode.edges)


def edge_closure(
    episode: Episode,
    ctx: ClosureContext,
    windows: Optional[Sequence[Interval]] = None,
) -> Episode:
    """Adds every edge present in all instances.

    For each ordered pair (x, y) of distinct-label nodes joined in
    neither direction, the edge (x, y) holds in every instance exactly
    when the episode with the reversed edge (y, x) added has no minimal
    window. All pair tests run against the original episode, then the
    passing edges are added at once; the result is asserted to be its
    own transitive closure, which instance intersection guarantees.
    """
    if windows is None:
        windows = ctx.scan(episode)
    if not windows:
        return episode
    added = []
    for x in range(episode.node_count):
        for y in range(episode.node_count):
            if x == y or episode.labels[x] == episode.labels[y]:
                continue
            if episode.has_edge(x, y) or episode.has_edge(y, x):
                continue
            probe = transitive_closure(episode.with_edge((y, x)))
            if not ctx.has_window(probe):
                added.append((x, y))
    if not added:
        return episode
    closed = Episode(episode.labels, episode.edges + tuple(added))
    assert closed.is_tc, "edge closure left an implied edge unmaterialized"
    return closed


def i_closure(
    episode: Episode,
    ctx: ClosureContext,
    windows: Optional[Sequence[Interval]] = None,
) -> Episode:
    """Node closure followed by edge closure. Node closure preserves
    the minimal windows, so one scan serves both stages."""
    if windows is None:
        windows = ctx.scan(episode)
    return edge_closure(node_closure(episode, ctx, windows), ctx, windows)


def is_closed(episode: Episode, ctx: ClosureContext, mode: str) -> bool:
    """Fixpoint test under edge closure ("e") or i-closure ("i")."""
    if mode == "e":
        return edge_closure(episode, ctx) == episode
    if mode == "i":
        return i_closure(episode, ctx) == episode
    raise ValueError(f"unknown closure mode {mode!r}")
