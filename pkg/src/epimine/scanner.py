"""Sequence scanning: coverage, minimal windows, frequency measures.

Positions are 1-based. A window is an interval [a, b] of positions;
minimal windows of an episode are the covering windows none of whose
proper subwindows cover it. Both frequency measures are computed from
the minimal windows of width at most the window size.

The inner worklist search lives in a kernel module: the compiled
_scan_cy when the extension was built, else the pure Python _scan_py.
``KERNEL`` names the selected one.
"""

from __future__ import annotations

from bisect import bisect_right
from collections import deque
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np

from .episode import Episode, skeleton_edges

try:
    from . import _scan_cy as _kernel
    KERNEL = "compiled"
except ImportError:
    from . import _scan_py as _kernel
    KERNEL = "python"


class Interval(NamedTuple):
    a: int
    b: int

    @property
    def width(self) -> int:
        return self.b - self.a + 1


class EventSequence:
    """Immutable 1-indexed symbol sequence with per-label occurrence
    index. Shareable across concurrent scans; scan state lives in the
    kernel call."""

    __slots__ = ("tokens", "_occ", "_occ_lists")

    def __init__(self, tokens: Iterable[str]):
        toks = tuple(str(t) for t in tokens)
        positions: dict[str, list[int]] = {}
        for i, tok in enumerate(toks, start=1):
            positions.setdefault(tok, []).append(i)
        self.tokens = toks
        self._occ = {
            lab: np.asarray(pos, dtype=np.int64) for lab, pos in positions.items()
        }
        self._occ_lists = {lab: pos for lab, pos in positions.items()}

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def alphabet(self) -> tuple[str, ...]:
        return tuple(sorted(self._occ))

    def occurrences(self, label: str) -> np.ndarray:
        """Sorted 1-based positions of a label (empty when unseen)."""
        got = self._occ.get(label)
        if got is None:
            got = np.empty(0, dtype=np.int64)
        return got

    def count(self, label: str) -> int:
        return len(self._occ_lists.get(label, ()))

    def next_occurrence(self, label: str, after: int) -> Optional[int]:
        """Smallest position > after carrying the label, or None."""
        pos = self._occ_lists.get(label)
        if not pos:
            return None
        i = bisect_right(pos, after)
        return pos[i] if i < len(pos) else None


_EMPTY_I64 = np.empty(0, dtype=np.int64)


def _kernel_tables(episode: Episode, sequence: EventSequence):
    n = episode.node_count
    per_node = [sequence.occurrences(lab) for lab in episode.labels]
    occ_off = np.zeros(n + 1, dtype=np.int64)
    np.cumsum([len(p) for p in per_node], out=occ_off[1:])
    occ_data = np.concatenate(per_node) if per_node else _EMPTY_I64
    targets: list[list[int]] = [[] for _ in range(n)]
    for u, v in skeleton_edges(episode):
        targets[u].append(v)
    adj_off = np.zeros(n + 1, dtype=np.int32)
    np.cumsum([len(t) for t in targets], out=adj_off[1:])
    flat = [w for t in targets for w in t]
    adj_data = np.asarray(flat, dtype=np.int32) if flat else np.empty(0, dtype=np.int32)
    return occ_data, occ_off, adj_data, adj_off


class ScanStats(NamedTuple):
    windows: list[Interval]
    visits: int


def _scan_raw(episode: Episode, sequence: EventSequence, window: int, first: bool = False):
    if episode.node_count == 0:
        raise ValueError("cannot scan the empty episode")
    if not episode.is_tc:
        raise ValueError("scanning requires a transitively closed episode")
    if window < 1:
        raise ValueError(f"window must be positive, got {window}")
    occ_data, occ_off, adj_data, adj_off = _kernel_tables(episode, sequence)
    return _kernel.scan(
        episode.node_count, occ_data, occ_off, adj_data, adj_off, window, first
    )


def scan_stats(episode: Episode, sequence: EventSequence, window: int) -> ScanStats:
    """Minimal windows of width at most ``window`` plus the number of
    occurrence-cursor advances the search spent."""
    starts, ends, visits = _scan_raw(episode, sequence, window)
    return ScanStats(
        [Interval(int(a), int(b)) for a, b in zip(starts, ends)], int(visits)
    )


def has_window(episode: Episode, sequence: EventSequence, window: int) -> bool:
    """Whether any minimal window of width at most ``window`` exists.

    Same search as find_minimal_windows but stops at the first report,
    which makes emptiness probes on long sequences cheap.
    """
    starts, _, _ = _scan_raw(episode, sequence, window, first=True)
    return bool(starts)


def find_minimal_windows(
    episode: Episode, sequence: EventSequence, window: int
) -> list[Interval]:
    """All minimal windows of width at most ``window``, in strictly
    increasing order of both endpoints."""
    return scan_stats(episode, sequence, window).windows


def greedy_map(
    episode: Episode, sequence: EventSequence, start: int
) -> Optional[dict[int, int]]:
    """Greedy cover of the suffix beginning at ``start``: repeatedly
    bind the node all of whose predecessors are bound, at its label's
    earliest position after them. Returns node -> position, or None
    when the suffix does not cover the episode."""
    if not episode.is_tc:
        raise ValueError("greedy mapping requires a transitively closed episode")
    n = episode.node_count
    bound = [start - 1] * n
    pos: list[Optional[int]] = [None] * n
    targets: list[list[int]] = [[] for _ in range(n)]
    for u, v in skeleton_edges(episode):
        targets[u].append(v)
    in_q = [True] * n
    q = deque(range(n))
    while q:
        v = q.popleft()
        in_q[v] = False
        p = sequence.next_occurrence(episode.labels[v], bound[v])
        if p is None:
            return None
        pos[v] = p
        for w in targets[v]:
            if p > bound[w]:
                bound[w] = p
                if pos[w] is not None and p >= pos[w] and not in_q[w]:
                    q.append(w)
                    in_q[w] = True
    return dict(enumerate(pos))


def covers(episode: Episode, sequence: EventSequence) -> bool:
    """True when the whole sequence covers the episode."""
    return greedy_map(episode, sequence, 1) is not None


def frequency(
    windows: Iterable[tuple[int, int]], window: int, length: int, measure: str
) -> int:
    """Frequency from the minimal windows of width at most ``window``.

    fixed: the number of sliding windows of that size containing a
    minimal window; sliding windows may overhang both sequence ends.
    disjoint: the maximal number of non-overlapping minimal windows,
    by greedy earliest-end selection.
    """
    if measure == "fixed":
        # window start a sees minimal window [c, d] iff d-window+1 <= a <= c;
        # those start intervals are sorted and already inside [2-window, length]
        total = 0
        prev_hi = -(1 << 60)
        for c, d in windows:
            lo = max(d - window + 1, prev_hi + 1)
            if c >= lo:
                total += c - lo + 1
                prev_hi = c
        return total
    if measure == "disjoint":
        count = 0
        last_end = 0
        for c, d in windows:
            if c > last_end:
                count += 1
                last_end = d
        return count
    raise ValueError(f"unknown measure {measure!r}")
