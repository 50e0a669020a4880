"""Brute-force reference implementations.

Everything in this module computes straight from the definitions:
coverage by exhaustive backtracking, minimal windows by checking every
subwindow, frequencies by enumerating window positions, closedness by
comparing against an exhaustively enumerated episode universe. It
exists to pin down expected values for the fast implementations, so it
shares only the Episode type with them and is free to be exponentially
slow. Budget caps raise BudgetError instead of silently truncating.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, product
from math import comb, prod
from typing import Iterable, Optional, Sequence

from .episode import Episode, CycleError, is_subepisode, transitive_closure

MAX_ORACLE_NODES = 5
MAX_ORACLE_LENGTH = 30
_ENUM_BUDGET = 2_000_000
_INSTANCE_BUDGET = 2_000_000


class BudgetError(RuntimeError):
    """Input exceeds the configured brute-force budget."""


def _occurrences(events: Sequence[str]) -> dict[str, list[int]]:
    """1-based positions per label."""
    occ: dict[str, list[int]] = {}
    for i, tok in enumerate(events, start=1):
        occ.setdefault(tok, []).append(i)
    return occ


# -- episode universe ---------------------------------------------------


@dataclass(frozen=True)
class EpisodeUniverse:
    """Every canonical strict tc episode over an alphabet, up to a node
    budget. Closed under subepisode within the budget by construction."""

    alphabet: tuple[str, ...]
    max_nodes: int
    episodes: tuple[Episode, ...]


def _episodes_over(labels: tuple[str, ...]) -> list[Episode]:
    """All canonical strict tc episodes on one sorted label multiset.

    Equal-label nodes are chained by strictness, so their edges are
    forced; each distinct-label node pair independently gets no edge or
    one of the two directions, and non-DAG or non-tc combinations are
    dropped.
    """
    n = len(labels)
    forced = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if labels[i] == labels[j]
    ]
    pairs = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if labels[i] != labels[j]
    ]
    out = []
    for choice in product((None, 0, 1), repeat=len(pairs)):
        edges = list(forced)
        for (i, j), state in zip(pairs, choice):
            if state == 0:
                edges.append((i, j))
            elif state == 1:
                edges.append((j, i))
        try:
            ep = Episode(labels, edges)
        except CycleError:
            continue
        if ep.is_tc:
            out.append(ep)
    return out


_universe_cache: dict[tuple[tuple[str, ...], int], EpisodeUniverse] = {}


def enumerate_episodes(alphabet: Iterable[str], max_nodes: int) -> EpisodeUniverse:
    """Exhaustive universe of nonempty episodes with at most max_nodes
    nodes. Raises BudgetError when the enumeration would be too large."""
    alphabet = tuple(sorted(set(map(str, alphabet))))
    key = (alphabet, max_nodes)
    cached = _universe_cache.get(key)
    if cached is not None:
        return cached
    if max_nodes > MAX_ORACLE_NODES:
        raise BudgetError(f"max_nodes {max_nodes} exceeds {MAX_ORACLE_NODES}")
    multisets = [
        ms
        for size in range(1, max_nodes + 1)
        for ms in combinations_with_replacement(alphabet, size)
    ]
    work = sum(3 ** (len(ms) * (len(ms) - 1) // 2) for ms in multisets)
    if work > _ENUM_BUDGET:
        raise BudgetError(f"universe needs {work} edge combinations")
    episodes = []
    for ms in multisets:
        episodes.extend(_episodes_over(ms))
    uni = EpisodeUniverse(alphabet, max_nodes, tuple(episodes))
    _universe_cache[key] = uni
    return uni


# -- serial subepisode counting (desk-check table) ----------------------


def count_linear_tc_edge_sets(k: int) -> int:
    """Number of transitively closed edge subsets of the linear order
    on k nodes (all edges point from lower to higher index)."""
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    count = 0
    for mask in range(1 << len(pairs)):
        succ = [0] * k
        m = mask
        while m:
            low = m & -m
            i, j = pairs[low.bit_length() - 1]
            succ[i] |= 1 << j
            m ^= low
        reach = [0] * k
        closed = True
        for u in range(k - 1, -1, -1):
            r = succ[u]
            m = succ[u]
            while m:
                low = m & -m
                r |= reach[low.bit_length() - 1]
                m ^= low
            reach[u] = r
            if r != succ[u]:
                closed = False
                break
        if closed:
            count += 1
    return count


def count_serial_subepisodes(n: int) -> int:
    """Number of nonempty strict tc episodes that embed into the serial
    episode on n distinct labels: over every nonempty label subset, the
    tc edge subsets of the induced linear order."""
    if n > 6:
        raise BudgetError(f"n={n} exceeds the desk-check scale")
    return sum(
        comb(n, k) * count_linear_tc_edge_sets(k) for k in range(1, n + 1)
    )


# -- definitional coverage and scanning ---------------------------------


def _window_covers(episode: Episode, occ: dict[str, list[int]],
                   a: int, b: int) -> bool:
    """Backtracking search for an instance of the episode inside
    positions [a, b]. Equal-label nodes are chained in a tc episode, so
    the edge constraints already force distinct positions."""
    if a > b:
        return False
    if not episode.is_tc:
        episode = transitive_closure(episode)
    n = episode.node_count
    domains = []
    for v in range(n):
        positions = [p for p in occ.get(episode.labels[v], ()) if a <= p <= b]
        if not positions:
            return False
        domains.append(positions)
    assigned = [0] * n

    def extend(v: int) -> bool:
        if v == n:
            return True
        for p in domains[v]:
            ok = True
            for u in range(v):
                if episode.has_edge(u, v) and not assigned[u] < p:
                    ok = False
                    break
                if episode.has_edge(v, u) and not p < assigned[u]:
                    ok = False
                    break
            if ok:
                assigned[v] = p
                if extend(v + 1):
                    return True
        return False

    return extend(0)


def _disjoint_count(windows: list[tuple[int, int]]) -> int:
    """Maximum number of pairwise disjoint intervals, by DP."""
    ws = sorted(windows, key=lambda w: w[1])
    best = [0] * len(ws)
    for i, (c, d) in enumerate(ws):
        prior = 0
        for j in range(i):
            if ws[j][1] < c:
                prior = max(prior, best[j])
        best[i] = prior + 1
    return max(best, default=0)


def naive_scan(episode: Episode, events: Sequence[str],
               window: int) -> tuple[list[tuple[int, int]], int, int]:
    """Minimal windows (width at most ``window``) plus both frequency
    measures, straight from the definitions.

    Fixed-window frequency counts start positions a in [2-window, L]
    whose clipped window covers the episode; windows overhang both
    sequence ends. Disjoint-window frequency is the maximum number of
    non-overlapping covering windows, computed over minimal windows.
    """
    L = len(events)
    if L > MAX_ORACLE_LENGTH:
        raise BudgetError(f"sequence length {L} exceeds {MAX_ORACLE_LENGTH}")
    if episode.node_count > MAX_ORACLE_NODES:
        raise BudgetError(f"{episode.node_count} nodes exceed {MAX_ORACLE_NODES}")
    occ = _occurrences(events)
    covers: dict[tuple[int, int], bool] = {}

    def cov(a: int, b: int) -> bool:
        if a > b:
            return False
        got = covers.get((a, b))
        if got is None:
            got = covers[(a, b)] = _window_covers(episode, occ, a, b)
        return got

    minimal = [
        (a, b)
        for a in range(1, L + 1)
        for b in range(a, min(a + window, L + 1))
        if cov(a, b) and not cov(a + 1, b) and not cov(a, b - 1)
    ]
    fixed = sum(
        1
        for a in range(2 - window, L + 1)
        if cov(max(a, 1), min(a + window - 1, L))
    )
    return minimal, fixed, _disjoint_count(minimal)


# -- f-closed enumeration ------------------------------------------------
# Checking every universe episode with naive_scan is too slow even at
# desk scale, so the oracle batches by label multiset: enumerate every
# instance of the multiset once, record its interval and its pairwise
# order as a bitmask, then read each episode's minimal windows off the
# instance table. This is still the definition (an instance either
# satisfies an episode's edges or not); only the bookkeeping is shared.


def _instance_table(multiset: tuple[str, ...], occ: dict[str, list[int]],
                    window: int) -> tuple[list[tuple[int, int]], list[int]]:
    """All instances of the label multiset with span at most ``window``,
    as parallel lists of intervals and cross-label order masks.

    Wider instances never yield reportable minimal windows, so they are
    skipped. Pair p of the mask is 1 when the lower-indexed node maps
    earlier; equal-label nodes take ascending positions by strictness.
    """
    n = len(multiset)
    groups: dict[str, list[int]] = {}
    for i, lab in enumerate(multiset):
        groups.setdefault(lab, []).append(i)
    pairs = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if multiset[i] != multiset[j]
    ]
    total = prod(
        comb(len(occ.get(lab, ())), len(nodes)) for lab, nodes in groups.items()
    )
    if total > _INSTANCE_BUDGET:
        raise BudgetError(f"{total} instances for multiset {multiset}")
    per_label = []
    for lab, nodes in groups.items():
        positions = occ.get(lab, ())
        per_label.append([
            (nodes, pick) for pick in combinations(positions, len(nodes))
        ])
    intervals: list[tuple[int, int]] = []
    masks: list[int] = []
    pos = [0] * n
    for combo in product(*per_label):
        for nodes, pick in combo:
            for v, p in zip(nodes, pick):
                pos[v] = p
        lo, hi = min(pos), max(pos)
        if hi - lo >= window:
            continue
        mask = 0
        for bit, (i, j) in enumerate(pairs):
            if pos[i] < pos[j]:
                mask |= 1 << bit
        intervals.append((lo, hi))
        masks.append(mask)
    return intervals, masks


def _minimal_intervals(intervals: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    """Inclusion-minimal intervals, sorted by end."""
    out = []
    max_start = 0
    for c, d in sorted(set(intervals), key=lambda w: (w[1], -w[0])):
        if c > max_start:
            out.append((c, d))
            max_start = c
    return out


def _edge_masks(episode: Episode, pairs: list[tuple[int, int]]) -> tuple[int, int]:
    """Mask bits an instance must have set / clear to realize every
    cross-label edge of the episode."""
    index = {p: bit for bit, p in enumerate(pairs)}
    ones = zeros = 0
    for u, v in episode.edges:
        if episode.labels[u] == episode.labels[v]:
            continue
        if u < v:
            ones |= 1 << index[(u, v)]
        else:
            zeros |= 1 << index[(v, u)]
    return ones, zeros


def _fixed_count(minimal: list[tuple[int, int]], window: int, L: int) -> int:
    return sum(
        1
        for a in range(2 - window, L + 1)
        if any(d - window + 1 <= a <= c for c, d in minimal)
    )


def naive_fclosed(events: Sequence[str], config,
                  universe: EpisodeUniverse) -> set[tuple[Episode, int]]:
    """All f-closed frequent episodes from the universe with their
    frequencies: frequent episodes minus those with an equal-frequency
    proper superepisode in the universe.

    ``config`` needs window, min_freq, and measure ("fixed" or
    "disjoint") attributes. The superepisode search is bounded by the
    universe's node budget; the comparison against the miner is fair
    because both use the same cap.
    """
    occ = _occurrences(events)
    L = len(events)
    frequent: list[tuple[Episode, int]] = []
    by_multiset: dict[tuple[str, ...], list[Episode]] = {}
    for ep in universe.episodes:
        by_multiset.setdefault(ep.labels, []).append(ep)
    for multiset, eps in by_multiset.items():
        n = len(multiset)
        pairs = [
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if multiset[i] != multiset[j]
        ]
        intervals, masks = _instance_table(multiset, occ, config.window)
        for ep in eps:
            ones, zeros = _edge_masks(ep, pairs)
            minimal = _minimal_intervals(
                iv
                for iv, m in zip(intervals, masks)
                if m & ones == ones and not m & zeros
            )
            if config.measure == "fixed":
                freq = _fixed_count(minimal, config.window, L)
            else:
                freq = _disjoint_count(minimal)
            if freq >= config.min_freq:
                frequent.append((ep, freq))
    out = set()
    for ep, freq in frequent:
        absorbed = any(
            freq == other_freq and ep != other and is_subepisode(ep, other)
            for other, other_freq in frequent
        )
        if not absorbed:
            out.add((ep, freq))
    return out
