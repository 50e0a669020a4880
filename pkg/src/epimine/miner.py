"""Level-wise miner for frequency-closed episodes.

Ties the scanner, closure operators and candidate generation together into
the full pipeline: enumerate candidates level by level (by node count, then
by edge count), keep the frequent ones together with their instance
closures, recover episodes hidden by closure collisions, and finally reduce
the surviving closures to the frequency-closed output set.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Optional, Sequence

from .candgen import generate_edge_candidates, generate_node_candidates
from .closure import ClosureContext, edge_closure, i_closure
from .episode import (
    Episode,
    canonicalize,
    has_proper_edges,
    label_rank,
    node_at_rank,
    proper_skeleton_edges,
    transitive_closure,
)
from .scanner import EventSequence, Interval, _scan_raw, frequency


class ConfigError(ValueError):
    """Raised for mining parameters that make no sense."""


@dataclass(frozen=True)
class MiningConfig:
    """Parameters for a mining run.

    window      maximum window width (inclusive span of a covering window)
    min_freq    frequency threshold, applied to `measure`
    measure     "fixed" or "disjoint"
    max_nodes   exploration cap on candidate size; closures are not truncated,
                so output episodes may exceed it (None = unbounded)
    closure     "i" for full instance closure, "e" for edge closure only
    """

    window: int
    min_freq: int
    measure: str = "fixed"
    max_nodes: Optional[int] = None
    closure: str = "i"

    def __post_init__(self) -> None:
        if self.window < 1:
            raise ConfigError(f"window must be >= 1, got {self.window}")
        if self.min_freq < 1:
            raise ConfigError(f"min_freq must be >= 1, got {self.min_freq}")
        if self.measure not in ("fixed", "disjoint"):
            raise ConfigError(f"unknown measure: {self.measure!r}")
        if self.closure not in ("i", "e"):
            raise ConfigError(f"unknown closure mode: {self.closure!r}")
        if self.max_nodes is not None and self.max_nodes < 1:
            raise ConfigError(f"max_nodes must be >= 1, got {self.max_nodes}")


@dataclass(frozen=True)
class EpisodeRecord:
    """A stored frequent episode with its scan results and closure."""

    episode: Episode
    iclosure: Episode
    freq_fixed: int
    freq_disjoint: int
    minimal_windows: tuple[Interval, ...]

    def freq(self, measure: str) -> int:
        if measure == "fixed":
            return self.freq_fixed
        if measure == "disjoint":
            return self.freq_disjoint
        raise ValueError(f"unknown measure: {measure!r}")


class EpisodeStore:
    """Frequent episodes found so far, indexed by level and label multiset."""

    def __init__(self) -> None:
        self._records: dict[Episode, EpisodeRecord] = {}
        self._levels: dict[tuple[int, int], list[EpisodeRecord]] = {}
        self._max_nodes = 0
        self._max_edges: dict[int, int] = {}

    def __len__(self) -> int:
        return len(self._records)

    def __contains__(self, episode: Episode) -> bool:
        return episode in self._records

    def get(self, episode: Episode) -> Optional[EpisodeRecord]:
        return self._records.get(episode)

    def insert(self, record: EpisodeRecord) -> None:
        ep = record.episode
        if ep in self._records:
            raise ValueError(f"duplicate insert: {ep}")
        self._records[ep] = record
        n, m = ep.node_count, ep.edge_count
        self._levels.setdefault((n, m), []).append(record)
        if n > self._max_nodes:
            self._max_nodes = n
        if m > self._max_edges.get(n, -1):
            self._max_edges[n] = m

    def level(self, nodes: int, edges: int) -> list[EpisodeRecord]:
        return list(self._levels.get((nodes, edges), ()))

    def max_nodes_stored(self) -> int:
        return self._max_nodes

    def max_edges_at(self, nodes: int) -> int:
        """Largest edge count stored at this node count, or -1 if none."""
        return self._max_edges.get(nodes, -1)

    def records(self) -> Iterable[EpisodeRecord]:
        return self._records.values()


def test_candidate(episode: Episode, store: EpisodeStore) -> bool:
    """Check that every maximal proper subepisode survived earlier levels.

    For each proper skeleton edge e, G-e must be stored and e must not be
    implied by its closure (otherwise G is a subepisode of that closure and
    already covered).  Nodes not incident to any proper skeleton edge are
    removable instead: G-v must be stored, and when v has no edges at all
    its label must not appear in the closure of G-v.
    """
    proper = proper_skeleton_edges(episode)
    for e in proper:
        sub = episode.without_edge(e)
        rec = store.get(sub)
        if rec is None:
            return False
        icl = rec.iclosure
        u = node_at_rank(icl, *label_rank(episode, e[0]))
        v = node_at_rank(icl, *label_rank(episode, e[1]))
        if icl.has_edge(u, v):
            return False
    touched = {u for e in proper for u in e}
    for v in range(episode.node_count):
        if v in touched:
            continue
        sub = episode.without_node(v)
        if sub.node_count == 0:
            # the empty episode is trivially frequent with an empty closure
            continue
        rec = store.get(sub)
        if rec is None:
            return False
        if not episode.succ_mask(v) and not episode.pred_mask(v):
            if episode.labels[v] in rec.iclosure.labels:
                return False
    return True


def _with_solitary_nodes(episode: Episode, labels: Sequence[str]) -> Episode:
    ep = episode
    for lab in labels:
        ep = ep.with_node(lab)
    return ep


def add_intermediate(
    episode: Episode,
    iclosure: Episode,
    close: Callable[[Episode], Episode],
) -> list[Episode]:
    """Subepisodes of the closure that candidate generation would skip.

    When scanning G discovers extra structure (icl(G) gained nodes or
    edges), episodes between G and icl(G) share G's windows but have no
    other frequent generator, so the level-wise search would never visit
    them.  This emits enough of them to restore completeness:

    - G plus one closure-added node, and G plus each pair of them;
    - for an added node x and an edge e touching x that the closure does
      not imply, G+x plus the edges that e forces transitively closed,
      when all of them lie inside icl(G+x);
    - likewise for one new edge between existing nodes of G.
    """
    added = sorted(set(iclosure.labels).difference(episode.labels))
    out: dict[Episode, None] = {}

    def emit(ep: Episode) -> None:
        assert ep.is_tc, "intermediate episode must be transitively closed"
        out.setdefault(ep, None)

    for x in added:
        grown = episode.with_node(x)
        emit(grown)
        grown_icl: Optional[Episode] = None
        xi = grown.labels.index(x)
        for y in range(grown.node_count):
            if y == xi:
                continue
            for e in ((xi, y), (y, xi)):
                cu = node_at_rank(iclosure, *label_rank(grown, e[0]))
                cv = node_at_rank(iclosure, *label_rank(grown, e[1]))
                if iclosure.has_edge(cu, cv):
                    continue
                closed = transitive_closure(grown.with_edge(e))
                forced = set(closed.edges).difference(grown.edges + (e,))
                if not forced:
                    continue
                if grown_icl is None:
                    grown_icl = close(grown)
                ok = True
                for u, v in forced:
                    hu = node_at_rank(grown_icl, *label_rank(grown, u))
                    hv = node_at_rank(grown_icl, *label_rank(grown, v))
                    if not grown_icl.has_edge(hu, hv):
                        ok = False
                        break
                if ok:
                    emit(Episode(grown.labels, tuple(sorted(set(grown.edges).union(forced)))))

    for x, y in combinations(added, 2):
        emit(_with_solitary_nodes(episode, (x, y)))

    for xi in range(episode.node_count):
        for y in range(episode.node_count):
            if xi == y or episode.has_edge(xi, y) or episode.has_edge(y, xi):
                continue
            cu = node_at_rank(iclosure, *label_rank(episode, xi))
            cv = node_at_rank(iclosure, *label_rank(episode, y))
            if iclosure.has_edge(cu, cv):
                continue
            closed = transitive_closure(episode.with_edge((xi, y)))
            forced = set(closed.edges).difference(episode.edges + ((xi, y),))
            if not forced:
                continue
            ok = True
            for u, v in forced:
                hu = node_at_rank(iclosure, *label_rank(episode, u))
                hv = node_at_rank(iclosure, *label_rank(episode, v))
                if not iclosure.has_edge(hu, hv):
                    ok = False
                    break
            if ok:
                emit(Episode(episode.labels, tuple(sorted(set(episode.edges).union(forced)))))

    return list(out)


def _induced(episode: Episode, removed: frozenset[int]) -> Episode:
    keep = [i for i in range(episode.node_count) if i not in removed]
    pos = {old: new for new, old in enumerate(keep)}
    labels = [episode.labels[i] for i in keep]
    edges = [
        (pos[u], pos[v])
        for u, v in episode.edges
        if u in pos and v in pos
    ]
    return canonicalize(labels, edges)


def f_closure_filter(
    records: Sequence[EpisodeRecord], measure: str
) -> list[EpisodeRecord]:
    """Drop records absorbed by an equally frequent strict superepisode.

    Works entirely within the given pool: H is absorbed by G when they
    have the same frequency and H embeds strictly into G.  Because all
    records are canonical, an embedding between equal label multisets is
    forced to be the identity, so subepisode checks reduce to edge-set
    containment against induced subgraphs of the absorber.
    """
    freqs = [rec.freq(measure) for rec in records]
    by_multiset: dict[tuple[str, ...], list[int]] = {}
    for i, rec in enumerate(records):
        by_multiset.setdefault(rec.episode.labels, []).append(i)

    keep = [True] * len(records)
    for i, rec in enumerate(records):
        g = rec.episode
        g_edges = set(g.edges)
        for j in by_multiset[g.labels]:
            if j != i and freqs[j] == freqs[i] and set(records[j].episode.edges) < g_edges:
                keep[j] = False
        for size in range(1, g.node_count):
            for removed in combinations(range(g.node_count), size):
                kept = frozenset(range(g.node_count)).difference(removed)
                sub_labels = tuple(g.labels[v] for v in sorted(kept))
                cands = by_multiset.get(sub_labels)
                if not cands:
                    continue
                sub = _induced(g, frozenset(removed))
                sub_edges = set(sub.edges)
                for j in cands:
                    if freqs[j] == freqs[i] and set(records[j].episode.edges) <= sub_edges:
                        keep[j] = False
    return [rec for i, rec in enumerate(records) if keep[i]]


@dataclass(frozen=True)
class MiningResult:
    """Everything a mining run produced.

    iclosed     distinct instance closures of all frequent episodes
    fclosed     the frequency-closed subset of iclosed
    store       every frequent episode visited, with scan results
    """

    iclosed: list[EpisodeRecord]
    fclosed: list[EpisodeRecord]
    store: EpisodeStore


def _as_sequence(events) -> EventSequence:
    if isinstance(events, EventSequence):
        return events
    return EventSequence(events)


def mine_full(
    events,
    config: MiningConfig,
    add_intermediates: bool = True,
    workers: int = 1,
) -> MiningResult:
    """Run the full pipeline and return closures, output set and store.

    `events` is an EventSequence or any iterable of tokens.  `workers`
    bounds the thread pool used to scan a batch of candidates; results
    are deterministic regardless of its value.  `add_intermediates`
    exists for testing the recovery step and should stay True.
    """
    sequence = _as_sequence(events)
    ctx = ClosureContext(sequence, config.window)
    length = len(sequence.tokens)
    store = EpisodeStore()

    if config.closure == "e":
        def close(ep: Episode, windows=None) -> Episode:
            return edge_closure(ep, ctx, windows)
    else:
        def close(ep: Episode, windows=None) -> Episode:
            return i_closure(ep, ctx, windows)

    def build_record(ep: Episode) -> Optional[EpisodeRecord]:
        # most candidates are infrequent; compute the counts on the raw
        # window lists and materialize intervals only for survivors
        starts, ends, _ = _scan_raw(ep, sequence, config.window)
        freq_fixed = frequency(zip(starts, ends), config.window, length, "fixed")
        freq_disjoint = frequency(zip(starts, ends), config.window, length, "disjoint")
        freq = freq_fixed if config.measure == "fixed" else freq_disjoint
        if freq < config.min_freq:
            return None
        windows = tuple(Interval(a, b) for a, b in zip(starts, ends))
        return EpisodeRecord(
            ep, close(ep, windows), freq_fixed, freq_disjoint, windows
        )

    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        pool = ThreadPoolExecutor(max_workers=workers)
        batch_map = pool.map
    else:
        pool = None
        batch_map = map

    def process_batch(candidates: Sequence[Episode]) -> None:
        fresh = [c for c in candidates if c not in store]
        survivors = [c for c in fresh if test_candidate(c, store)]
        records = [r for r in batch_map(build_record, survivors) if r is not None]
        for rec in records:
            store.insert(rec)
        if not add_intermediates:
            return
        for rec in records:
            for mid in add_intermediate(rec.episode, rec.iclosure, close):
                if config.max_nodes is not None and mid.node_count > config.max_nodes:
                    continue
                if mid in store:
                    continue
                mid_rec = build_record(mid)
                assert mid_rec is not None, "closure subepisode lost frequency"
                store.insert(mid_rec)

    try:
        node_level = 1
        node_candidates: list[Episode] = [
            Episode((lab,), ()) for lab in sequence.alphabet
        ]
        while True:
            if config.max_nodes is not None and node_level > config.max_nodes:
                break
            if not node_candidates and store.max_nodes_stored() < node_level:
                break
            process_batch(node_candidates)
            edge_level = 0
            while True:
                level_records = store.level(node_level, edge_level)
                if not level_records:
                    if store.max_edges_at(node_level) > edge_level:
                        edge_level += 1
                        continue
                    break
                pairs = [(r.episode, r.iclosure) for r in level_records]
                process_batch(generate_edge_candidates(pairs))
                edge_level += 1
            parallel = [
                r.episode
                for m in range(store.max_edges_at(node_level) + 1)
                for r in store.level(node_level, m)
                if not has_proper_edges(r.episode)
            ]
            parallel.sort(key=Episode.sort_key)
            node_candidates = generate_node_candidates(parallel)
            node_level += 1
    finally:
        if pool is not None:
            pool.shutdown()

    by_closure: dict[Episode, EpisodeRecord] = {}
    for rec in store.records():
        icl = rec.iclosure
        prev = by_closure.get(icl)
        if prev is None:
            by_closure[icl] = EpisodeRecord(
                icl, icl, rec.freq_fixed, rec.freq_disjoint, rec.minimal_windows
            )
        else:
            assert (prev.freq_fixed, prev.freq_disjoint) == (
                rec.freq_fixed,
                rec.freq_disjoint,
            ), "episodes sharing a closure must share frequencies"
    iclosed = sorted(by_closure.values(), key=lambda r: r.episode.sort_key())
    fclosed = f_closure_filter(iclosed, config.measure)
    return MiningResult(iclosed, fclosed, store)


def mine(
    events,
    config: MiningConfig,
    workers: int = 1,
) -> list[EpisodeRecord]:
    """Mine the frequency-closed episodes of a sequence."""
    return mine_full(events, config, workers=workers).fclosed
