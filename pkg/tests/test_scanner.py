"""Minimal-window scanning, frequency measures, and greedy coverage."""

import random

import pytest

from epimine.episode import EMPTY, canonicalize
from epimine.oracle import naive_scan
from epimine.scanner import (
    EventSequence,
    Interval,
    covers,
    find_minimal_windows,
    frequency,
    greedy_map,
    has_window,
    scan_stats,
)

from helpers import (
    DIAMOND,
    PARALLEL_ABCD,
    S1,
    S2,
    ep,
    random_episode,
    random_sequence,
)


class TestEventSequence:
    def test_basics(self, s1):
        assert len(s1) == 10
        assert s1.tokens[0] == "a"
        assert s1.alphabet == ("a", "b", "c", "d")
        assert list(s1.occurrences("b")) == [2, 4, 8]
        assert s1.count("b") == 3
        assert s1.count("z") == 0

    def test_next_occurrence(self, s1):
        # positions are 1-based; lookup is strictly after the argument
        assert s1.next_occurrence("b", 0) == 2
        assert s1.next_occurrence("b", 2) == 4
        assert s1.next_occurrence("b", 8) is None
        assert s1.next_occurrence("z", 0) is None


class TestFindMinimalWindows:
    def test_diamond_two_windows(self, s1):
        assert find_minimal_windows(DIAMOND, s1, 5) == [(1, 5), (6, 10)]

    def test_parallel_pair(self, s1):
        assert find_minimal_windows(ep("bd"), s1, 5) == [(4, 5), (5, 8), (8, 10)]

    def test_serial_through_middle(self, s2):
        serial = ep("axb", [(0, 1), (1, 2)])
        assert find_minimal_windows(serial, s2, 3) == [(1, 3), (5, 7)]

    def test_parallel_four(self, s1):
        assert find_minimal_windows(PARALLEL_ABCD, s1, 5) == [
            (1, 5), (3, 6), (4, 7), (5, 8), (6, 10),
        ]

    def test_absent_label(self, s1):
        assert find_minimal_windows(ep("z"), s1, 5) == []

    def test_window_too_small(self, s1):
        assert find_minimal_windows(DIAMOND, s1, 3) == []

    def test_single_label(self, s1):
        assert find_minimal_windows(ep("a"), s1, 1) == [(1, 1), (6, 6)]

    def test_rejects_empty_episode(self, s1):
        with pytest.raises(ValueError):
            find_minimal_windows(EMPTY, s1, 5)

    def test_rejects_open_episode(self, s1):
        open_chain = canonicalize("abc", [(0, 1), (1, 2)])
        with pytest.raises(ValueError):
            find_minimal_windows(open_chain, s1, 5)

    def test_rejects_bad_window(self, s1):
        with pytest.raises(ValueError):
            find_minimal_windows(DIAMOND, s1, 0)


class TestWindowShape:
    """Structural invariants of every minimal-window list."""

    def test_sorted_and_non_nested(self):
        rng = random.Random(21)
        for _ in range(300):
            seq = EventSequence(random_sequence(rng))
            g = random_episode(rng)
            rho = rng.randrange(1, 9)
            wins = find_minimal_windows(g, seq, rho)
            for w in wins:
                assert 1 <= w.a <= w.b <= len(seq)
                assert w.width <= rho
            # both endpoints strictly increase, so no window contains another
            assert all(p.a < q.a and p.b < q.b for p, q in zip(wins, wins[1:]))
            assert has_window(g, seq, rho) == bool(wins)

    def test_interval_fields(self):
        w = Interval(3, 7)
        assert (w.a, w.b, w.width) == (3, 7, 5)
        assert w == (3, 7)


class TestAgainstOracle:
    def test_fixture_windows_match(self, s1, s2):
        for g, seq, toks, rho in [
            (DIAMOND, s1, S1, 5),
            (PARALLEL_ABCD, s1, S1, 5),
            (ep("bd"), s1, S1, 5),
            (ep("axb", [(0, 1), (1, 2)]), s2, S2, 3),
        ]:
            wins, fixed, disjoint = naive_scan(g, toks, rho)
            assert find_minimal_windows(g, seq, rho) == wins
            assert frequency(wins, rho, len(seq), "fixed") == fixed
            assert frequency(wins, rho, len(seq), "disjoint") == disjoint

    def test_random_differential(self):
        """Scanner versus the oracle on ten thousand random instances."""
        rng = random.Random(1234)
        for _ in range(10_000):
            toks = random_sequence(rng)
            seq = EventSequence(toks)
            g = random_episode(rng, max_nodes=3)
            rho = rng.randrange(1, 9)
            wins, fixed, disjoint = naive_scan(g, toks, rho)
            got = find_minimal_windows(g, seq, rho)
            assert [tuple(w) for w in got] == wins, (toks, g, rho)
            assert frequency(got, rho, len(seq), "fixed") == fixed
            assert frequency(got, rho, len(seq), "disjoint") == disjoint


class TestFrequency:
    def test_diamond_both_measures(self, s1):
        wins = find_minimal_windows(DIAMOND, s1, 5)
        assert frequency(wins, 5, 10, "fixed") == 2
        assert frequency(wins, 5, 10, "disjoint") == 2

    def test_empty_windows(self):
        assert frequency([], 5, 10, "fixed") == 0
        assert frequency([], 5, 10, "disjoint") == 0

    def test_overlapping_starts_merge(self):
        # starts of (4,5): [1,4]; (5,8): [4,5]; (8,10): [6,8] -> 8 values
        wins = [(4, 5), (5, 8), (8, 10)]
        assert frequency(wins, 5, 10, "fixed") == 8
        assert frequency(wins, 5, 10, "disjoint") == 2

    def test_overhang_clamps_to_sequence(self):
        # a window starting at position 1 counts starts below 1 as well
        assert frequency([(1, 1)], 3, 5, "fixed") == 3

    def test_unknown_measure(self):
        with pytest.raises(ValueError):
            frequency([(1, 1)], 3, 5, "support")

    def test_antitone_under_subepisode(self):
        """A superepisode is never more frequent than its parts."""
        from epimine.episode import proper_skeleton_edges

        rng = random.Random(22)
        for _ in range(200):
            seq = EventSequence(random_sequence(rng))
            h = random_episode(rng)
            rho = rng.randrange(1, 9)
            proper = proper_skeleton_edges(h)
            g = h.without_edge(proper[rng.randrange(len(proper))]) if proper else h
            fg, fh = (
                frequency(find_minimal_windows(x, seq, rho), rho, len(seq), "fixed")
                for x in (g, h)
            )
            assert fg >= fh


class TestGreedyMap:
    def test_diamond_first_instance(self, s1):
        assert greedy_map(DIAMOND, s1, 1) == {0: 1, 1: 2, 2: 3, 3: 5}

    def test_diamond_second_instance(self, s1):
        assert greedy_map(DIAMOND, s1, 6) == {0: 6, 1: 8, 2: 7, 3: 10}

    def test_single_node(self, s1):
        assert greedy_map(ep("a"), s1, 6) == {0: 6}
        assert greedy_map(ep("a"), s1, 7) is None
        assert greedy_map(ep("a"), s1, 11) is None

    def test_respects_edges(self, s2):
        # b->a needs the a at 5, not the one at 1
        g = ep("ab", [(1, 0)])
        assert greedy_map(g, s2, 1) == {1: 3, 0: 5}

    def test_covers(self, s1, s2):
        assert covers(DIAMOND, s1)
        assert covers(ep("ad", [(1, 0)]), s1)
        assert covers(ep("abb", [(1, 0), (0, 2), (1, 2)]), s2)
        assert not covers(ep("z"), s1)

    def test_covers_matches_oracle(self):
        rng = random.Random(23)
        for _ in range(500):
            toks = random_sequence(rng)
            g = random_episode(rng, max_nodes=3)
            wins, _, _ = naive_scan(g, toks, len(toks))
            assert covers(g, EventSequence(toks)) == bool(wins)


class TestScanStats:
    def test_counts_visits(self, s1):
        stats = scan_stats(DIAMOND, s1, 5)
        assert stats.windows == [(1, 5), (6, 10)]
        assert stats.visits > 0

    def test_visits_scale_linearly(self):
        """Worklist visits stay proportional to sequence length."""
        rng = random.Random(24)
        serial = ep("abc", [(0, 1), (1, 2)])
        for n in (2000, 4000):
            toks = [rng.choice("abc") for _ in range(n)]
            stats = scan_stats(serial, EventSequence(toks), 6)
            assert stats.visits <= 1.5 * n


def _kernels():
    from epimine import _scan_py

    try:
        from epimine import _scan_cy
    except ImportError:
        return None
    return _scan_py, _scan_cy


@pytest.mark.skipif(_kernels() is None, reason="compiled kernel not built")
class TestKernelEquivalence:
    """The compiled kernel and the pure fallback are interchangeable."""

    def test_differential(self):
        from epimine.scanner import _kernel_tables

        py, cy = _kernels()
        rng = random.Random(25)
        for _ in range(300):
            toks = random_sequence(rng)
            seq = EventSequence(toks)
            g = random_episode(rng)
            rho = rng.randrange(1, 9)
            tables = _kernel_tables(g, seq)
            n = g.node_count
            full_py = py.scan(n, *tables, rho, False)
            full_cy = cy.scan(n, *tables, rho, False)
            assert tuple(map(list, full_py[:2])) == tuple(map(list, full_cy[:2]))
            assert full_py[2] == full_cy[2], (toks, g, rho)
            first_py = py.scan(n, *tables, rho, True)
            first_cy = cy.scan(n, *tables, rho, True)
            assert tuple(map(list, first_py[:2])) == tuple(map(list, first_cy[:2]))
            assert first_py[2] == first_cy[2]
            # early exit emits at most one window and agrees on existence
            assert len(first_py[0]) <= 1
            assert bool(list(first_py[0])) == bool(list(full_py[0]))
