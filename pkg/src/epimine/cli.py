"""Command line front end: tokenize a corpus, mine it, emit episodes.

Usage:
    epimine --window 5 --min-freq 2 corpus.txt
    epimine --window 15 --min-freq 200 --measure disjoint \
        --emit i-closed --format jsonl --report stats.csv corpus.txt
"""

from __future__ import annotations

import argparse
import json
import os
import string
import sys
import time
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .episode import format_episode
from .miner import ConfigError, EpisodeRecord, MiningConfig, MiningResult, mine_full
from .scanner import EventSequence


class EmptySequenceError(ValueError):
    """Raised when tokenization leaves nothing to mine."""


@dataclass(frozen=True)
class CorpusOptions:
    """Tokenization knobs applied in order: case, punctuation, stop words."""

    lowercase: bool = False
    strip_punctuation: bool = False
    stopword_file: Optional[str] = None


_PUNCT_TABLE = str.maketrans("", "", string.punctuation)


def load_sequence(path, options: CorpusOptions = CorpusOptions()) -> EventSequence:
    """Read a whitespace-separated token file into an event sequence.

    Positions are renumbered densely after filtering, so window widths
    always count surviving events.
    """
    tokens = Path(path).read_text(encoding="utf-8").split()
    if options.lowercase:
        tokens = [t.lower() for t in tokens]
    if options.strip_punctuation:
        tokens = [t.translate(_PUNCT_TABLE) for t in tokens]
        tokens = [t for t in tokens if t]
    if options.stopword_file is not None:
        stop = set(Path(options.stopword_file).read_text(encoding="utf-8").split())
        tokens = [t for t in tokens if t not in stop]
    if not tokens:
        raise EmptySequenceError(f"no events left after filtering: {path}")
    return EventSequence(tokens)


def render_episodes(
    records: Sequence[EpisodeRecord], fmt: str, measure: str, closed_kind: str
) -> str:
    """Serialize records, one per line, in their (already sorted) order."""
    lines = []
    if fmt == "text":
        for rec in records:
            lines.append(f"freq={rec.freq(measure)} {format_episode(rec.episode)}")
    elif fmt == "jsonl":
        for rec in records:
            lines.append(
                json.dumps(
                    {
                        "nodes": list(rec.episode.labels),
                        "edges": [list(e) for e in rec.episode.edges],
                        "freq_fixed": rec.freq_fixed,
                        "freq_disjoint": rec.freq_disjoint,
                        "closed_kind": closed_kind,
                    }
                )
            )
    else:
        raise ValueError(f"unknown format: {fmt!r}")
    return "".join(line + "\n" for line in lines)


def render_report(
    result: MiningResult, config: MiningConfig, emit: str, runtime_ms: int
) -> str:
    """Per-size output counts as CSV, with the run configuration echoed."""
    iclosed = Counter(r.episode.node_count for r in result.iclosed)
    fclosed = Counter(r.episode.node_count for r in result.fclosed)
    cap = config.max_nodes if config.max_nodes is not None else "none"
    lines = [
        f"# window={config.window} min_freq={config.min_freq}"
        f" measure={config.measure} closure={config.closure}"
        f" max_nodes={cap} emit={emit}",
        "size,f_closed,i_closed,runtime_ms",
    ]
    for size in sorted(iclosed):
        lines.append(f"{size},{fclosed.get(size, 0)},{iclosed[size]},")
    lines.append(f"total,{len(result.fclosed)},{len(result.iclosed)},{runtime_ms}")
    return "".join(line + "\n" for line in lines)


def worker_count() -> int:
    """Thread count from EPISODE_THREADS; 0 or unset means one per CPU."""
    raw = os.environ.get("EPISODE_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"EPISODE_THREADS must be an integer, got {raw!r}")
    if n < 0:
        raise ConfigError(f"EPISODE_THREADS must be >= 0, got {n}")
    if n == 0:
        return os.cpu_count() or 1
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="epimine",
        description="Mine frequency-closed DAG episodes from an event sequence.",
    )
    parser.add_argument("input", help="whitespace-separated token file")
    parser.add_argument("--window", type=int, required=True, metavar="N",
                        help="maximum window width")
    parser.add_argument("--min-freq", type=int, required=True, metavar="N",
                        help="frequency threshold")
    parser.add_argument("--measure", choices=("fixed", "disjoint"),
                        default="fixed", help="frequency measure")
    parser.add_argument("--closure", choices=("i", "e"), default="i",
                        help="closure operator: instance or edge-only")
    parser.add_argument("--max-nodes", type=int, default=None, metavar="N",
                        help="cap on explored episode size")
    parser.add_argument("--emit", choices=("f-closed", "i-closed"),
                        default="f-closed", help="which episode set to write")
    parser.add_argument("--format", choices=("text", "jsonl"), default="text",
                        help="output serialization")
    parser.add_argument("--out", default=None, metavar="PATH",
                        help="write episodes here instead of stdout")
    parser.add_argument("--report", default=None, metavar="PATH",
                        help="write a per-size CSV summary here")
    parser.add_argument("--lowercase", action="store_true",
                        help="lowercase tokens before mining")
    parser.add_argument("--strip-punctuation", action="store_true",
                        help="strip punctuation characters from tokens")
    parser.add_argument("--stopwords", default=None, metavar="PATH",
                        help="file of stop words to drop, one per line")
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = MiningConfig(
            window=args.window,
            min_freq=args.min_freq,
            measure=args.measure,
            max_nodes=args.max_nodes,
            closure=args.closure,
        )
        workers = worker_count()
    except ConfigError as exc:
        print(f"epimine: {exc}", file=sys.stderr)
        return 2

    options = CorpusOptions(
        lowercase=args.lowercase,
        strip_punctuation=args.strip_punctuation,
        stopword_file=args.stopwords,
    )
    try:
        sequence = load_sequence(args.input, options)
        started = time.perf_counter()
        result = mine_full(sequence, config, workers=workers)
        runtime_ms = round((time.perf_counter() - started) * 1000)
        records = result.fclosed if args.emit == "f-closed" else result.iclosed
        payload = render_episodes(records, args.format, config.measure, args.emit)
        if args.out is not None:
            Path(args.out).write_text(payload, encoding="utf-8")
        else:
            sys.stdout.write(payload)
        if args.report is not None:
            report = render_report(result, config, args.emit, runtime_ms)
            Path(args.report).write_text(report, encoding="utf-8")
    except (OSError, EmptySequenceError) as exc:
        print(f"epimine: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
