"""Mining frequency-closed DAG episodes from one long event sequence."""

from .episode import (
    CycleError,
    Edge,
    Episode,
    NotStrictError,
    canonicalize,
    format_episode,
    is_subepisode,
    parse_episode,
    transitive_closure,
)
from .scanner import EventSequence, Interval, find_minimal_windows, frequency
from .closure import ClosureContext, i_closure
from .miner import ConfigError, EpisodeRecord, MiningConfig, MiningResult, mine, mine_full

__all__ = [
    "CycleError",
    "Edge",
    "Episode",
    "NotStrictError",
    "canonicalize",
    "format_episode",
    "is_subepisode",
    "parse_episode",
    "transitive_closure",
    "EventSequence",
    "Interval",
    "find_minimal_windows",
    "frequency",
    "ClosureContext",
    "i_closure",
    "ConfigError",
    "EpisodeRecord",
    "MiningConfig",
    "MiningResult",
    "mine",
    "mine_full",
]

__version__ = "0.1.0"
