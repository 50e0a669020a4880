"""Shared fixtures: tiny sequences, named episodes, random generators."""

from epimine.episode import Episode, canonicalize, transitive_closure

S1 = "a b c b d a c b c d".split()
S2 = "a x b y a x b".split()
S3 = "a c b x x a b c x x b a c".split()


def ep(labels, edges=()) -> Episode:
    """Canonical transitively closed episode from nodes in any order."""
    return transitive_closure(canonicalize(labels, edges))


DIAMOND = ep("abcd", [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)])
FAN = ep("abcd", [(0, 1), (0, 2), (0, 3)])
PARALLEL_ABCD = ep("abcd")
SERIAL_ABCD = ep("abcd", [(0, 1), (1, 2), (2, 3)])
SERIAL_ACBD = ep("abcd", [(0, 2), (2, 1), (1, 3)])
SERIAL_ABC = ep("abc", [(0, 1), (1, 2)])


def random_sequence(rng, max_len=25, alphabet="abcd"):
    return [rng.choice(alphabet) for _ in range(rng.randint(1, max_len))]


def random_episode(rng, alphabet="abcd", max_nodes=4) -> Episode:
    """Random strict transitively closed episode.

    Lays random labels on a random topological order, chains equal
    labels (strictness), keeps a random subset of the other forward
    pairs, then closes and canonicalizes. Every strict tc episode is
    reachable this way since every DAG has a topological order.
    """
    n = rng.randint(1, max_nodes)
    labels = [rng.choice(alphabet) for _ in range(n)]
    order = list(range(n))
    rng.shuffle(order)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            u, v = order[i], order[j]
            if labels[u] == labels[v] or rng.random() < 0.4:
                edges.append((u, v))
    return ep(labels, edges)


def block_sequence(repeats=100, width=6):
    """p1..pN repeated, each block followed by a one-off filler token."""
    out = []
    for i in range(repeats):
        out.extend(f"p{j}" for j in range(1, width + 1))
        out.append(f"f{i}")
    return out
