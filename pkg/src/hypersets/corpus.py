"""Finite corpora of hypersets for checking universally quantified laws."""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

from .encodings import quine_atom
from .kernel import SetGraph, SetValue, canon, empty_set, make_set
from .refinement import reachable


def _accessible(succ, n) -> bool:
    return len(reachable(succ, 0)) == n


@lru_cache(maxsize=None)
def small_sets(max_nodes: int = 4) -> tuple[SetValue, ...]:
    """Every hyperset whose minimal picture has at most ``max_nodes`` nodes.

    Enumerates all accessible pointed graphs on exactly k nodes (point 0)
    for k ≤ ``max_nodes``, keeping those that are already minimal.  The
    result is sorted by :meth:`SetValue.sort_key`.
    """
    found: set[SetValue] = set()
    for k in range(1, max_nodes + 1):
        pairs = [(a, b) for a in range(k) for b in range(k)]
        for mask in range(1 << len(pairs)):
            succ: list[list[int]] = [[] for _ in range(k)]
            for bit, (a, b) in enumerate(pairs):
                if mask >> bit & 1:
                    succ[a].append(b)
            if not _accessible(succ, k):
                continue
            v = canon(SetGraph.from_succ(succ), 0)
            if v.node_count == k:
                found.add(v)
    return tuple(sorted(found, key=SetValue.sort_key))


def random_graph(rng: random.Random, max_nodes: int = 10, edge_prob: float | None = None) -> SetGraph:
    n = rng.randint(1, max_nodes)
    p = rng.uniform(0.05, 0.5) if edge_prob is None else edge_prob
    return SetGraph(n, frozenset((a, b) for a in range(n) for b in range(n) if rng.random() < p))


def random_sets(count: int, max_nodes: int = 8, seed: int = 0, exclude=frozenset()) -> list[SetValue]:
    """``count`` distinct canonical sets pictured by random graphs of at most
    ``max_nodes`` nodes, none of them in ``exclude``.  Falls back to repeats
    only if distinct sets run out."""
    rng = random.Random(seed)
    seen: dict[SetValue, None] = {}
    attempts = 0
    while len(seen) < count and attempts < 50 * count:
        attempts += 1
        v = canon(random_graph(rng, max_nodes), 0)
        if v not in exclude:
            seen.setdefault(v)
    out = list(seen)
    while len(out) < count:
        out.append(canon(random_graph(rng, max_nodes), 0))
    return out


def all_graphs(n: int):
    """Every graph on exactly ``n`` nodes (2^(n·n) of them)."""
    pairs = [(a, b) for a in range(n) for b in range(n)]
    for bits in itertools.product((False, True), repeat=len(pairs)):
        yield SetGraph(n, frozenset(p for p, on in zip(pairs, bits) if on))


def named_examples() -> dict[str, SetValue]:
    """Named sets used as witnesses throughout the operator laws."""
    e = empty_set()
    om = quine_atom()
    e_om = make_set([e, om])
    return {
        "empty": e,
        "omega": om,
        "{empty}": make_set([e]),
        "{omega}": make_set([om]),
        "{empty, omega}": e_om,
        "{{empty, omega}}": make_set([e_om]),
        "{empty, omega, {empty, omega}}": make_set([e, om, e_om]),
    }


def default_corpus() -> tuple[SetValue, ...]:
    """All ≤ 4-node hypersets, preceded by any named example not among them."""
    small = small_sets(4)
    extra = [v for v in named_examples().values() if v not in set(small)]
    return tuple(dict.fromkeys(extra + list(small)))
