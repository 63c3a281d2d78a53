"""Hereditarily finite hypersets as minimal accessible pointed graphs.

A :class:`SetValue` is the quotient of an accessible pointed graph by its
maximal bisimulation, numbered by a deterministic breadth-first walk from the
point.  Two SetValues are equal exactly when they denote the same set, so
``==`` and ``hash`` are set equality and a usable cache key.
"""

from __future__ import annotations

import contextlib
import os
from collections.abc import Iterable, Iterator, Sequence
from contextvars import ContextVar
from dataclasses import dataclass, field
from functools import cached_property

from .errors import GraphTooLarge
from .refinement import canonical_ranks, coarsest_partition, quotient, reachable

DEFAULT_MAX_NODES = int(os.environ.get("HYPERSETS_MAX_NODES", 1_000_000))
_max_nodes: ContextVar[int] = ContextVar("max_nodes", default=DEFAULT_MAX_NODES)


@contextlib.contextmanager
def node_limit(limit: int):
    """Temporarily change the graph size guard for the current context."""
    token = _max_nodes.set(limit)
    try:
        yield
    finally:
        _max_nodes.reset(token)


def _guard(size: int) -> None:
    limit = _max_nodes.get()
    if size > limit:
        raise GraphTooLarge(size, limit)


@dataclass(frozen=True)
class SetGraph:
    """A finite directed graph read as a system of set equations."""

    node_count: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.node_count < 0:
            raise ValueError("node_count must be non-negative")
        edges = frozenset((int(a), int(b)) for a, b in self.edges)
        for a, b in edges:
            if not (0 <= a < self.node_count and 0 <= b < self.node_count):
                raise ValueError(f"edge {(a, b)} refers to a node outside 0..{self.node_count - 1}")
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_succ(cls, succ: Sequence[Iterable[int]]) -> SetGraph:
        return cls(len(succ), frozenset((a, b) for a, cs in enumerate(succ) for b in cs))

    @cached_property
    def succ(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.node_count)]
        for a, b in self.edges:
            out[a].append(b)
        return tuple(tuple(sorted(cs)) for cs in out)

    def children(self, node: int) -> tuple[int, ...]:
        return self.succ[node]


class SetValue:
    """Canonical hyperset: point is node 0, every node reachable, no two
    distinct nodes bisimilar.  Build these with :func:`canon` or
    :func:`make_set`, never by hand."""

    __slots__ = ("succ", "_hash", "_ranks", "__dict__")

    def __init__(self, succ: tuple[tuple[int, ...], ...], ranks: Sequence[int] | None = None):
        self.succ = succ
        self._hash = hash(succ)
        self._ranks = ranks

    point = 0

    @property
    def node_count(self) -> int:
        return len(self.succ)

    @property
    def graph(self) -> SetGraph:
        return SetGraph.from_succ(self.succ)

    @property
    def ranks(self) -> Sequence[int]:
        if self._ranks is None:
            self._ranks = canonical_ranks(self.succ)
        return self._ranks

    @cached_property
    def children(self) -> tuple[SetValue, ...]:
        return tuple(_relabel(self.succ, c, self.ranks) for c in self.succ[0])

    @cached_property
    def elements(self) -> frozenset[SetValue]:
        return frozenset(self.children)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, SetValue):
            return NotImplemented
        return self._hash == other._hash and self.succ == other.succ

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.succ[0])

    def __iter__(self) -> Iterator[SetValue]:
        return iter(self.children)

    def __contains__(self, item):
        return isinstance(item, SetValue) and item in self.elements

    def sort_key(self):
        return (len(self.succ), self.succ)

    def __repr__(self):
        from .surface.printing import format_set

        return f"SetValue({format_set(self)!r})"


def _relabel(succ: Sequence[Sequence[int]], point: int, rank: Sequence[int]) -> SetValue:
    """Renumber the part of a minimal graph reachable from ``point``.

    BFS from the point, visiting children in ``rank`` order.  ``rank`` must be
    the intrinsic order from :func:`canonical_ranks` (or a restriction of it).
    """
    newid = {point: 0}
    order = [point]
    i = 0
    while i < len(order):
        for c in sorted(succ[order[i]], key=rank.__getitem__):
            if c not in newid:
                newid[c] = len(order)
                order.append(c)
        i += 1
    new_succ = tuple(tuple(sorted({newid[c] for c in succ[x]})) for x in order)
    return SetValue(new_succ, [rank[x] for x in order])


def _canon_succ(succ: Sequence[Sequence[int]], point: int) -> SetValue:
    order = reachable(succ, point)
    _guard(len(order))
    index = {x: i for i, x in enumerate(order)}
    sub = [[index[c] for c in succ[x]] for x in order]
    block_of = coarsest_partition(sub)
    q = quotient(sub, block_of)
    return _relabel(q, block_of[0], canonical_ranks(q))


def canon(graph: SetGraph, point: int) -> SetValue:
    """The set decorating ``point``: reachable part, quotiented and renumbered."""
    if not 0 <= point < graph.node_count:
        raise ValueError(f"point {point} out of range for a graph with {graph.node_count} nodes")
    return _canon_succ(graph.succ, point)


def _disjoint_union(values: Sequence[SetValue]) -> tuple[list[list[int]], list[int]]:
    succ: list[list[int]] = []
    offsets = []
    for v in values:
        off = len(succ)
        offsets.append(off)
        succ.extend([off + c for c in cs] for cs in v.succ)
    _guard(len(succ) + 1)
    return succ, offsets


def _with_root(values: Sequence[SetValue], pick) -> SetValue:
    """Canonicalize a fresh root over the disjoint union of ``values``.

    ``pick(succ, offsets)`` returns the root's children as union-graph nodes.
    """
    succ, offsets = _disjoint_union(values)
    root_children = list(pick(succ, offsets))
    succ.append(root_children)
    return _canon_succ(succ, len(succ) - 1)


def make_set(elements: Iterable[SetValue]) -> SetValue:
    elems = list(dict.fromkeys(elements))
    return _with_root(elems, lambda succ, offsets: offsets)


EMPTY = SetValue(((),), [0])


def empty_set() -> SetValue:
    return EMPTY


def bisimilar(x: SetValue, y: SetValue) -> bool:
    """Do the points of ``x`` and ``y`` share a block of the coarsest
    bisimulation of their disjoint union?"""
    succ, (ox, oy) = _disjoint_union([x, y])
    block_of = coarsest_partition(succ)
    return block_of[ox] == block_of[oy]


def children(x: SetValue) -> tuple[SetValue, ...]:
    return x.children


def elem(x: SetValue, y: SetValue) -> bool:
    """x ∈ y.  Canonical forms are unique, so membership is a hash lookup."""
    return x in y.elements


def subset(x: SetValue, y: SetValue) -> bool:
    return x.elements <= y.elements


def _select(x: SetValue, keep: Iterable[int]) -> SetValue:
    kept = [x.succ[0][i] for i in keep]
    return _with_root([x], lambda succ, offsets: [offsets[0] + c for c in kept])


def union2(x: SetValue, y: SetValue) -> SetValue:
    return _with_root(
        [x, y],
        lambda succ, offsets: [off + c for v, off in zip((x, y), offsets) for c in v.succ[0]],
    )


def _member_mask(x: SetValue, y: SetValue) -> list[bool]:
    """For each child of x's point: is it bisimilar to some child of y's point?"""
    succ, (ox, oy) = _disjoint_union([x, y])
    block_of = coarsest_partition(succ)
    y_blocks = {block_of[oy + c] for c in y.succ[0]}
    return [block_of[ox + c] in y_blocks for c in x.succ[0]]


def intersect(x: SetValue, y: SetValue) -> SetValue:
    mask = _member_mask(x, y)
    return _select(x, [i for i, m in enumerate(mask) if m])


def diff(x: SetValue, y: SetValue) -> SetValue:
    """x − y, i.e. the children of x that are not elements of y."""
    mask = _member_mask(x, y)
    return _select(x, [i for i, m in enumerate(mask) if not m])


def filter_children(x: SetValue, pred) -> SetValue:
    """{y ∈ x | pred(y)}: comprehension over the elements of ``x``."""
    return _select(x, [i for i, c in enumerate(x.children) if pred(c)])


def big_union(a: SetValue) -> SetValue:
    """Monadic union: every element of every element of ``a``."""
    return make_set(z for y in a.children for z in y.children)


def is_normal(x: SetValue) -> bool:
    return x not in x.elements


def is_abnormal(x: SetValue) -> bool:
    return x in x.elements


def is_well_founded(x: SetValue) -> bool:
    """No infinite path, i.e. no cycle in the (finite) minimal graph."""
    succ = x.succ
    indeg = [0] * len(succ)
    for cs in succ:
        for c in cs:
            indeg[c] += 1
    stack = [i for i, d in enumerate(indeg) if d == 0]
    removed = 0
    while stack:
        node = stack.pop()
        removed += 1
        for c in succ[node]:
            indeg[c] -= 1
            if indeg[c] == 0:
                stack.append(c)
    return removed == len(succ)


@dataclass(frozen=True)
class TreeNode:
    """A node of the canonical tree: the chain x, x1, ..., xn with
    xn ∈ ... ∈ x1 ∈ x, read from the root down."""

    chain: tuple[SetValue, ...]
    children: tuple[TreeNode, ...] = ()

    @property
    def value(self) -> SetValue:
        return self.chain[-1]

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def height(self) -> int:
        return 1 + max((c.height() for c in self.children), default=-1)


def unfold_tree(x: SetValue, depth: int) -> TreeNode:
    """The canonical tree of ``x`` cut off ``depth`` edges below the root."""
    if depth < 0:
        raise ValueError("depth must be non-negative")

    def grow(chain: tuple[SetValue, ...], remaining: int) -> TreeNode:
        if remaining == 0:
            return TreeNode(chain)
        return TreeNode(chain, tuple(grow(chain + (c,), remaining - 1) for c in chain[-1].children))

    return grow((x,), depth)
