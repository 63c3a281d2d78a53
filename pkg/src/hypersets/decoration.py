"""Decorations of finite graphs and of labeled graphs.

A decoration assigns a set to each node so that a node's set has exactly the
children's sets as elements; a labeled decoration additionally unions in the
node's label.  By anti-foundation both exist and are unique; here they are
computed by one bisimulation quotient of the whole graph.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass

from .kernel import SetGraph, SetValue, _guard, _relabel, make_set, union2
from .refinement import canonical_ranks, coarsest_partition, quotient

Labeling = Mapping[int, SetValue]
Decoration = list  # list[SetValue], indexed by node


def _decorate_succ(succ: Sequence[Sequence[int]]) -> list[SetValue]:
    _guard(len(succ))
    block_of = coarsest_partition(succ)
    q = quotient(succ, block_of)
    ranks = canonical_ranks(q)
    values = [_relabel(q, b, ranks) for b in range(len(q))]
    return [values[b] for b in block_of]


def decorate(g: SetGraph) -> list[SetValue]:
    """The unique decoration: ``d[a]`` is the set pictured by node ``a``."""
    return _decorate_succ(g.succ)


def splice(g: SetGraph, labeling: Labeling) -> list[list[int]]:
    """Graph whose plain decoration restricted to g's nodes is the labeled one.

    Each distinct label's minimal graph is appended once, and every node
    carrying that label gets edges to the label's elements.
    """
    for a in labeling:
        if not 0 <= a < g.node_count:
            raise ValueError(f"label for node {a} outside the graph")
    succ = [list(cs) for cs in g.succ]
    offsets: dict[SetValue, int] = {}
    for a in sorted(labeling):
        lab = labeling[a]
        if lab not in offsets:
            off = len(succ)
            offsets[lab] = off
            succ.extend([off + c for c in cs] for cs in lab.succ)
        succ[a].extend(offsets[lab] + c for c in lab.succ[0])
    return succ


def decorate_labeled(g: SetGraph, labeling: Labeling) -> list[SetValue]:
    """d(a) = {d(b) | a → b} ∪ λ(a) for every node; missing labels mean ∅."""
    return _decorate_succ(splice(g, labeling))[: g.node_count]


def decorate_well_founded(g: SetGraph) -> list[SetValue]:
    """Bottom-up construction for acyclic graphs, children before parents."""
    succ = g.succ
    out: list[SetValue | None] = [None] * g.node_count
    state = [0] * g.node_count  # 0 new, 1 on stack, 2 done
    for root in range(g.node_count):
        if state[root]:
            continue
        stack = [root]
        while stack:
            a = stack[-1]
            if state[a] == 0:
                state[a] = 1
                for b in succ[a]:
                    if state[b] == 1:
                        raise ValueError("graph has a cycle; no bottom-up decoration")
                    if state[b] == 0:
                        stack.append(b)
            else:
                stack.pop()
                if state[a] == 1:
                    out[a] = make_set(out[b] for b in succ[a])
                    state[a] = 2
    return out  # type: ignore[return-value]


@dataclass(frozen=True)
class DecorationCheck:
    ok: bool
    node: int | None = None  # first node where the defining equation fails
    expected: SetValue | None = None  # right-hand side evaluated at that node

    def __bool__(self):
        return self.ok


def check_decoration(g: SetGraph, d: Sequence[SetValue], labeling: Labeling | None = None) -> DecorationCheck:
    """Verify the (labeled) decoration equation at every node."""
    if len(d) != g.node_count:
        raise ValueError("decoration must assign a set to every node")
    labeling = labeling or {}
    for a in range(g.node_count):
        rhs = make_set(d[b] for b in g.succ[a])
        if a in labeling:
            rhs = union2(rhs, labeling[a])
        if rhs != d[a]:
            return DecorationCheck(False, a, rhs)
    return DecorationCheck(True)
