"""Coarsest bisimulation and canonical ordering on finite successor lists.

Graphs here are plain ``succ`` sequences: ``succ[x]`` lists the children of
node ``x``.  Children lists may repeat entries; they are treated as sets.
"""

from __future__ import annotations

from collections.abc import Sequence


def _dedup(succ: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    return [tuple(sorted(set(cs))) for cs in succ]


def _well_founded_order(succ: Sequence[Sequence[int]]) -> list[int]:
    """Nodes that reach no cycle, children before parents."""
    n = len(succ)
    pred: list[list[int]] = [[] for _ in range(n)]
    pending = [len(cs) for cs in succ]
    for x, cs in enumerate(succ):
        for c in cs:
            pred[c].append(x)
    order = [x for x in range(n) if not pending[x]]
    for x in order:
        for p in pred[x]:
            pending[p] -= 1
            if not pending[p]:
                order.append(p)
    return order


def coarsest_partition(succ: Sequence[Sequence[int]]) -> list[int]:
    """Return ``block_of`` for the maximal bisimulation of the graph.

    Acyclic graphs take a bottom-up pass (two nodes are bisimilar iff their
    children fall in the same classes); everything else goes through
    :func:`paige_tarjan`.
    """
    succ = _dedup(succ)
    order = _well_founded_order(succ)
    if len(order) != len(succ):
        return paige_tarjan(succ)
    classes: dict[frozenset[int], int] = {}
    block_of = [0] * len(succ)
    for x in order:
        block_of[x] = classes.setdefault(frozenset(block_of[c] for c in succ[x]), len(classes))
    return _normalize(block_of)


def paige_tarjan(succ: Sequence[Sequence[int]]) -> list[int]:
    """Return ``block_of`` for the maximal bisimulation of the graph.

    Paige-Tarjan relational coarsest partition with compound blocks and
    per-node edge counts, so each refinement step processes the smaller
    half of a compound block.  Block ids are renumbered by first occurrence
    so the result does not depend on internal bookkeeping order.
    """
    succ = _dedup(succ)
    n = len(succ)
    if n == 0:
        return []
    pred: list[list[int]] = [[] for _ in range(n)]
    for x, cs in enumerate(succ):
        for y in cs:
            pred[y].append(x)

    blocks: dict[int, set[int]] = {}
    block_of = [0] * n
    comp_of: dict[int, int] = {}
    comp_blocks: dict[int, set[int]] = {0: set()}
    next_bid = 0
    # Q starts stable with respect to the universe: leaves vs. parents.
    for group in ([x for x in range(n) if not succ[x]], [x for x in range(n) if succ[x]]):
        if not group:
            continue
        blocks[next_bid] = set(group)
        for x in group:
            block_of[x] = next_bid
        comp_of[next_bid] = 0
        comp_blocks[0].add(next_bid)
        next_bid += 1

    # count[(x, S)] = number of children of x inside compound block S
    count: dict[tuple[int, int], int] = {(x, 0): len(succ[x]) for x in range(n) if succ[x]}
    pending = [0] if len(comp_blocks[0]) > 1 else []
    next_cid = 1

    def split(hit_nodes) -> None:
        nonlocal next_bid
        hits: dict[int, list[int]] = {}
        for x in hit_nodes:
            hits.setdefault(block_of[x], []).append(x)
        for d, members in hits.items():
            if len(members) == len(blocks[d]):
                continue
            new = next_bid
            next_bid += 1
            moved = set(members)
            blocks[d] -= moved
            blocks[new] = moved
            for x in members:
                block_of[x] = new
            c = comp_of[d]
            comp_of[new] = c
            comp_blocks[c].add(new)
            if len(comp_blocks[c]) == 2:
                pending.append(c)

    while pending:
        s = pending.pop()
        members = comp_blocks[s]
        if len(members) < 2:
            continue
        it = iter(members)
        b1, b2 = next(it), next(it)
        b = b1 if len(blocks[b1]) <= len(blocks[b2]) else b2
        members.discard(b)
        if len(members) >= 2:
            pending.append(s)
        s_new = next_cid
        next_cid += 1
        comp_blocks[s_new] = {b}
        comp_of[b] = s_new

        into_b: dict[int, int] = {}
        for y in blocks[b]:
            for x in pred[y]:
                into_b[x] = into_b.get(x, 0) + 1

        split(into_b)
        # nodes whose every child inside S lies in B: pre(B) minus pre(S - B)
        split([x for x, c in into_b.items() if c == count[(x, s)]])

        for x, c in into_b.items():
            rest = count[(x, s)] - c
            if rest:
                count[(x, s)] = rest
            else:
                del count[(x, s)]
            count[(x, s_new)] = c

    return _normalize(block_of)


def _normalize(block_of: Sequence[int]) -> list[int]:
    renumber: dict[int, int] = {}
    return [renumber.setdefault(b, len(renumber)) for b in block_of]


def quotient(succ: Sequence[Sequence[int]], block_of: Sequence[int]) -> list[tuple[int, ...]]:
    """Collapse each block to one node; block ids must be dense."""
    nblocks = max(block_of) + 1 if block_of else 0
    out: list[set[int] | None] = [None] * nblocks
    for x, cs in enumerate(succ):
        b = block_of[x]
        if out[b] is None:
            out[b] = {block_of[c] for c in cs}
    return [tuple(sorted(s)) for s in out]  # type: ignore[arg-type]


def canonical_ranks(succ: Sequence[Sequence[int]]) -> list[int]:
    """Rank the nodes of a bisimulation-minimal graph by an intrinsic order.

    Well-founded nodes come first, ordered by height and then by their
    sorted child ranks, in one bottom-up pass.  The remaining nodes (those
    that reach a cycle) start with a common color above all of them and are
    refined in rounds by ``(previous rank, sorted distinct child ranks)``.
    Every comparison depends only on what is reachable from the two nodes,
    so the order is intrinsic.  On a minimal graph the result is total.
    """
    succ = _dedup(succ)
    n = len(succ)
    height: list[int | None] = [None] * n
    order = _well_founded_order(succ)
    for x in order:
        height[x] = 1 + max((height[c] for c in succ[x]), default=-1)  # type: ignore[type-var]

    color = [0] * n
    by_height: dict[int, list[int]] = {}
    for x in order:
        by_height.setdefault(height[x], []).append(x)  # type: ignore[arg-type]
    next_rank = 0
    for h in sorted(by_height):
        level = sorted(by_height[h], key=lambda x: sorted(color[c] for c in succ[x]))
        for x in level:
            color[x] = next_rank
            next_rank += 1

    cyclic = [x for x in range(n) if height[x] is None]
    base = next_rank
    ncolors = 1 if cyclic else 0
    for x in cyclic:
        color[x] = base
    while cyclic:
        sigs = [(color[x], tuple(sorted({color[c] for c in succ[x]}))) for x in cyclic]
        index = {sig: base + i for i, sig in enumerate(sorted(set(sigs)))}
        if len(index) == ncolors:
            break
        for x, sig in zip(cyclic, sigs):
            color[x] = index[sig]
        ncolors = len(index)
    if len(set(color)) != n:
        raise ValueError("canonical_ranks requires a bisimulation-minimal graph")
    return color


def reachable(succ: Sequence[Sequence[int]], start: int) -> list[int]:
    """Nodes reachable from ``start`` in BFS order (``start`` first)."""
    seen = {start}
    order = [start]
    i = 0
    while i < len(order):
        for c in succ[order[i]]:
            if c not in seen:
                seen.add(c)
                order.append(c)
        i += 1
    return order
