"""Pure-set encodings of naturals, ordered pairs, rationals and histograms.

Naturals are von Neumann ordinals, pairs are Kuratowski pairs, and a
rational q = ±m/n in lowest terms is ``pair(sign, pair(m, n))`` with sign 0
for q ≥ 0 and 1 for q < 0.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Mapping
from fractions import Fraction
from functools import lru_cache

from .errors import DecodeError, NotAnOrdinal, NotAPair
from .kernel import SetGraph, SetValue, _canon_succ, canon, is_well_founded, make_set

Rational = Fraction


@lru_cache(maxsize=4096)
def nat_to_set(n: int) -> SetValue:
    if n < 0:
        raise ValueError("naturals are non-negative")
    # node i is the ordinal i; its children are all smaller ordinals
    return canon(SetGraph(n + 1, frozenset((i, j) for i in range(n + 1) for j in range(i))), n)


def set_to_nat(x: SetValue) -> int:
    n = len(x)
    # the ordinal n has exactly n elements and a minimal picture with n + 1 nodes
    if x.node_count != n + 1 or not is_well_founded(x) or x != nat_to_set(n):
        raise NotAnOrdinal("set is not a von Neumann ordinal")
    return n


def quine_atom() -> SetValue:
    """Ω = {Ω}: one node with a self-loop."""
    return canon(SetGraph(1, {(0, 0)}), 0)


def pair(a: SetValue, b: SetValue) -> SetValue:
    """Kuratowski pair {{a}, {a, b}}."""
    return make_set([make_set([a]), make_set([a, b])])


def unpair(x: SetValue) -> tuple[SetValue, SetValue]:
    kids = x.children
    if len(kids) == 1:
        (only,) = kids
        if len(only) == 1:
            a = only.children[0]
            return a, a
    elif len(kids) == 2:
        small, big = sorted(kids, key=len)
        if len(small) == 1 and len(big) == 2:
            a = small.children[0]
            if a in big.elements:
                (b,) = (c for c in big.children if c != a)
                return a, b
    raise NotAPair("set is not a Kuratowski pair")


class _Builder:
    """One graph holding the ordinals 0..top (node i is ordinal i) plus pair
    and rational nodes on top, so a whole encoding is canonicalized once."""

    def __init__(self, top: int):
        self.succ: list[list[int]] = [list(range(i)) for i in range(top + 1)]

    def node(self, children: Iterable[int]) -> int:
        self.succ.append(list(children))
        return len(self.succ) - 1

    def pair(self, a: int, b: int) -> int:
        return self.node([self.node([a]), self.node([a, b])])

    def rat(self, q: Fraction) -> int:
        sign = 1 if q < 0 else 0
        return self.pair(sign, self.pair(abs(q.numerator), q.denominator))

    def canon(self, point: int) -> SetValue:
        return _canon_succ(self.succ, point)


def _top(q: Fraction) -> int:
    return max(abs(q.numerator), q.denominator)


@lru_cache(maxsize=4096)
def rat_to_set(q: Fraction | int) -> SetValue:
    """pair(sign, pair(|m|, n)) built directly as one graph."""
    q = Fraction(q)
    b = _Builder(_top(q))
    return b.canon(b.rat(q))


def set_to_rat(x: SetValue) -> Fraction:
    try:
        sign_set, body = unpair(x)
        m_set, n_set = unpair(body)
        sign, m, n = set_to_nat(sign_set), set_to_nat(m_set), set_to_nat(n_set)
    except DecodeError as exc:
        raise DecodeError(f"not a rational encoding: {exc}") from exc
    if sign not in (0, 1) or n == 0:
        raise DecodeError("not a rational encoding: bad sign or zero denominator")
    q = Fraction(m, n)
    if q.numerator != m or q.denominator != n:
        raise DecodeError("not a rational encoding: fraction not in lowest terms")
    if sign == 1 and m == 0:
        raise DecodeError("not a rational encoding: negative zero")
    return -q if sign else q


class Histogram(Mapping):
    """Value → positive multiplicity, with no zero counts."""

    __slots__ = ("_entries",)

    def __init__(self, entries: Mapping[Fraction, int] | Iterable[tuple[Fraction, int]] = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        clean: dict[Fraction, int] = {}
        for value, count in items:
            if count < 0:
                raise ValueError("histogram counts must be positive")
            if count:
                clean[Fraction(value)] = clean.get(Fraction(value), 0) + count
        self._entries = dict(sorted(clean.items()))

    def __getitem__(self, key):
        return self._entries[Fraction(key)]

    def __iter__(self):
        return iter(self._entries)

    def __len__(self):
        return len(self._entries)

    def __eq__(self, other):
        if isinstance(other, Histogram):
            return self._entries == other._entries
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._entries.items()))

    def total(self) -> int:
        return sum(self._entries.values())

    def __repr__(self):
        body = ", ".join(f"({v}, {c})" for v, c in self._entries.items())
        return f"Histogram({{{body}}})"


def histogram_of(values: Iterable[Fraction | int]) -> Histogram:
    return Histogram(Counter(Fraction(v) for v in values))


def histogram_to_set(h: Histogram) -> SetValue:
    """{pair(rat(value), nat(count))} over the entries."""
    top = max((max(_top(v), c) for v, c in h.items()), default=0)
    b = _Builder(top)
    return b.canon(b.node(b.pair(b.rat(v), c) for v, c in h.items()))


def set_to_histogram(x: SetValue) -> Histogram:
    entries: dict[Fraction, int] = {}
    for element in x.children:
        v_set, c_set = unpair(element)
        value, count = set_to_rat(v_set), set_to_nat(c_set)
        if count == 0 or value in entries:
            raise DecodeError("not a histogram encoding")
        entries[value] = count
    return Histogram(entries)
