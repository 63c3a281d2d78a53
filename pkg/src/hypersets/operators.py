"""Operators on hypersets, their combinators, and corpus-based law checks.

Operators are immutable expression trees so they can be parsed, printed and
compared; :func:`apply` evaluates them strictly.  Laws that quantify over all
sets (selectorhood, the consciousness-operator axioms) are checked over a
finite corpus and report concrete counterexamples.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .encodings import quine_atom
from .kernel import (
    EMPTY,
    SetValue,
    _canon_succ,
    _select,
    diff,
    intersect,
    is_abnormal,
    is_normal,
    make_set,
    subset,
    union2,
)


class OperatorExpr:
    """Base class.  ``a * b`` composes (apply b first), ``|``, ``&`` and ``-``
    combine pointwise."""

    def __call__(self, x: SetValue) -> SetValue:
        return apply(self, x)

    def __mul__(self, other: OperatorExpr) -> OperatorExpr:
        return Compose(self, other)

    def __or__(self, other: OperatorExpr) -> OperatorExpr:
        return OpUnion(self, other)

    def __and__(self, other: OperatorExpr) -> OperatorExpr:
        return OpIntersect(self, other)

    def __sub__(self, other: OperatorExpr) -> OperatorExpr:
        return OpDiff(self, other)

    def __str__(self):
        from .surface.printing import format_op

        return format_op(self)


@dataclass(frozen=True)
class Atom(OperatorExpr):
    symbol: str

    def __post_init__(self):
        if self.symbol not in ATOM_FUNCTIONS:
            raise ValueError(f"unknown operator atom {self.symbol!r}")


@dataclass(frozen=True)
class KA(OperatorExpr):
    """The consciousness operator K_A for a fixed parameter set A."""

    param: SetValue


@dataclass(frozen=True)
class Filter(OperatorExpr):
    """Comprehension operator {y ∈ x | pred(y)}."""

    pred: Callable[[SetValue], bool] = field(compare=True)
    name: str = "P"


@dataclass(frozen=True)
class Compose(OperatorExpr):
    left: OperatorExpr
    right: OperatorExpr


@dataclass(frozen=True)
class OpUnion(OperatorExpr):
    left: OperatorExpr
    right: OperatorExpr


@dataclass(frozen=True)
class OpIntersect(OperatorExpr):
    left: OperatorExpr
    right: OperatorExpr


@dataclass(frozen=True)
class OpDiff(OperatorExpr):
    left: OperatorExpr
    right: OperatorExpr


def elim(x: SetValue) -> SetValue:
    return EMPTY


def identity(x: SetValue) -> SetValue:
    return x


def brace(x: SetValue) -> SetValue:
    return make_set([x])


def russell(x: SetValue) -> SetValue:
    """The normal elements of x."""
    return _select(x, [i for i, y in enumerate(x.children) if is_normal(y)])


def anti_russell(x: SetValue) -> SetValue:
    """The abnormal elements of x."""
    return _select(x, [i for i, y in enumerate(x.children) if is_abnormal(y)])


def dual(x: SetValue) -> SetValue:
    """x* = {x*, x}: a fresh point with a self-loop and an edge to x."""
    n = x.node_count
    succ = [list(cs) for cs in x.succ]
    succ.append([n, 0])
    return _canon_succ(succ, n)


def c_op(x: SetValue) -> SetValue:
    omega = quine_atom()
    return _select(
        x, [i for i, y in enumerate(x.children) if is_normal(y) and omega not in y.elements]
    )


def k_a(a: SetValue, x: SetValue) -> SetValue:
    return _select(
        x,
        [
            i
            for i, y in enumerate(x.children)
            if is_normal(y) and not anti_russell(intersect(y, a)).children
        ],
    )


def k_diag(x: SetValue) -> SetValue:
    return _select(
        x,
        [
            i
            for i, y in enumerate(x.children)
            if is_normal(y) and all(is_normal(z) for z in intersect(x, y).children)
        ],
    )


ATOM_FUNCTIONS: dict[str, Callable[[SetValue], SetValue]] = {
    "E": elim,
    "I": identity,
    "B": brace,
    "R": russell,
    "T": anti_russell,
    "D": dual,
    "C": c_op,
    "Kdiag": k_diag,
}

E = ELIM = Atom("E")
I = IDENT = Atom("I")  # noqa: E741
B = BRACE = Atom("B")
R = RUSSELL = Atom("R")
T = ANTI_RUSSELL = Atom("T")
D = DUAL = Atom("D")
C = COP = Atom("C")
KDIAG = Atom("Kdiag")


def filter_op(pred: Callable[[SetValue], bool], name: str | None = None) -> Filter:
    return Filter(pred, name or getattr(pred, "__name__", "P"))


def apply(op: OperatorExpr, x: SetValue) -> SetValue:
    return _apply(op, x)


@lru_cache(maxsize=1 << 16)
def _apply(op: OperatorExpr, x: SetValue) -> SetValue:
    match op:
        case Atom(symbol):
            return ATOM_FUNCTIONS[symbol](x)
        case KA(param):
            return k_a(param, x)
        case Filter(pred):
            return _select(x, [i for i, y in enumerate(x.children) if pred(y)])
        case Compose(left, right):
            return _apply(left, _apply(right, x))
        case OpUnion(left, right):
            return union2(_apply(left, x), _apply(right, x))
        case OpIntersect(left, right):
            return intersect(_apply(left, x), _apply(right, x))
        case OpDiff(left, right):
            return diff(_apply(left, x), _apply(right, x))
    raise TypeError(f"not an operator expression: {op!r}")


def compose(*ops: OperatorExpr) -> OperatorExpr:
    """compose(A, B, C) = A ∘ B ∘ C (C applied first)."""
    out = ops[-1]
    for op in reversed(ops[:-1]):
        out = Compose(op, out)
    return out


def sub_collections(y: SetValue, limit: int = 12) -> Iterable[SetValue]:
    """Every set x ⊆ y, i.e. every sub-collection of y's elements.

    Sets with more than ``limit`` elements are skipped (2^limit subsets)."""
    kids = range(len(y))
    if len(kids) > limit:
        return
    for r in range(len(kids) + 1):
        for keep in combinations(kids, r):
            yield _select(y, keep)


@dataclass(frozen=True)
class SelectorCheck:
    holds: bool
    witness: tuple[SetValue, SetValue] | None = None  # (x, y) with x ⊆ y, Ox ≠ x ∩ Oy
    pairs_checked: int = 0

    def __bool__(self):
        return self.holds


def selector_violations(op: OperatorExpr, corpus: Sequence[SetValue]):
    """Yield every (x, y) with x ⊆ y, y in the corpus, and Ox ≠ x ∩ Oy.

    Every corpus pair x ⊆ y is among the sub-collections of y, so walking
    all sub-collections covers both kinds of pair."""
    for y in corpus:
        oy = apply(op, y)
        for x in sub_collections(y):
            if apply(op, x) != intersect(x, oy):
                yield x, y


def is_selector_on(op: OperatorExpr, corpus: Sequence[SetValue]) -> SelectorCheck:
    checked = 0
    for y in corpus:
        oy = apply(op, y)
        for x in sub_collections(y):
            checked += 1
            if apply(op, x) != intersect(x, oy):
                return SelectorCheck(False, (x, y), checked)
    return SelectorCheck(True, None, checked)


AXIOM_NAMES = {
    "a": "generation (Kx ⊆ x)",
    "b": "irreversibility (x ∉ Kx)",
    "c": "removal (Kx ∉ x)",
    "d": "selection (x ⊆ y ⇒ Kx = x ∩ Ky)",
}


@dataclass
class AxiomResult:
    axiom: str
    passed: bool
    witness: SetValue | None = None
    partner: SetValue | None = None  # the y of a failing (x, y) pair for axiom d
    violations: list = field(default_factory=list)

    @property
    def name(self) -> str:
        return AXIOM_NAMES[self.axiom]


@dataclass
class AxiomReport:
    op: OperatorExpr
    results: dict[str, AxiomResult]
    corpus_size: int = 0

    def __getitem__(self, axiom: str) -> AxiomResult:
        return self.results[axiom]

    @property
    def passed(self) -> dict[str, bool]:
        return {k: r.passed for k, r in self.results.items()}

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results.values())


def check_k_axioms(op: OperatorExpr, corpus: Sequence[SetValue]) -> AxiomReport:
    """Check axioms a-d for ``op`` on every set in ``corpus``.

    Failures list every counterexample found, first one as the witness.
    """
    bad: dict[str, list] = {k: [] for k in "abcd"}
    for x in corpus:
        ox = apply(op, x)
        if not subset(ox, x):
            bad["a"].append(x)
        if x in ox.elements:
            bad["b"].append(x)
        if ox in x.elements:
            bad["c"].append(x)
    bad["d"] = list(selector_violations(op, corpus))

    results = {}
    for k, found in bad.items():
        if not found:
            results[k] = AxiomResult(k, True)
        elif k == "d":
            results[k] = AxiomResult(k, False, found[0][0], found[0][1], found)
        else:
            results[k] = AxiomResult(k, False, found[0], None, found)
    return AxiomReport(op, results, len(corpus))
