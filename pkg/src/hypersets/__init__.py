"""Finite non-well-founded sets as canonical graphs, an operator algebra on
them, and the sets decorated by Hebbian neural network states."""

from .decoration import check_decoration, decorate, decorate_labeled, decorate_well_founded, splice
from .encodings import (
    Histogram,
    Rational,
    histogram_of,
    histogram_to_set,
    nat_to_set,
    pair,
    quine_atom,
    rat_to_set,
    set_to_histogram,
    set_to_nat,
    set_to_rat,
    unpair,
)
from .errors import DecodeError, GraphTooLarge, HypersetError, NotAnOrdinal, NotAPair, ParseError
from .kernel import (
    EMPTY,
    SetGraph,
    SetValue,
    big_union,
    bisimilar,
    canon,
    children,
    diff,
    elem,
    empty_set,
    intersect,
    is_abnormal,
    is_normal,
    is_well_founded,
    make_set,
    node_limit,
    subset,
    unfold_tree,
    union2,
)
from .neural import NeuralNet, NeuralState, Trajectory, membership_graph, mz_decorate, quale, run, step, thema
from .operators import (
    KA,
    Atom,
    AxiomReport,
    Compose,
    Filter,
    OperatorExpr,
    OpDiff,
    OpIntersect,
    OpUnion,
    apply,
    check_k_axioms,
    compose,
    filter_op,
    is_selector_on,
)
from .surface.parser import parse_graph, parse_network, parse_opexpr, parse_system
from .surface.printing import export_dot, format_set

__all__ = [name for name in dir() if not name.startswith("_")]
