"""Hebb / McCulloch-Pitts networks and the sets their states decorate.

A network is a graph of neurons (edge a → b is a synapse from a to b) with
a learning rate ``alpha`` and threshold ``theta``.  A state freezes the
weights and binary voltages.  Labeling every neuron with the histogram of
weights on its active incoming synapses and decorating the labeled graph
gives each neuron a set; the set at the distinguished neuron is the thema.

All arithmetic is exact (``fractions.Fraction``).
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .decoration import decorate_labeled
from .encodings import histogram_of, histogram_to_set
from .kernel import EMPTY, SetGraph, SetValue
from .operators import k_a

Edge = tuple[int, int]

# Value of the Heaviside step at exactly zero: a neuron fires at threshold.
HEAVISIDE_AT_ZERO = 1


def heaviside(x: Fraction) -> int:
    if x == 0:
        return HEAVISIDE_AT_ZERO
    return 1 if x > 0 else 0


@dataclass(frozen=True)
class NeuralNet:
    graph: SetGraph
    alpha: Fraction
    theta: Fraction
    point: int = 0
    names: tuple[str, ...] = ()
    # per-neuron thresholds; unset means every neuron uses ``theta``
    node_thetas: Mapping[int, Fraction] | None = None

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "theta", Fraction(self.theta))
        if not self.names:
            object.__setattr__(self, "names", tuple(f"n{i}" for i in range(self.graph.node_count)))
        if len(self.names) != self.graph.node_count:
            raise ValueError("one name per neuron required")
        if not 0 <= self.point < self.graph.node_count:
            raise ValueError("point must be a neuron of the network")

    @property
    def size(self) -> int:
        return self.graph.node_count

    def theta_of(self, a: int) -> Fraction:
        if self.node_thetas and a in self.node_thetas:
            return Fraction(self.node_thetas[a])
        return self.theta

    def in_edges(self, a: int) -> list[Edge]:
        return [(p, a) for p in self._pred[a]]

    @property
    def _pred(self) -> tuple[tuple[int, ...], ...]:
        cached = self.__dict__.get("_pred_cache")
        if cached is None:
            pred: list[list[int]] = [[] for _ in range(self.size)]
            for p, a in sorted(self.graph.edges):
                pred[a].append(p)
            cached = tuple(tuple(ps) for ps in pred)
            object.__setattr__(self, "_pred_cache", cached)
        return cached


@dataclass(frozen=True)
class NeuralState:
    weights: Mapping[Edge, Fraction]
    voltages: tuple[int, ...]
    time: int = 0

    def __post_init__(self):
        object.__setattr__(self, "weights", {e: Fraction(w) for e, w in sorted(self.weights.items())})
        object.__setattr__(self, "voltages", tuple(int(v) for v in self.voltages))
        if any(v not in (0, 1) for v in self.voltages):
            raise ValueError("voltages must be 0 or 1")

    def validate(self, net: NeuralNet) -> None:
        if len(self.voltages) != net.size:
            raise ValueError("one voltage per neuron required")
        if set(self.weights) != set(net.graph.edges):
            raise ValueError("weights must be given for exactly the synapses of the network")


def active_in_edges(net: NeuralNet, state: NeuralState, a: int) -> frozenset[Edge]:
    return frozenset(e for e in net.in_edges(a) if state.voltages[e[0]] == 1)


def mcp_voltage(net: NeuralNet, state: NeuralState, a: int) -> int:
    drive = sum((state.weights[e] * state.voltages[e[0]] for e in net.in_edges(a)), Fraction(0))
    return heaviside(drive - net.theta_of(a))


def hebb_weight(net: NeuralNet, state: NeuralState, v_new: Sequence[int], edge: Edge) -> Fraction:
    a, b = edge
    return state.weights[edge] + net.alpha * state.voltages[a] * v_new[b]


def step(net: NeuralNet, state: NeuralState) -> NeuralState:
    """One synchronous update: all voltages from the old state, then all
    weights from old source voltages and new target voltages."""
    v_new = tuple(mcp_voltage(net, state, a) for a in range(net.size))
    weights = {e: hebb_weight(net, state, v_new, e) for e in state.weights}
    return NeuralState(weights, v_new, state.time + 1)


def state_labeling(net: NeuralNet, state: NeuralState) -> dict[int, SetValue]:
    """Each neuron's label: the histogram of weights on its active in-edges."""
    labels = {}
    for a in range(net.size):
        edges = active_in_edges(net, state, a)
        labels[a] = histogram_to_set(histogram_of(state.weights[e] for e in edges)) if edges else EMPTY
    return labels


def membership_graph(net: NeuralNet) -> SetGraph:
    """The graph that gets decorated: a synapse a → b becomes the membership
    edge a → b, so the target's set is an element of the source's set.

    This orientation is the one under which the three-neuron example
    (a feeding b and c, c feeding b, only b firing) decorates to the
    ordinal 2; reversing the edges does not.
    """
    return net.graph


def mz_decorate(net: NeuralNet, state: NeuralState) -> list[SetValue]:
    return decorate_labeled(membership_graph(net), state_labeling(net, state))


def thema(net: NeuralNet, state: NeuralState) -> SetValue:
    return mz_decorate(net, state)[net.point]


def quale(net: NeuralNet, state: NeuralState) -> SetValue:
    """K_Θ Θ for the thema Θ of the state."""
    t = thema(net, state)
    return k_a(t, t)


@dataclass(frozen=True)
class TrajectoryEntry:
    time: int
    state: NeuralState
    thema: SetValue
    decoration: tuple[SetValue, ...] | None = None


@dataclass
class Trajectory:
    net: NeuralNet
    entries: list[TrajectoryEntry] = field(default_factory=list)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    @property
    def themata(self) -> list[SetValue]:
        return [e.thema for e in self.entries]


def run(net: NeuralNet, initial: NeuralState, steps: int, full: bool = False) -> Trajectory:
    """Record the state and thema at each time 0..steps; ``full`` also keeps
    every neuron's set."""
    if steps < 0:
        raise ValueError("steps must be non-negative")
    initial.validate(net)
    traj = Trajectory(net)
    state = initial
    for i in range(steps + 1):
        if i:
            state = step(net, state)
        deco = mz_decorate(net, state)
        traj.entries.append(
            TrajectoryEntry(state.time, state, deco[net.point], tuple(deco) if full else None)
        )
    return traj
