"""Text and DOT renderings of sets, graphs, operators and networks.

Set printing rules (byte-exact, relied on by golden files):

* the empty set prints as ``{}``;
* a node that lies on a cycle prints as its name ``xK`` (K = canonical node
  id) and is defined once in a trailing ``where`` clause, in id order,
  bindings separated by ``"; "``;
* every other node prints as a brace list of its elements in canonical order,
  separated by ``", "``;
* a brace list is padded with inner spaces (``{ a, b }``) exactly when at
  least one element is itself printed as a brace list, otherwise it is tight
  (``{x0}``).

So Ω prints as ``x0 where x0 = {x0}`` and the ordinal 2 as ``{ {}, { {} } }``.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence

from ..kernel import SetGraph, SetValue


def cyclic_nodes(succ: Sequence[Sequence[int]]) -> set[int]:
    """Nodes lying on some cycle (self-loops included), via iterative Tarjan."""
    n = len(succ)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    out: set[int] = set()
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            node, i = work.pop()
            if i == 0:
                index[node] = low[node] = counter
                counter += 1
                stack.append(node)
                on_stack[node] = True
            recurse = False
            kids = succ[node]
            while i < len(kids):
                c = kids[i]
                i += 1
                if index[c] == -1:
                    work.append((node, i))
                    work.append((c, 0))
                    recurse = True
                    break
                if on_stack[c]:
                    low[node] = min(low[node], index[c])
            if recurse:
                continue
            if low[node] == index[node]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == node:
                        break
                if len(comp) > 1 or node in succ[node]:
                    out.update(comp)
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
    return out


def _brace(items: list[str], padded: bool) -> str:
    if not items:
        return "{}"
    body = ", ".join(items)
    return f"{{ {body} }}" if padded else f"{{{body}}}"


def format_set(v: SetValue) -> str:
    succ = v.succ
    cyclic = cyclic_nodes(succ)
    memo: dict[int, str] = {}

    def expr(x: int) -> str:
        if x in cyclic:
            return f"x{x}"
        if x not in memo:
            memo[x] = literal(x)
        return memo[x]

    def literal(x: int) -> str:
        kids = succ[x]
        return _brace([expr(c) for c in kids], any(c not in cyclic for c in kids))

    head = expr(0)
    defs = [f"x{k} = {literal(k)}" for k in sorted(cyclic)]
    return f"{head} where {'; '.join(defs)}" if defs else head


_PREC = {"Compose": 3, "OpIntersect": 2, "OpUnion": 1, "OpDiff": 1}
_SYM = {"Compose": ".", "OpIntersect": " & ", "OpUnion": " | ", "OpDiff": " - "}


def format_op(op) -> str:
    from ..operators import KA, Atom, Filter

    if isinstance(op, Atom):
        return op.symbol
    if isinstance(op, KA):
        return f"K[{format_set(op.param)}]"
    if isinstance(op, Filter):
        return f"<{op.name}>"
    kind = type(op).__name__
    prec = _PREC[kind]

    def side(sub, right: bool) -> str:
        text = format_op(sub)
        sub_prec = _PREC.get(type(sub).__name__, 4)
        if sub_prec < prec or (right and sub_prec == prec):
            return f"({text})"
        return text

    return side(op.left, False) + _SYM[kind] + side(op.right, True)


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def dot_set(v: SetValue, name: str = "set") -> str:
    lines = [f"digraph {_quote(name)} {{"]
    for x in range(v.node_count):
        shape = "doublecircle" if x == 0 else "circle"
        lines.append(f"  n{x} [label={_quote(f'x{x}')}, shape={shape}];")
    for x, kids in enumerate(v.succ):
        for c in kids:
            lines.append(f"  n{x} -> n{c};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dot_graph(g: SetGraph, names: Sequence[str] | None = None, point: int | None = None,
              name: str = "graph") -> str:
    names = list(names) if names is not None else [f"n{i}" for i in range(g.node_count)]
    lines = [f"digraph {_quote(name)} {{"]
    for i in range(g.node_count):
        shape = "doublecircle" if i == point else "circle"
        lines.append(f"  {_quote(names[i])} [shape={shape}];")
    for a, b in sorted(g.edges):
        lines.append(f"  {_quote(names[a])} -> {_quote(names[b])};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dot_network(net, state=None, name: str = "network") -> str:
    """DOT for a neural net; with a state, voltages and weights are shown."""
    names = net.names
    lines = [f"digraph {_quote(name)} {{"]
    for i in range(net.graph.node_count):
        attrs = ["shape=doublecircle" if i == net.point else "shape=circle"]
        if state is not None:
            v = state.voltages[i]
            attrs.append(f"label={_quote(f'{names[i]} v={v}')}")
            if v:
                attrs.append("style=filled")
        lines.append(f"  {_quote(names[i])} [{', '.join(attrs)}];")
    weights: Mapping = state.weights if state is not None else {}
    for a, b in sorted(net.graph.edges):
        label = f" [label={_quote(str(weights[(a, b)]))}]" if (a, b) in weights else ""
        lines.append(f"  {_quote(names[a])} -> {_quote(names[b])}{label};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot(obj, **kwargs) -> str:
    """DOT text for a SetValue, SetGraph or NeuralNet."""
    if isinstance(obj, SetValue):
        return dot_set(obj, **kwargs)
    if isinstance(obj, SetGraph):
        return dot_graph(obj, **kwargs)
    return dot_network(obj, **kwargs)
