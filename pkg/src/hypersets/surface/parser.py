"""Recursive-descent parsers for the set-equation DSL, operator expressions
and the sectioned network format.

System files::

    # comments run to end of line
    a = { b, {} };
    b = { a };
    point a;            # optional, defaults to the first equation

or a single value with local bindings, as printed by ``canon``::

    { {}, x1 } where x1 = {x1}

Operator expressions::

    op      := union
    union   := inter (("|" | "-") inter)*
    inter   := comp ("&" comp)*
    comp    := primary ("." primary)*          # "." is composition
    primary := E | I | B | R | T | D | C | Kdiag | K "[" set "]" | "(" op ")"
    set     := item ["where" NAME "=" brace (";" NAME "=" brace)* [";"]]
    item    := NAME | brace | op "(" set ")"
    brace   := "{" [set ("," set)*] "}"
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from ..decoration import decorate
from ..encodings import quine_atom
from ..errors import ParseError
from ..kernel import EMPTY, SetGraph, SetValue, canon, make_set
from ..neural import NeuralNet, NeuralState
from ..operators import KA, Atom, Compose, OpDiff, OperatorExpr, OpIntersect, OpUnion, apply

ATOMS = ("E", "I", "B", "R", "T", "D", "C", "Kdiag")
BUILTINS = {"omega": quine_atom, "empty": lambda: EMPTY}

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<punct>[{}()\[\],;=.|&-])"
)


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "punct" or "eof"
    text: str
    line: int
    col: int


def tokenize(text: str, source: str = "<input>") -> list[Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1, source)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind in ("ident", "punct"):
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


# --- syntax trees -----------------------------------------------------------


@dataclass(frozen=True)
class NameRef:
    name: str
    tok: Token


@dataclass(frozen=True)
class SetLit:
    items: tuple
    tok: Token


@dataclass(frozen=True)
class Apply:
    op: object  # operator syntax tree
    arg: object
    tok: Token


@dataclass(frozen=True)
class Where:
    body: object
    bindings: tuple  # of (name, SetLit, Token)
    tok: Token


@dataclass(frozen=True)
class OpAtom:
    symbol: str
    tok: Token


@dataclass(frozen=True)
class OpK:
    param: object
    tok: Token


@dataclass(frozen=True)
class OpBin:
    kind: type
    left: object
    right: object
    tok: Token


class _Parser:
    def __init__(self, text: str, source: str, operators: bool):
        self.source = source
        self.tokens = tokenize(text, source)
        self.i = 0
        self.operators = operators

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def error(self, message: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.col, self.source)

    def at(self, text: str) -> bool:
        return self.tok.kind != "eof" and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return self.advance()

    def advance(self) -> Token:
        tok = self.tok
        self.i += 1
        return tok

    def name(self) -> Token:
        if self.tok.kind != "ident":
            raise self.error(f"expected a name, found {self.tok.text or 'end of input'!r}")
        return self.advance()

    def starts_op(self) -> bool:
        if not self.operators:
            return False
        t = self.tok
        return (t.kind == "ident" and (t.text in ATOMS or t.text == "K")) or self.at("(")

    # set expressions

    def set_expr(self):
        start = self.tok
        body = self.item()
        if self.tok.kind == "ident" and self.tok.text == "where":
            self.advance()
            bindings = [self.binding()]
            while self.at(";"):
                self.advance()
                if self.tok.kind != "ident":
                    break
                bindings.append(self.binding())
            return Where(body, tuple(bindings), start)
        return body

    def binding(self):
        tok = self.name()
        self.expect("=")
        return tok.text, self.brace(), tok

    def item(self):
        if self.at("{"):
            return self.brace()
        if self.starts_op():
            tok = self.tok
            op = self.op_expr()
            self.expect("(")
            arg = self.set_expr()
            self.expect(")")
            return Apply(op, arg, tok)
        tok = self.name()
        return NameRef(tok.text, tok)

    def brace(self) -> SetLit:
        tok = self.expect("{")
        items = []
        if not self.at("}"):
            items.append(self.set_expr())
            while self.at(","):
                self.advance()
                items.append(self.set_expr())
        self.expect("}")
        return SetLit(tuple(items), tok)

    # operator expressions

    def op_expr(self):
        left = self.op_inter()
        while self.at("|") or self.at("-"):
            tok = self.advance()
            kind = OpUnion if tok.text == "|" else OpDiff
            left = OpBin(kind, left, self.op_inter(), tok)
        return left

    def op_inter(self):
        left = self.op_comp()
        while self.at("&"):
            tok = self.advance()
            left = OpBin(OpIntersect, left, self.op_comp(), tok)
        return left

    def op_comp(self):
        left = self.op_primary()
        while self.at("."):
            tok = self.advance()
            left = OpBin(Compose, left, self.op_primary(), tok)
        return left

    def op_primary(self):
        tok = self.tok
        if self.at("("):
            self.advance()
            inner = self.op_expr()
            self.expect(")")
            return inner
        if tok.kind == "ident" and tok.text == "K":
            self.advance()
            self.expect("[")
            param = self.set_expr()
            self.expect("]")
            return OpK(param, tok)
        if tok.kind == "ident" and tok.text in ATOMS:
            self.advance()
            return OpAtom(tok.text, tok)
        raise self.error(f"expected an operator, found {tok.text or 'end of input'!r}")

    def finish(self):
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r}")


# --- evaluation -------------------------------------------------------------


class _Evaluator:
    def __init__(self, env: dict[str, SetValue], source: str):
        self.env = env
        self.source = source

    def error(self, message: str, tok: Token) -> ParseError:
        return ParseError(message, tok.line, tok.col, self.source)

    def op(self, node) -> OperatorExpr:
        if isinstance(node, OpAtom):
            return Atom(node.symbol)
        if isinstance(node, OpK):
            return KA(self.value(node.param))
        return node.kind(self.op(node.left), self.op(node.right))

    def value(self, node) -> SetValue:
        if isinstance(node, NameRef):
            if node.name not in self.env:
                raise self.error(f"undefined name {node.name!r}", node.tok)
            return self.env[node.name]
        if isinstance(node, SetLit):
            return make_set(self.value(i) for i in node.items)
        if isinstance(node, Apply):
            return apply(self.op(node.op), self.value(node.arg))
        if isinstance(node, Where):
            local = _solve_bindings(node.bindings, self.env, self.source)
            return _Evaluator({**self.env, **local}, self.source).value(node.body)
        raise TypeError(node)


class _GraphBuilder:
    """Lay out pure set syntax (names and braces) as graph nodes."""

    def __init__(self, source: str, env: dict[str, SetValue] | None = None):
        self.source = source
        self.succ: list[list[int]] = []
        self.named: dict[str, int] = {}
        self.def_tok: dict[str, Token] = {}
        self.env = env or {}
        self.refs: list[tuple[int, NameRef]] = []
        self.spliced: dict[SetValue, int] = {}

    def new_node(self) -> int:
        self.succ.append([])
        return len(self.succ) - 1

    def define(self, name: str, tok: Token) -> int:
        if name in self.named:
            first = self.def_tok[name]
            raise ParseError(
                f"duplicate definition of {name!r} (first defined at {first.line}:{first.col})",
                tok.line, tok.col, self.source,
            )
        self.named[name] = self.new_node()
        self.def_tok[name] = tok
        return self.named[name]

    def fill(self, node: int, lit: SetLit) -> None:
        for item in lit.items:
            self.succ[node].append(self.item_node(item))

    def item_node(self, item) -> int:
        if isinstance(item, SetLit):
            n = self.new_node()
            self.fill(n, item)
            return n
        if isinstance(item, NameRef):
            n = self.new_node()  # placeholder, redirected once all names are known
            self.refs.append((n, item))
            return n
        raise ParseError("operator applications are not allowed here", item.tok.line, item.tok.col, self.source)

    def splice(self, v: SetValue) -> int:
        if v not in self.spliced:
            off = len(self.succ)
            self.succ.extend([off + c for c in cs] for cs in v.succ)
            self.spliced[v] = off
        return self.spliced[v]

    def resolve(self) -> list[int]:
        """Replace name placeholders by the named nodes; return the old→new map."""
        target = list(range(len(self.succ)))
        for n, ref in self.refs:
            if ref.name in self.named:
                target[n] = self.named[ref.name]
            elif ref.name in self.env:
                target[n] = self.splice(self.env[ref.name])
            else:
                raise ParseError(f"undefined name {ref.name!r}", ref.tok.line, ref.tok.col, self.source)
        target += list(range(len(target), len(self.succ)))
        placeholders = {n for n, _ in self.refs}
        keep = [i for i in range(len(self.succ)) if i not in placeholders]
        new_id = {old: k for k, old in enumerate(keep)}
        self.succ = [[new_id[target[c]] for c in self.succ[i]] for i in keep]
        self.named = {name: new_id[i] for name, i in self.named.items()}
        return [new_id[target[i]] for i in range(len(target))]


def _solve_bindings(bindings, env, source) -> dict[str, SetValue]:
    gb = _GraphBuilder(source, env)
    nodes = {}
    for name, lit, tok in bindings:
        nodes[name] = gb.define(name, tok)
    for name, lit, tok in bindings:
        gb.fill(nodes[name], lit)
    gb.resolve()
    deco = decorate(SetGraph.from_succ(gb.succ))
    return {name: deco[i] for name, i in gb.named.items()}


@dataclass
class SystemSpec:
    """A parsed system of set equations laid out as a graph.

    Named nodes come first, in definition order; anonymous brace literals
    follow.  ``point`` is the distinguished node."""

    graph: SetGraph
    names: list[str]
    point: int
    point_name: str | None = None

    def value(self) -> SetValue:
        return canon(self.graph, self.point)

    def decoration(self) -> dict[str, SetValue]:
        deco = decorate(self.graph)
        return {name: deco[i] for i, name in enumerate(self.names)}


def parse_system(text: str, source: str = "<input>") -> SystemSpec:
    p = _Parser(text, source, operators=False)
    equation_form = p.tok.kind == "ident" and (p.peek().text == "=" or p.tok.text == "point")
    if not equation_form:
        return _parse_value_form(p)

    gb = _GraphBuilder(source)
    equations = []
    point_tok = None
    while p.tok.kind != "eof":
        if p.tok.text == "point" and p.peek().kind == "ident":
            p.advance()
            if point_tok is not None:
                raise p.error("point declared twice")
            point_tok = p.name()
            p.expect(";")
            continue
        tok = p.name()
        p.expect("=")
        lit = p.brace()
        p.expect(";")
        equations.append((tok, lit))
        gb.define(tok.text, tok)
    if not equations:
        raise p.error("empty system")
    # named nodes occupy ids 0..k-1, so literals are allocated afterwards
    for tok, lit in equations:
        gb.fill(gb.named[tok.text], lit)
    gb.resolve()
    point_name = point_tok.text if point_tok else equations[0][0].text
    if point_name not in gb.named:
        raise ParseError(f"undefined name {point_name!r}", point_tok.line, point_tok.col, source)
    names = [tok.text for tok, _ in equations]
    return SystemSpec(SetGraph.from_succ(gb.succ), names, gb.named[point_name], point_name)


def _parse_value_form(p: _Parser) -> SystemSpec:
    node = p.set_expr()
    p.finish()
    gb = _GraphBuilder(p.source)
    bindings = node.bindings if isinstance(node, Where) else ()
    body = node.body if isinstance(node, Where) else node
    for name, lit, tok in bindings:
        gb.define(name, tok)
    for name, lit, tok in bindings:
        gb.fill(gb.named[name], lit)
    root = gb.item_node(body)
    remap = gb.resolve()
    names = list(gb.named)
    point_name = body.name if isinstance(body, NameRef) else None
    return SystemSpec(SetGraph.from_succ(gb.succ), names, remap[root], point_name)


@dataclass(frozen=True)
class Applied:
    """An operator applied to an already evaluated argument."""

    op: OperatorExpr
    arg: SetValue

    def value(self) -> SetValue:
        return apply(self.op, self.arg)


def _flatten(node):
    """Apply(O1, Apply(O2, s)) becomes Apply(O1 . O2, s)."""
    if isinstance(node, Apply) and isinstance(node.arg, Apply):
        inner = _flatten(node.arg)
        return Apply(OpBin(Compose, node.op, inner.op, node.tok), inner.arg, node.tok)
    return node


def default_env(extra: dict[str, SetValue] | None = None) -> dict[str, SetValue]:
    env = {name: make() for name, make in BUILTINS.items()}
    env.update(extra or {})
    return env


def parse_opexpr(text: str, env: dict[str, SetValue] | None = None, source: str = "<input>"):
    """Parse an operator expression or a set term.

    Returns an :class:`OperatorExpr` for a bare operator, an :class:`Applied`
    when the text applies an operator to a set (nested applications are
    folded into one composition), or a :class:`SetValue` for a plain set.
    Names resolve against ``env`` plus the builtins ``omega`` and ``empty``.
    """
    p = _Parser(text, source, operators=True)
    starts_with_op = p.starts_op()
    if starts_with_op:
        op_node = p.op_expr()
        if not p.at("("):
            p.finish()
            return _Evaluator(default_env(env), source).op(op_node)
        p.i = 0
    node = p.set_expr()
    p.finish()
    ev = _Evaluator(default_env(env), source)
    body = node.body if isinstance(node, Where) else node
    if isinstance(body, Apply):
        if isinstance(node, Where):
            ev = _Evaluator({**ev.env, **_solve_bindings(node.bindings, ev.env, source)}, source)
        flat = _flatten(body)
        return Applied(ev.op(flat.op), ev.value(flat.arg))
    return ev.value(node)


def evaluate(text: str, env: dict[str, SetValue] | None = None, source: str = "<input>") -> SetValue:
    term = parse_opexpr(text, env, source)
    if isinstance(term, Applied):
        return term.value()
    if isinstance(term, SetValue):
        return term
    raise TypeError("expression is an operator; apply it to a set, e.g. R({})")


def parse_set(text: str, env: dict[str, SetValue] | None = None, source: str = "<input>") -> SetValue:
    return evaluate(text, env, source)


# --- network files ------------------------------------------------------------

_SECTIONS = ("neurons", "synapses", "voltages", "params", "point")
_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


@dataclass
class NetworkSpec:
    names: list[str]
    synapses: list[tuple[str, str, Fraction]]
    voltages: dict[str, int]
    alpha: Fraction
    theta: Fraction
    point: str
    index: dict[str, int] = field(init=False)

    def __post_init__(self):
        self.index = {n: i for i, n in enumerate(self.names)}

    def net(self) -> NeuralNet:
        g = SetGraph(len(self.names), frozenset((self.index[a], self.index[b]) for a, b, _ in self.synapses))
        return NeuralNet(g, self.alpha, self.theta, self.index[self.point], tuple(self.names))

    def state(self) -> NeuralState:
        weights = {(self.index[a], self.index[b]): w for a, b, w in self.synapses}
        return NeuralState(weights, tuple(self.voltages.get(n, 0) for n in self.names), 0)


def parse_rational(text: str, line: int = 1, col: int = 1, source: str = "<input>") -> Fraction:
    if not _RATIONAL.match(text):
        raise ParseError(f"malformed rational {text!r} (expected an integer or m/n)", line, col, source)
    if "/" in text and int(text.split("/")[1]) == 0:
        raise ParseError(f"malformed rational {text!r}: zero denominator", line, col, source)
    return Fraction(text)


def parse_network(text: str, source: str = "<input>") -> NetworkSpec:
    """Parse the sectioned network format::

        neurons: a b c
        synapses:
          a -> b : 1/2
        voltages:
          b = 1
        params:
          alpha = 1/2
          theta = 0
        point: a

    Items may follow a header on the same line and be separated by commas or
    newlines.  Unlisted voltages are 0; ``point`` defaults to the first neuron.
    """
    section = None
    names: list[str] = []
    synapses: list[tuple[str, str, Fraction]] = []
    seen_edges: dict[tuple[str, str], int] = {}
    voltages: dict[str, int] = {}
    params: dict[str, Fraction] = {}
    point: tuple[str, int, int] | None = None
    later_checks: list[tuple[str, int, int]] = []  # neuron references

    def err(msg: str, line: int, col: int) -> ParseError:
        return ParseError(msg, line, col, source)

    for lineno, raw in enumerate(text.splitlines(), 1):
        content = raw.split("#", 1)[0]
        m = re.match(r"^\s*([A-Za-z]+)\s*:(?!\s*[-+]?\d)(.*)$", content)
        offset = 0
        if m and m.group(1) in _SECTIONS:
            section = m.group(1)
            offset = m.start(2)
            content = m.group(2)
        elif m and "->" not in content:
            raise err(f"unknown section {m.group(1)!r}", lineno, m.start(1) + 1)
        for piece in re.finditer(r"[^,]+", content):
            item = piece.group().strip()
            if not item:
                continue
            col = offset + piece.start() + (len(piece.group()) - len(piece.group().lstrip())) + 1
            if section is None:
                raise err("expected a section header (neurons:, synapses:, voltages:, params:, point:)", lineno, col)
            if section == "neurons":
                for w in re.finditer(r"\S+", item):
                    name = w.group()
                    if not re.match(r"^[A-Za-z_][A-Za-z0-9_]*$", name):
                        raise err(f"invalid neuron name {name!r}", lineno, col + w.start())
                    if name in names:
                        raise err(f"duplicate neuron {name!r}", lineno, col + w.start())
                    names.append(name)
            elif section == "synapses":
                sm = re.match(r"^(\w+)\s*->\s*(\w+)\s*[:=]?\s*(\S+)$", item)
                if not sm:
                    raise err("expected 'source -> target : weight'", lineno, col)
                a, b, w = sm.groups()
                if (a, b) in seen_edges:
                    raise err(f"duplicate synapse {a} -> {b} (at most one per ordered pair)", lineno, col)
                seen_edges[(a, b)] = lineno
                later_checks += [(a, lineno, col + sm.start(1)), (b, lineno, col + sm.start(2))]
                synapses.append((a, b, parse_rational(w, lineno, col + sm.start(3), source)))
            elif section == "voltages":
                vm = re.match(r"^(\w+)\s*=\s*(\S+)$", item)
                if not vm:
                    raise err("expected 'neuron = 0' or 'neuron = 1'", lineno, col)
                if vm.group(2) not in ("0", "1"):
                    raise err(f"voltage must be 0 or 1, got {vm.group(2)!r}", lineno, col + vm.start(2))
                later_checks.append((vm.group(1), lineno, col))
                voltages[vm.group(1)] = int(vm.group(2))
            elif section == "params":
                pm = re.match(r"^(\w+)\s*=\s*(\S+)$", item)
                if not pm or pm.group(1) not in ("alpha", "theta"):
                    raise err("expected 'alpha = m/n' or 'theta = m/n'", lineno, col)
                params[pm.group(1)] = parse_rational(pm.group(2), lineno, col + pm.start(2), source)
            elif section == "point":
                if point is not None or " " in item:
                    raise err("point takes exactly one neuron name", lineno, col)
                point = (item, lineno, col)
                later_checks.append(point)

    last = len(text.splitlines()) or 1
    if not names:
        raise err("no neurons declared", last, 1)
    for name, line, col in later_checks:
        if name not in names:
            raise err(f"undefined neuron {name!r}", line, col)
    for key in ("alpha", "theta"):
        if key not in params:
            raise err(f"missing parameter {key!r} in params section", last, 1)
    return NetworkSpec(names, synapses, voltages, params["alpha"], params["theta"],
                       point[0] if point else names[0])


def parse_graph(text: str, source: str = "<input>") -> SystemSpec:
    """Edge-list graph files: one ``a -> b, c`` (or bare ``a``) per line.

    Nodes are numbered by first appearance; the first node is the point."""
    names: dict[str, int] = {}
    edges: set[tuple[int, int]] = set()

    def node(name: str, line: int, col: int) -> int:
        if not re.match(r"^[A-Za-z_][A-Za-z0-9_]*$", name):
            raise ParseError(f"invalid node name {name!r}", line, col, source)
        return names.setdefault(name, len(names))

    for lineno, raw in enumerate(text.splitlines(), 1):
        content = raw.split("#", 1)[0]
        if not content.strip():
            continue
        head, arrow, tail = content.partition("->")
        col = len(head) - len(head.lstrip()) + 1
        a = node(head.strip(), lineno, col)
        if arrow:
            targets = [t for t in re.finditer(r"[^,]+", tail)]
            if not any(t.group().strip() for t in targets):
                raise ParseError("expected a target after '->'", lineno, len(head) + 3, source)
            for t in targets:
                name = t.group().strip()
                if not name:
                    raise ParseError("empty target", lineno, len(head) + 3 + t.start(), source)
                edges.add((a, node(name, lineno, len(head) + 3 + t.start())))
    if not names:
        raise ParseError("empty graph", 1, 1, source)
    return SystemSpec(SetGraph(len(names), frozenset(edges)), list(names), 0, next(iter(names)))
