"""Instance types for the colored-walk problem family.

Vertices and NFA states are dense integers ``0..n-1``; colors and symbols
are ``1..C``.  Every type is a frozen dataclass whose sequence fields are
tuples, so instances compare structurally and can be shared freely.

Constructors do not validate: ``validate_instance`` returns the list of
violated invariants, and the parser raises ``ValidationError`` when that
list is nonempty.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

NODE = "node"
EDGE = "edge"


class ParseError(ValueError):
    """Malformed instance text."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ValidationError(ValueError):
    def __init__(self, violations: Sequence[str]):
        super().__init__("; ".join(violations))
        self.violations = list(violations)


class PreconditionError(ValueError):
    """Input is outside the domain an operation accepts."""


def _tup(xs):
    return tuple(tuple(x) if isinstance(x, (list, tuple)) else x for x in xs)


@dataclass(frozen=True)
class ColoredGraph:
    directed: bool
    n: int
    edges: tuple
    coloring: str
    C: int
    colors: tuple

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(u), int(v)) for u, v in self.edges))
        object.__setattr__(self, "colors", tuple(int(c) for c in self.colors))

    @classmethod
    def build(cls, directed, n, edges, coloring, C, colors):
        """Canonical form: undirected edges as (min, max), edges sorted.

        For edge coloring ``colors`` is aligned with ``edges`` and is
        permuted along with them.
        """
        edges = [(int(u), int(v)) for u, v in edges]
        if not directed:
            edges = [(min(u, v), max(u, v)) for u, v in edges]
        if coloring == EDGE:
            pairs = sorted(zip(edges, colors))
            edges = [e for e, _ in pairs]
            colors = [c for _, c in pairs]
        else:
            edges = sorted(edges)
        return cls(bool(directed), int(n), tuple(edges), coloring, int(C), tuple(colors))

    @property
    def m(self) -> int:
        return len(self.edges)

    def arcs(self):
        """Yield ``(u, v, color)`` for every traversable direction.

        For node coloring the color of an arc is the color of its head,
        which is the color a walk observes when taking it.
        """
        for i, (u, v) in enumerate(self.edges):
            if self.coloring == EDGE:
                cu = cv = self.colors[i]
            else:
                cv, cu = self.colors[v], self.colors[u]
            yield u, v, cv
            if not self.directed:
                yield v, u, cu

    def edge_color(self, u, v):
        if self.coloring != EDGE:
            raise PreconditionError("graph is node-colored")
        key = (u, v) if self.directed else (min(u, v), max(u, v))
        return self.colors[self.edges.index(key)]


@dataclass(frozen=True)
class WalkInstance:
    graph: ColoredGraph
    s: int
    t: int
    seq: tuple

    def __post_init__(self):
        object.__setattr__(self, "seq", tuple(int(c) for c in self.seq))

    @property
    def l(self) -> int:
        return len(self.seq)


@dataclass(frozen=True)
class AnyWalkInstance:
    graph: ColoredGraph
    seq: tuple

    def __post_init__(self):
        object.__setattr__(self, "seq", tuple(int(c) for c in self.seq))

    @property
    def l(self) -> int:
        return len(self.seq)


@dataclass(frozen=True)
class Nfa:
    n_states: int
    sigma: int
    transitions: frozenset
    q0: int
    accept: frozenset

    def __post_init__(self):
        object.__setattr__(self, "transitions", frozenset(tuple(map(int, t)) for t in self.transitions))
        object.__setattr__(self, "accept", frozenset(int(q) for q in self.accept))


@dataclass(frozen=True)
class NfaInstance:
    nfa: Nfa
    word: tuple

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(int(a) for a in self.word))


@dataclass(frozen=True)
class Grammar:
    """Grammar in the normal form the CFL solver consumes.

    ``unary`` holds rules ``X -> a`` (nonterminal, terminal) and ``binary``
    holds rules ``X -> Y Z``.  Nonterminals are referred to by name.
    """

    nonterminals: tuple
    n_terminals: int
    unary: frozenset
    binary: frozenset
    start: str

    def __post_init__(self):
        object.__setattr__(self, "nonterminals", tuple(self.nonterminals))
        object.__setattr__(self, "unary", frozenset((x, int(a)) for x, a in self.unary))
        object.__setattr__(self, "binary", frozenset(tuple(r) for r in self.binary))

    @classmethod
    def dyck2(cls) -> "Grammar":
        # terminals: (1 -> 1, )1 -> 2, (2 -> 3, )2 -> 4
        # S -> SS | (i S )i | (i )i, with Oi -> (i, Ki -> )i, Ti -> S Ki
        return cls(
            nonterminals=("S", "O1", "K1", "T1", "O2", "K2", "T2"),
            n_terminals=4,
            unary={("O1", 1), ("K1", 2), ("O2", 3), ("K2", 4)},
            binary={
                ("S", "S", "S"),
                ("S", "O1", "T1"), ("T1", "S", "K1"), ("S", "O1", "K1"),
                ("S", "O2", "T2"), ("T2", "S", "K2"), ("S", "O2", "K2"),
            },
            start="S",
        )


def open_paren(c: int) -> int:
    return 2 * c - 1


def close_paren(c: int) -> int:
    return 2 * c


@dataclass(frozen=True)
class CflInstance:
    graph: ColoredGraph
    s: int
    t: int
    grammar: Grammar = field(default_factory=Grammar.dyck2)


@dataclass(frozen=True)
class WordBreakInstance:
    text: tuple
    dictionary: frozenset

    def __post_init__(self):
        object.__setattr__(self, "text", tuple(int(a) for a in self.text))
        object.__setattr__(self, "dictionary", frozenset(tuple(int(a) for a in w) for w in self.dictionary))

    @property
    def N(self) -> int:
        return len(self.text)

    @property
    def M(self) -> int:
        return sum(len(w) for w in self.dictionary)


@dataclass(frozen=True)
class OmvInstance:
    matrix: tuple
    rounds: tuple

    def __post_init__(self):
        object.__setattr__(self, "matrix", tuple(tuple(int(b) for b in row) for row in self.matrix))
        object.__setattr__(self, "rounds", tuple(tuple(int(b) for b in r) for r in self.rounds))

    @property
    def N(self) -> int:
        return len(self.matrix)


@dataclass(frozen=True)
class OvInstance:
    A: tuple
    B: tuple
    d: int

    def __post_init__(self):
        object.__setattr__(self, "A", tuple(tuple(int(b) for b in a) for a in self.A))
        object.__setattr__(self, "B", tuple(tuple(int(b) for b in b_) for b_ in self.B))


@dataclass(frozen=True)
class CliqueInstance:
    n: int
    edges: tuple
    k: int

    def __post_init__(self):
        edges = sorted({(min(u, v), max(u, v)) for u, v in self.edges})
        object.__setattr__(self, "edges", tuple(edges))

    def adjacency(self):
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj


KINDS = {
    "walk": WalkInstance,
    "anywalk": AnyWalkInstance,
    "nfa": NfaInstance,
    "cfl": CflInstance,
    "wordbreak": WordBreakInstance,
    "omv": OmvInstance,
    "ov": OvInstance,
    "clique": CliqueInstance,
}


def kind_of(inst) -> str:
    for name, cls in KINDS.items():
        if isinstance(inst, cls):
            return name
    raise TypeError(f"not an instance type: {type(inst).__name__}")


def params(inst) -> dict:
    """Size parameters of an instance, keyed by their conventional names."""
    if isinstance(inst, (WalkInstance, AnyWalkInstance)):
        return {"n": inst.graph.n, "m": inst.graph.m, "l": inst.l}
    if isinstance(inst, NfaInstance):
        return {"n": inst.nfa.n_states, "m": len(inst.nfa.transitions), "l": len(inst.word)}
    if isinstance(inst, CflInstance):
        return {"n": inst.graph.n, "m": inst.graph.m}
    if isinstance(inst, WordBreakInstance):
        return {"N": inst.N, "M": inst.M}
    if isinstance(inst, OmvInstance):
        return {"N": inst.N, "rounds": len(inst.rounds)}
    if isinstance(inst, OvInstance):
        return {"nA": len(inst.A), "nB": len(inst.B), "d": inst.d}
    if isinstance(inst, CliqueInstance):
        return {"n": inst.n, "m": len(inst.edges), "k": inst.k}
    raise TypeError(f"not an instance type: {type(inst).__name__}")


# -- validation ---------------------------------------------------------------

def _validate_graph(g: ColoredGraph, out: list, allow_loops=False):
    if g.n < 1:
        out.append(f"n: must be >= 1, got {g.n}")
    if g.C < 1:
        out.append(f"C: must be >= 1, got {g.C}")
    if g.coloring not in (NODE, EDGE):
        out.append(f"coloring_mode: unknown '{g.coloring}'")
        return
    seen = set()
    for i, (u, v) in enumerate(g.edges):
        if not (0 <= u < g.n and 0 <= v < g.n):
            out.append(f"edges[{i}]: endpoint out of range ({u},{v})")
        if u == v and not allow_loops:
            out.append(f"edges[{i}]: loop ({u},{v})")
        if not g.directed and u > v:
            out.append(f"edges[{i}]: undirected edge not stored as u<v ({u},{v})")
        key = (u, v) if g.directed else (min(u, v), max(u, v))
        if key in seen:
            out.append(f"edges: duplicate ({u},{v})")
        seen.add(key)
    expected = g.m if g.coloring == EDGE else g.n
    if len(g.colors) != expected:
        out.append(f"colors: expected {expected} entries, got {len(g.colors)}")
    for i, c in enumerate(g.colors):
        _check_color(f"colors[{i}]", c, g.C, out)


def _check_color(where, c, C, out):
    if c < 1:
        out.append(f"{where}: color out of range ({c} < 1)")
    elif c > C:
        out.append(f"{where}: color {c} > C={C}")


def _check_vertex(where, v, n, out):
    if not 0 <= v < n:
        out.append(f"{where}: vertex {v} out of range [0,{n})")


def validate_instance(inst) -> list:
    """Return a list of human-readable invariant violations (empty if valid)."""
    out: list = []
    if isinstance(inst, (WalkInstance, AnyWalkInstance, CflInstance)):
        _validate_graph(inst.graph, out)
        if not isinstance(inst, AnyWalkInstance):
            _check_vertex("s", inst.s, inst.graph.n, out)
            _check_vertex("t", inst.t, inst.graph.n, out)
        if isinstance(inst, CflInstance):
            if not inst.graph.directed or inst.graph.coloring != EDGE:
                out.append("graph: CFL instances need a directed edge-colored graph")
            if inst.graph.C > inst.grammar.n_terminals:
                out.append(f"graph: C={inst.graph.C} exceeds terminal count {inst.grammar.n_terminals}")
            _validate_grammar(inst.grammar, out)
        else:
            for i, c in enumerate(inst.seq):
                _check_color(f"seq[{i}]", c, inst.graph.C, out)
    elif isinstance(inst, NfaInstance):
        a = inst.nfa
        if a.n_states < 1:
            out.append(f"n_states: must be >= 1, got {a.n_states}")
        if a.sigma < 1:
            out.append(f"sigma: must be >= 1, got {a.sigma}")
        _check_vertex("q0", a.q0, a.n_states, out)
        for q in sorted(a.accept):
            _check_vertex("accept", q, a.n_states, out)
        for tr in sorted(a.transitions):
            q, x, r = tr
            if not (0 <= q < a.n_states and 0 <= r < a.n_states):
                out.append(f"transitions: state out of range {tr}")
            if not 1 <= x <= a.sigma:
                out.append(f"transitions: symbol {x} out of range [1,{a.sigma}] in {tr}")
        for i, x in enumerate(inst.word):
            if not 1 <= x <= a.sigma:
                out.append(f"word[{i}]: symbol {x} out of range [1,{a.sigma}]")
    elif isinstance(inst, WordBreakInstance):
        for i, x in enumerate(inst.text):
            if x not in (0, 1, 2):
                out.append(f"text[{i}]: symbol {x} not in {{0,1,2}}")
        for w in sorted(inst.dictionary):
            if not w:
                out.append("dictionary: empty word")
            if any(x not in (0, 1, 2) for x in w):
                out.append(f"dictionary: word {''.join(map(str, w))} uses symbols outside {{0,1,2}}")
    elif isinstance(inst, OmvInstance):
        N = inst.N
        for i, row in enumerate(inst.matrix):
            if len(row) != N:
                out.append(f"matrix[{i}]: length {len(row)} != N={N}")
        for i, r in enumerate(inst.rounds):
            if len(r) != N:
                out.append(f"rounds[{i}]: length {len(r)} != N={N}")
        if len(inst.rounds) > N:
            out.append(f"rounds: {len(inst.rounds)} rounds exceed N={N}")
        for i, row in enumerate(inst.matrix + inst.rounds):
            if any(b not in (0, 1) for b in row):
                out.append(f"row {i}: non-boolean entry")
    elif isinstance(inst, OvInstance):
        if inst.d < 1:
            out.append(f"d: must be >= 1, got {inst.d}")
        for name, vecs in (("A", inst.A), ("B", inst.B)):
            for i, a in enumerate(vecs):
                if len(a) != inst.d:
                    out.append(f"{name}[{i}]: dimension {len(a)} != d={inst.d}")
                if any(b not in (0, 1) for b in a):
                    out.append(f"{name}[{i}]: non-boolean entry")
    elif isinstance(inst, CliqueInstance):
        if inst.n < 1:
            out.append(f"n: must be >= 1, got {inst.n}")
        if inst.k < 1:
            out.append(f"k: must be >= 1, got {inst.k}")
        for i, (u, v) in enumerate(inst.edges):
            if not (0 <= u < inst.n and 0 <= v < inst.n):
                out.append(f"edges[{i}]: endpoint out of range ({u},{v})")
            if u == v:
                out.append(f"edges[{i}]: loop ({u},{v})")
    else:
        raise TypeError(f"not an instance type: {type(inst).__name__}")
    return out


def _validate_grammar(g: Grammar, out: list):
    names = set(g.nonterminals)
    if g.start not in names:
        out.append(f"grammar: start symbol {g.start} undeclared")
    for x, a in sorted(g.unary):
        if x not in names:
            out.append(f"grammar: unary rule head {x} undeclared")
        if not 1 <= a <= g.n_terminals:
            out.append(f"grammar: terminal {a} out of range")
    for rule in sorted(g.binary):
        if any(y not in names for y in rule):
            out.append(f"grammar: binary rule {rule} references undeclared nonterminal")


def check(inst):
    """Raise ``ValidationError`` unless ``inst`` satisfies its invariants."""
    violations = validate_instance(inst)
    if violations:
        raise ValidationError(violations)
    return inst
