"""Executable reductions between the colored-walk problems and their relatives.

Every reduction returns a ``ReductionReport``.  ``params_out`` is measured
from the produced instance; ``bounds`` are the sizes the construction
promises, evaluated from the input alone, so ``report.violations()`` is a
real check of the parameter accounting.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import solvers
from .core import (
    EDGE, NODE, AnyWalkInstance, CflInstance, CliqueInstance, ColoredGraph,
    Grammar, Nfa, NfaInstance, OmvInstance, OvInstance, PreconditionError,
    WalkInstance, WordBreakInstance, close_paren, open_paren, params,
)
from .oracles import list_cliques


@dataclass(frozen=True)
class Bound:
    param: str
    op: str
    value: int
    expr: str

    def holds(self, actual) -> bool:
        if self.op == "==":
            return actual == self.value
        if self.op == "<=":
            return actual <= self.value
        raise ValueError(f"unknown relation {self.op!r}")


@dataclass(frozen=True)
class ReductionReport:
    name: str
    output: object
    params_in: dict
    params_out: dict
    bounds: tuple
    extras: dict = field(default_factory=dict, compare=False)

    @property
    def bound_expr(self) -> str:
        return ";".join(b.expr for b in self.bounds)

    def violations(self) -> list:
        out = []
        for b in self.bounds:
            actual = self.params_out.get(b.param)
            if actual is None:
                out.append(f"{b.param}: not measured in output")
            elif not b.holds(actual):
                out.append(f"{b.param}: {actual} violates {b.expr} (= {b.value})")
        return out


def _report(name, inp, out, bounds, **extras):
    return ReductionReport(name, out, params(inp), params(out), tuple(bounds), extras)


def _eq(param, value, expr):
    return Bound(param, "==", int(value), expr)


def _require(cond, msg):
    if not cond:
        raise PreconditionError(msg)


def _is(inst, directed=None, coloring=None, C=None):
    g = inst.graph
    return ((directed is None or g.directed == directed)
            and (coloring is None or g.coloring == coloring)
            and (C is None or g.C == C))


# -- gadget vertex layout ----------------------------------------------------------

GADGET_PARTS = ("in", 1, 2, 3, 4, "out")


def gadget_vertex(v: int, part) -> int:
    """Index of v_in, v^(1..4), v_out in the undirected gadget graphs: 6v .. 6v+5."""
    return 6 * v + GADGET_PARTS.index(part)


def gadget_path(v: int):
    return tuple(6 * v + i for i in range(6))


def bit_vertex(v: int, i: int, B: int) -> int:
    """Index of (v, i), 1 <= i <= B, in the binary-expanded graph."""
    return v * B + (i - 1)


# -- walk variants ------------------------------------------------------------------

def red_dirnode2_to_diredge2(inst: WalkInstance) -> ReductionReport:
    _require(_is(inst, True, NODE, 2), "needs a directed node-colored instance with C=2")
    g = inst.graph
    colors = [g.colors[v] for _, v in g.edges]
    out = WalkInstance(ColoredGraph.build(True, g.n, g.edges, EDGE, 2, colors), inst.s, inst.t, inst.seq)
    n, m, l = g.n, g.m, inst.l
    return _report("red_dirnode2_to_diredge2", inst, out,
                   [_eq("n", n, "n'=n"), _eq("m", m, "m'=m"), _eq("l", l, "l'=l")])


def red_diredgeC_to_nfa(inst: WalkInstance) -> ReductionReport:
    _require(_is(inst, True, EDGE), "needs a directed edge-colored instance")
    g = inst.graph
    trans = {(u, c, v) for (u, v), c in zip(g.edges, g.colors)}
    out = NfaInstance(Nfa(g.n, g.C, trans, inst.s, {inst.t}), inst.seq)
    return _report("red_diredgeC_to_nfa", inst, out,
                   [_eq("n", g.n, "n'=n"), _eq("m", g.m, "m'=m"), _eq("l", inst.l, "l'=l")])


def red_nfa_to_dirnodeC(nfa, word=None) -> ReductionReport:
    """NFA acceptance -> directed node-colored walk with C = |alphabet|.

    Three stages: states are doubled into copies (q, 1), (q, 2) with every
    transition crossing between copies, which removes loops; a fresh
    accepting state f0 is entered from every old accepting state on symbol 1
    and symbol 1 is appended to the word; finally the graph on
    states x symbols is built, where vertex (q, a) has color a.
    """
    inp = nfa if isinstance(nfa, NfaInstance) else NfaInstance(nfa, word)
    nfa, word = inp.nfa, inp.word
    sig = nfa.sigma
    _require(sig >= 1, "empty alphabet")
    n = nfa.n_states
    pad_symbol = 1
    start_color = 1

    # stage (a): (q, copy) -> 2q + copy
    trans = set()
    for q, a, r in nfa.transitions:
        trans.add((2 * q, a, 2 * r + 1))
        trans.add((2 * q + 1, a, 2 * r))
    # stage (b)
    f0 = 2 * n
    for f in nfa.accept:
        trans.add((2 * f, pad_symbol, f0))
        trans.add((2 * f + 1, pad_symbol, f0))
    word2 = tuple(word) + (pad_symbol,)
    q0 = 2 * nfa.q0
    n_hat = 2 * n + 1

    # stage (c): vertex (p, a) -> p * sig + (a - 1)
    def vtx(p, a):
        return p * sig + (a - 1)

    edges = [(vtx(p, a), vtx(r, b)) for p, b, r in trans for a in range(1, sig + 1)]
    colors = [a for _ in range(n_hat) for a in range(1, sig + 1)]
    g = ColoredGraph.build(True, n_hat * sig, edges, NODE, sig, colors)
    out = WalkInstance(g, vtx(q0, start_color), vtx(f0, word2[-1]), word2)
    m, F, l = len(nfa.transitions), len(nfa.accept), len(word)
    return _report("red_nfa_to_dirnodeC", inp, out, [
        _eq("n", (2 * n + 1) * sig, "n'=(2n+1)*sigma"),
        _eq("m", 2 * (m + F) * sig, "m'=2(m+|F|)*sigma"),
        _eq("l", l + 1, "l'=l+1"),
    ], sigma=sig)


def _bits_msb(x: int, B: int):
    return [(x >> (B - i)) & 1 for i in range(1, B + 1)]


def red_dirnodeN_to_dirnode2(inst: WalkInstance) -> ReductionReport:
    """Each vertex becomes a path of B = ceil(log2 C) vertices spelling its color in binary.

    Color c is written as the B-bit binary form of c - 1 (most significant
    bit first), each bit b shown as color b + 1.
    """
    _require(_is(inst, True, NODE), "needs a directed node-colored instance")
    g = inst.graph
    _require(g.C >= 2, "C must be >= 2")
    B = (g.C - 1).bit_length()
    edges = [(bit_vertex(u, B, B), bit_vertex(v, 1, B)) for u, v in g.edges]
    edges += [(bit_vertex(v, i, B), bit_vertex(v, i + 1, B)) for v in range(g.n) for i in range(1, B)]
    colors = [0] * (g.n * B)
    for v in range(g.n):
        for i, b in enumerate(_bits_msb(g.colors[v] - 1, B), start=1):
            colors[bit_vertex(v, i, B)] = b + 1
    seq = [b + 1 for c in inst.seq for b in _bits_msb(c - 1, B)]
    out = WalkInstance(ColoredGraph.build(True, g.n * B, edges, NODE, 2, colors),
                       bit_vertex(inst.s, B, B), bit_vertex(inst.t, B, B), seq)
    n, m, l = g.n, g.m, inst.l
    return _report("red_dirnodeN_to_dirnode2", inst, out, [
        _eq("n", n * B, "n'=nB"), _eq("m", m + n * (B - 1), "m'=m+n(B-1)"), _eq("l", l * B, "l'=lB"),
    ], B=B)


EDGE_GADGET = lambda c: (2, c, c, 1, 2)  # noqa: E731
NODE_GADGET = lambda c: (2, c, 2, 2, 1)  # noqa: E731


def _gadget_skeleton(g):
    links = [(gadget_vertex(u, "out"), gadget_vertex(v, "in")) for u, v in g.edges]
    paths = [(6 * v + i, 6 * v + i + 1) for v in range(g.n) for i in range(5)]
    return links, paths


def red_dirnode2_to_undiredge2(inst: WalkInstance) -> ReductionReport:
    _require(_is(inst, True, NODE, 2), "needs a directed node-colored instance with C=2")
    g = inst.graph
    links, paths = _gadget_skeleton(g)
    colors = [1] * len(links) + [c for v in range(g.n) for c in EDGE_GADGET(g.colors[v])]
    seq = [x for c in inst.seq for x in (1,) + EDGE_GADGET(c)]
    out = WalkInstance(ColoredGraph.build(False, 6 * g.n, links + paths, EDGE, 2, colors),
                       gadget_vertex(inst.s, "out"), gadget_vertex(inst.t, "out"), seq)
    n, m, l = g.n, g.m, inst.l
    return _report("red_dirnode2_to_undiredge2", inst, out, [
        _eq("n", 6 * n, "n'=6n"), _eq("m", m + 5 * n, "m'=m+5n"), _eq("l", 6 * l, "l'=6l"),
    ])


def red_dirnode2_to_undirnode2(inst: WalkInstance) -> ReductionReport:
    _require(_is(inst, True, NODE, 2), "needs a directed node-colored instance with C=2")
    g = inst.graph
    links, paths = _gadget_skeleton(g)
    colors = []
    for v in range(g.n):
        colors += [1, 2, g.colors[v], 2, 2, 1]
    seq = [x for c in inst.seq for x in (1,) + NODE_GADGET(c)]
    out = WalkInstance(ColoredGraph.build(False, 6 * g.n, links + paths, NODE, 2, colors),
                       gadget_vertex(inst.s, "out"), gadget_vertex(inst.t, "out"), seq)
    n, m, l = g.n, g.m, inst.l
    return _report("red_dirnode2_to_undirnode2", inst, out, [
        _eq("n", 6 * n, "n'=6n"), _eq("m", m + 5 * n, "m'=m+5n"), _eq("l", 6 * l, "l'=6l"),
    ])


def red_undirected_to_directed(inst: WalkInstance) -> ReductionReport:
    _require(_is(inst, False), "needs an undirected instance")
    g = inst.graph
    edges = [(u, v) for u, v in g.edges] + [(v, u) for u, v in g.edges]
    colors = list(g.colors) * 2 if g.coloring == EDGE else list(g.colors)
    out = WalkInstance(ColoredGraph.build(True, g.n, edges, g.coloring, g.C, colors), inst.s, inst.t, inst.seq)
    return _report("red_undirected_to_directed", inst, out, [
        _eq("n", g.n, "n'=n"), _eq("m", 2 * g.m, "m'=2m"), _eq("l", inst.l, "l'=l"),
    ])


def red_walk_to_anywalk(inst: WalkInstance) -> ReductionReport:
    """Attach s' -- s with fresh color C+1 and t -- t' with fresh color C+2.

    For the Edge-2 case these are the colors 3 and 4.
    """
    _require(_is(inst, coloring=EDGE), "needs an edge-colored instance")
    g = inst.graph
    a, b = g.C + 1, g.C + 2
    s2, t2 = g.n, g.n + 1
    edges = list(g.edges) + [(s2, inst.s), (inst.t, t2)]
    colors = list(g.colors) + [a, b]
    out = AnyWalkInstance(ColoredGraph.build(g.directed, g.n + 2, edges, EDGE, g.C + 2, colors),
                          (a,) + inst.seq + (b,))
    n, m, l = g.n, g.m, inst.l
    return _report("red_walk_to_anywalk", inst, out, [
        _eq("n", n + 2, "n'=n+2"), _eq("m", m + 2, "m'=m+2"), _eq("l", l + 2, "l'=l+2"),
    ])


def red_anywalk_to_walk(inst: AnyWalkInstance) -> ReductionReport:
    """Join fresh s' and t' to every vertex with the fresh color sigma+1."""
    _require(_is(inst, coloring=EDGE), "needs an edge-colored AnyWalk instance")
    g = inst.graph
    a = g.C + 1
    s2, t2 = g.n, g.n + 1
    edges = list(g.edges) + [(s2, v) for v in range(g.n)] + [(v, t2) for v in range(g.n)]
    colors = list(g.colors) + [a] * (2 * g.n)
    out = WalkInstance(ColoredGraph.build(g.directed, g.n + 2, edges, EDGE, a, colors),
                       s2, t2, (a,) + inst.seq + (a,))
    n, m, l = g.n, g.m, inst.l
    return _report("red_anywalk_to_walk", inst, out, [
        _eq("n", n + 2, "n'=n+2"), _eq("m", m + 2 * n, "m'=m+2n"), _eq("l", l + 2, "l'=l+2"),
    ])


def pad_instance(inst: WalkInstance, target_n=None, target_l=None, target_m=None) -> ReductionReport:
    """Pad n with isolated vertices, m with dummy edges among them, and l with a cycle gadget.

    Length padding adds s0, s1 with s0 <-> s1 colored 1 and s0 -> s colored
    2, and prefixes the sequence with 1^(2k) 2, so target_l - l = 2k + 1 must
    be odd.  It needs a directed edge-colored instance with C >= 2.
    """
    g = inst.graph
    l = inst.l
    target_l = l if target_l is None else target_l
    delta = target_l - l
    _require(delta >= 0, f"target_l={target_l} < l={l}")
    lengthen = delta > 0
    if lengthen:
        _require(g.directed and g.coloring == EDGE and g.C >= 2,
                 "length padding needs a directed edge-colored instance with C >= 2")
        _require(delta % 2 == 1, f"target_l - l = {delta} must be odd (prefix 1^(2k) 2)")
    gadget_n = 2 if lengthen else 0
    n2 = max(g.n + gadget_n, g.n if target_n is None else target_n)
    _require(target_n is None or target_n >= g.n, f"target_n={target_n} < n={g.n}")

    edges = list(g.edges)
    colors = list(g.colors)
    seq = list(inst.seq)
    s = inst.s
    if lengthen:
        s0, s1 = g.n, g.n + 1
        edges += [(s0, s1), (s1, s0), (s0, inst.s)]
        colors += [1, 1, 2]
        seq = [1] * (delta - 1) + [2] + seq
        s = s0
    first_free = g.n + gadget_n
    free = n2 - first_free
    dummy = 0 if target_m is None else max(0, target_m - len(edges))
    cap = free * (free - 1) if g.directed else free * (free - 1) // 2
    _require(dummy <= cap, f"target_m={target_m} needs {dummy} dummy edges, only {cap} fit among {free} padding vertices")
    added = 0
    for a in range(first_free, n2):
        for b in range(first_free, n2):
            if added == dummy:
                break
            if a == b or (not g.directed and a > b):
                continue
            edges.append((a, b))
            added += 1
    if g.coloring == EDGE:
        colors += [1] * added
    else:
        colors += [1] * (n2 - g.n)
    out = WalkInstance(ColoredGraph.build(g.directed, n2, edges, g.coloring, g.C, colors), s, inst.t, seq)
    return _report("pad_instance", inst, out, [
        _eq("n", n2, "n'=max(target_n, n+2[l padded])"),
        _eq("m", g.m + 3 * lengthen + dummy, "m'=m+3[l padded]+dummy"),
        _eq("l", target_l, "l'=target_l"),
    ])


# -- cross-problem reductions ----------------------------------------------------------

def red_walk_to_cfl(inst: WalkInstance) -> ReductionReport:
    """Opening parentheses on the graph, closing parentheses on a tail path from t.

    The tail u_0 = t, u_1 .. u_l (indices n .. n+l-1) spells the closing
    parentheses of c_l, ..., c_1 in traversal order, so an s -> u_l walk is
    Dyck-2 balanced iff its graph part reads c_1 .. c_l.
    """
    _require(_is(inst, True, EDGE) and inst.graph.C <= 2, "needs a directed edge-colored instance with C<=2")
    _require(inst.l >= 1, "l must be >= 1 (Dyck-2 has no empty word)")
    g, l = inst.graph, inst.l
    edges = list(g.edges)
    labels = [open_paren(c) for c in g.colors]
    tail = [inst.t] + [g.n + i for i in range(l)]
    for i in range(1, l + 1):
        edges.append((tail[i - 1], tail[i]))
        labels.append(close_paren(inst.seq[l - i]))
    out = CflInstance(ColoredGraph.build(True, g.n + l, edges, EDGE, 4, labels), inst.s, tail[-1], Grammar.dyck2())
    return _report("red_walk_to_cfl", inst, out, [
        _eq("n", g.n + l, "n'=n+l"), _eq("m", g.m + l, "m'=m+l"),
    ])


def red_walk_to_wordbreak(inst: WalkInstance) -> ReductionReport:
    """Text 0^s c1 0^n c2 ... 0^n cl 0^(n-t); one word 0^u c 0^(n-v) per edge.

    Vertices are renumbered 1..n inside the construction.  For l = 0 the
    answer is s == t and the text is empty (split trivially) or "0"
    (unsplittable: every word holds a nonzero symbol).
    """
    _require(_is(inst, True, EDGE) and inst.graph.C <= 2, "needs a directed edge-colored instance with C<=2")
    g, l = inst.graph, inst.l
    n = g.n
    s1, t1 = inst.s + 1, inst.t + 1
    words = [(0,) * (u + 1) + (c,) + (0,) * (n - (v + 1)) for (u, v), c in zip(g.edges, g.colors)]
    if l == 0:
        text = () if s1 == t1 else (0,)
        N = 0 if s1 == t1 else 1
    else:
        text = [0] * s1
        for i, c in enumerate(inst.seq):
            if i:
                text += [0] * n
            text.append(c)
        text += [0] * (n - t1)
        N = s1 + l * (n + 1) - t1
    out = WordBreakInstance(text, words)
    M = g.m * (n + 1) + sum(u - v for u, v in g.edges)
    return _report("red_walk_to_wordbreak", inst, out, [
        _eq("N", N, "N=s+l(n+1)-t (1-based s,t)"),
        _eq("M", M, "M=m(n+1)+sum_{(u,v)}(u-v)"),
        Bound("M", "<=", 2 * g.m * n, "M<=2mn"),
    ])


def omv_matrices(inst: WalkInstance, N: int):
    """Transposed per-color adjacency: M[c][u, v] = 1 iff (v, u) is an edge of color c."""
    mats = {c: np.zeros((N, N), dtype=bool) for c in (1, 2)}
    for (u, v), c in zip(inst.graph.edges, inst.graph.colors):
        mats[c][v, u] = True
    return mats


def red_walk_to_omv(inst: WalkInstance, mode: str = "two_instance") -> ReductionReport:
    """Drive OMv engines with u_i = M^(c_i) u_{i-1}; the answer is u_l[t].

    ``two_instance`` uses one engine per color.  ``block_diagonal`` uses a
    single 2N x 2N engine over diag(M^(1), M^(2)) and routes u into the
    upper or lower half depending on the color.
    """
    _require(_is(inst, True, EDGE) and inst.graph.C <= 2, "needs a directed edge-colored instance with C<=2")
    _require(mode in ("two_instance", "block_diagonal"), f"unknown mode {mode!r}")
    g = inst.graph
    N = max(g.n, inst.l)
    mats = omv_matrices(inst, N)
    u = np.zeros(N, dtype=bool)
    u[inst.s] = True
    trace = [u]
    if mode == "two_instance":
        engines = {c: solvers.OmvEngine(mats[c]) for c in (1, 2)}
        for c in inst.seq:
            u = engines[c].round(u)
            trace.append(u)
        used = {c: e.rounds_used for c, e in engines.items()}
        outputs = tuple(_omv_instance(engines[c]) for c in (1, 2))
        size = N
    else:
        block = np.zeros((2 * N, 2 * N), dtype=bool)
        block[:N, :N] = mats[1]
        block[N:, N:] = mats[2]
        engine = solvers.OmvEngine(block)
        for c in inst.seq:
            v = np.zeros(2 * N, dtype=bool)
            half = slice(0, N) if c == 1 else slice(N, 2 * N)
            v[half] = u
            u = engine.round(v)[half]
            trace.append(u)
        used = {"block": engine.rounds_used}
        outputs = (_omv_instance(engine),)
        size = 2 * N
    assert all(r <= size for r in used.values()), "OMv round budget exceeded"
    answer = bool(u[inst.t])
    out = outputs[0] if len(outputs) == 1 else outputs
    p_out = {"N": size, "rounds": size, "instances": len(outputs), "rounds_used": sum(used.values())}
    bounds = [
        _eq("N", size, "N'=max(n,l)" if mode == "two_instance" else "N'=2max(n,l)"),
        _eq("instances", len(outputs), "instances=2" if mode == "two_instance" else "instances=1"),
        _eq("rounds_used", inst.l, "rounds_used=l"),
        Bound("rounds", "<=", size, "rounds<=N'"),
    ]
    return ReductionReport("red_walk_to_omv" if mode == "two_instance" else "red_walk_to_omv_block",
                           out, params(inst), p_out, tuple(bounds),
                           {"answer": answer, "trace": trace, "rounds_used": used, "mode": mode})


def _omv_instance(engine):
    # the queried vectors padded with zero rounds to exactly N
    rounds = [q.astype(int).tolist() for q in engine.queries]
    rounds += [[0] * engine.N] * (engine.N - len(rounds))
    return OmvInstance(engine.matrix.astype(int).tolist(), rounds)


def red_ov_to_nfa(inst: OvInstance) -> ReductionReport:
    """OV -> sparse NFA over {0,1,2} (encoded as symbols 1,2,3).

    Per a_i in A a chain q_0..q_d reads b[k] = 0 always and b[k] = 1 only
    where a_i[k] = 0; s and t loop on every symbol.  The word is
    2 b_1 2 b_2 ... 2 b_|B| 2.
    """
    d = inst.d
    _require(d >= 1, "d must be >= 1")
    ZERO, ONE, SEP = 1, 2, 3
    s, t = 0, 1

    def q(i, k):
        return 2 + i * (d + 1) + k

    trans = {(x, a, x) for x in (s, t) for a in (ZERO, ONE, SEP)}
    for i, a in enumerate(inst.A):
        trans.add((s, SEP, q(i, 0)))
        trans.add((q(i, d), SEP, t))
        for k in range(1, d + 1):
            trans.add((q(i, k - 1), ZERO, q(i, k)))
            if a[k - 1] == 0:
                trans.add((q(i, k - 1), ONE, q(i, k)))
    word = [SEP]
    for b in inst.B:
        word += [ONE if x else ZERO for x in b] + [SEP]
    nA, nB = len(inst.A), len(inst.B)
    out = NfaInstance(Nfa(2 + nA * (d + 1), 3, trans, s, {t}), word)
    zeros = sum(a.count(0) for a in inst.A)
    return _report("red_ov_to_nfa", inst, out, [
        _eq("n", 2 + nA * (d + 1), "n'=2+|A|(d+1)"),
        _eq("m", 6 + nA * (d + 2) + zeros, "m'=6+|A|(d+2)+#zeros(A)"),
        _eq("l", 1 + nB * (d + 1), "l'=1+|B|(d+1)"),
    ])


def node_id_bits(n: int) -> int:
    """ceil(log2 n) for n >= 2, and 1 for n = 1."""
    return max(1, (n - 1).bit_length())


def node_id(v: int, bits: int):
    """Node ID of v as symbols (bit 0 -> 1, bit 1 -> 2), most significant first."""
    return tuple(b + 1 for b in _bits_msb(v, bits))


def red_clique_to_nfa(inst: CliqueInstance, k: int, k_prime: int) -> ReductionReport:
    """(2k + k')-Clique -> NFA over {0,1,2,3} (encoded as symbols 1..4).

    The word lists every k'-clique twice (``v_1^k .. v_k'^k 3 v_1^k .. v_k'^k``
    between separators 2).  Each k-clique U gets a gadget CG(U) that reads
    such a half iff all listed vertices are adjacent to all of U, and a copy
    CG'(U); CG(U) -> CG'(U') on symbol 3 iff U and U' together form a
    2k-clique.
    """
    _require(k >= 1 and k_prime >= 1, "k and k' must be >= 1")
    _require(inst.k == 2 * k + k_prime, f"instance asks for a {inst.k}-clique, gadget sizes give {2 * k + k_prime}")
    SEP, BRIDGE = 3, 4
    n = inst.n
    bits = node_id_bits(n)
    adj = inst.adjacency()
    small = list_cliques(inst, k_prime)
    word = [SEP]
    for vs in small:
        half = [x for v in vs for _ in range(k) for x in node_id(v, bits)]
        word += half + [BRIDGE] + half + [SEP]

    s, t = 0, 1
    trans = {(x, a, x) for x in (s, t) for a in (1, 2, 3, 4)}
    counter = [2]

    def new():
        counter[0] += 1
        return counter[0] - 1

    def neighbor_check(u, start):
        accept = new()
        for v in sorted(adj[u]):
            ident = node_id(v, bits)
            prev = start
            for j, a in enumerate(ident):
                nxt = accept if j == len(ident) - 1 else new()
                trans.add((prev, a, nxt))
                prev = nxt
        return accept

    def clique_gadget(U):
        start = cur = new()
        for _ in range(k_prime):
            for u in U:
                cur = neighbor_check(u, cur)
        return start, cur

    big = list_cliques(inst, k) if small else []
    entry, bridge_in = {}, {}
    for U in big:
        gs, ga = clique_gadget(U)
        hs, ha = clique_gadget(U)
        trans.add((s, SEP, gs))
        trans.add((ha, SEP, t))
        entry[U] = ga
        bridge_in[U] = hs
    bridges = 0
    for U in big:
        for U2 in big:
            if set(U) & set(U2):
                continue
            if all(b in adj[a] for a in U for b in U2):
                trans.add((entry[U], BRIDGE, bridge_in[U2]))
                bridges += 1
    out = NfaInstance(Nfa(counter[0], 4, trans, s, {t}), word)

    deg = [len(a) for a in adj]
    gadget_states = sum(1 + k_prime * sum(1 + deg[u] * (bits - 1) for u in U) for U in big)
    gadget_trans = sum(k_prime * sum(deg[u] * bits for u in U) for U in big)
    return _report("red_clique_to_nfa", inst, out, [
        _eq("n", 2 + 2 * gadget_states, "n'=2+2*sum_U(1+k'*sum_u(1+deg(u)(b-1)))"),
        _eq("m", 8 + 2 * len(big) + bridges + 2 * gadget_trans, "m'=8+2|C(k)|+bridges+2*sum_U k'*sum_u deg(u)b"),
        _eq("l", 1 + len(small) * (2 * k * k_prime * bits + 2), "l'=1+|C(k')|(2kk'b+2)"),
    ], bits=bits, k_cliques=len(big), kprime_cliques=len(small), bridges=bridges)


# -- composites -----------------------------------------------------------------------

def equivalence_cycle(inst: WalkInstance):
    """Directed Node-2 -> Edge-2 -> NFA -> Node-sigma -> Node-2; returns the four reports."""
    r1 = red_dirnode2_to_diredge2(inst)
    r2 = red_diredgeC_to_nfa(r1.output)
    r3 = red_nfa_to_dirnodeC(r2.output)
    r4 = red_dirnodeN_to_dirnode2(r3.output)
    return [r1, r2, r3, r4]


def serialize_report(report: ReductionReport) -> str:
    from .io import serialize_instance

    def kv(d):
        return " ".join(f"{k}={v}" for k, v in d.items())

    head = (f"# reduction {report.name} params_in {kv(report.params_in)} "
            f"params_out {kv(report.params_out)} bound {report.bound_expr}\n")
    outs = report.output if isinstance(report.output, tuple) else (report.output,)
    return head + "%%\n".join(serialize_instance(o) for o in outs)
