"""Reference decision procedures.

The walk solvers share one kernel: per color ``c`` the arcs a walk may take
while reading ``c`` are stored as parallel ``src``/``dst`` arrays sorted by
source, and one step of the frontier is ``next[dst[frontier[src]]] = True``.
That is Theta(n + m_c) work per step and Theta((n + m) * l) overall.
"""
from __future__ import annotations

from collections import defaultdict

import numpy as np

from . import boolmat
from .core import (
    EDGE, AnyWalkInstance, CflInstance, CliqueInstance, NfaInstance,
    OmvInstance, OvInstance, PreconditionError, WalkInstance,
    WordBreakInstance,
)


def color_arcs(graph):
    """Map color -> (src, dst) int arrays of the arcs reading that color, sorted by src."""
    e = np.asarray(graph.edges, dtype=np.intp).reshape(-1, 2)
    colors = np.asarray(graph.colors, dtype=np.intp)
    u, v = e[:, 0], e[:, 1]
    if graph.coloring == EDGE:
        cf = cb = colors
    else:
        cf, cb = colors[v], colors[u]
    if graph.directed:
        src, dst, col = u, v, cf
    else:
        src, dst, col = np.concatenate([u, v]), np.concatenate([v, u]), np.concatenate([cf, cb])
    order = np.lexsort((dst, src, col))
    src, dst, col = src[order], dst[order], col[order]
    keys, starts = np.unique(col, return_index=True)
    bounds = list(starts[1:]) + [len(col)]
    return {int(c): (src[a:b].copy(), dst[a:b].copy()) for c, a, b in zip(keys, starts, bounds)}


_EMPTY = (np.zeros(0, dtype=np.intp), np.zeros(0, dtype=np.intp))


def _step(frontier, arcs, n):
    src, dst = arcs
    nxt = np.zeros(n, dtype=bool)
    nxt[dst[frontier[src]]] = True
    return nxt


def run_frontiers(n, arcs_by_symbol, start, word):
    """Frontiers x_0..x_l of the subset simulation, as a list of bool arrays."""
    x = np.asarray(start, dtype=bool)
    out = [x]
    for c in word:
        x = _step(x, arcs_by_symbol.get(c, _EMPTY), n)
        out.append(x)
    return out


def _indicator(n, v):
    x = np.zeros(n, dtype=bool)
    x[v] = True
    return x


def walk_frontiers(inst: WalkInstance):
    """``x_i[v]`` is True iff some walk s -> v reads the first i colors."""
    g = inst.graph
    return run_frontiers(g.n, color_arcs(g), _indicator(g.n, inst.s), inst.seq)


def solve_walk_dp(inst: WalkInstance) -> bool:
    g = inst.graph
    arcs = color_arcs(g)
    x = _indicator(g.n, inst.s)
    for c in inst.seq:
        x = _step(x, arcs.get(c, _EMPTY), g.n)
        if not x.any():
            return False
    return bool(x[inst.t])


def solve_anywalk(inst: AnyWalkInstance) -> bool:
    g = inst.graph
    arcs = color_arcs(g)
    x = np.ones(g.n, dtype=bool)
    for c in inst.seq:
        x = _step(x, arcs.get(c, _EMPTY), g.n)
        if not x.any():
            return False
    return bool(x.any())


def _nfa_arcs(nfa):
    buckets = defaultdict(list)
    for q, a, r in nfa.transitions:
        buckets[a].append((q, r))
    out = {}
    for a, arcs in buckets.items():
        arr = np.array(sorted(arcs), dtype=np.intp).reshape(-1, 2)
        out[a] = (arr[:, 0].copy(), arr[:, 1].copy())
    return out


def nfa_frontiers(nfa, word):
    return run_frontiers(nfa.n_states, _nfa_arcs(nfa), _indicator(nfa.n_states, nfa.q0), word)


def nfa_accepts(nfa, word=None) -> bool:
    """Subset simulation; accepts an ``Nfa`` plus word or an ``NfaInstance``."""
    if isinstance(nfa, NfaInstance):
        nfa, word = nfa.nfa, nfa.word
    arcs = _nfa_arcs(nfa)
    x = _indicator(nfa.n_states, nfa.q0)
    for a in word:
        x = _step(x, arcs.get(a, _EMPTY), nfa.n_states)
        if not x.any():
            return False
    accept = np.fromiter(sorted(nfa.accept), dtype=np.intp, count=len(nfa.accept))
    return bool(x[accept].any())


# -- matrix-product baselines ------------------------------------------------

def color_adjacency(graph):
    """Map color -> boolean n x n matrix with A[u, v] set iff arc u -> v reads it."""
    mats = {}
    for u, v, c in graph.arcs():
        if c not in mats:
            mats[c] = np.zeros((graph.n, graph.n), dtype=bool)
        mats[c][u, v] = True
    return mats


def _matrix_for(mats, c, n):
    return mats[c] if c in mats else np.zeros((n, n), dtype=bool)


def solve_walk_matrix_chain(inst: WalkInstance) -> bool:
    """Left-to-right boolean product A^(c1) ... A^(cl); answer is entry (s, t)."""
    g = inst.graph
    mats = color_adjacency(g)
    P = boolmat.identity(g.n)
    for c in inst.seq:
        P = boolmat.bool_matmul(P, _matrix_for(mats, c, g.n))
    return bool(P[inst.s, inst.t])


def solve_uniform_color_power(inst: WalkInstance) -> bool:
    if len(set(inst.seq)) > 1:
        raise PreconditionError("color sequence is not uniform")
    g = inst.graph
    if not inst.seq:
        return inst.s == inst.t
    A = _matrix_for(color_adjacency(g), inst.seq[0], g.n)
    return bool(boolmat.bool_power(A, inst.l)[inst.s, inst.t])


# -- CFL reachability ----------------------------------------------------------

def cfl_reach_solve(inst: CflInstance) -> bool:
    """Worklist fixpoint over facts (X, u, v): some u -> v walk spells a word of X.

    The grammar must be in the normal form of ``Grammar`` (rules X -> a and
    X -> Y Z only).
    """
    g, gr = inst.graph, inst.grammar
    by_terminal = defaultdict(list)
    for x, a in gr.unary:
        by_terminal[a].append(x)
    as_left = defaultdict(list)   # Y -> [(Z, W)] for Z -> Y W
    as_right = defaultdict(list)  # W -> [(Z, Y)] for Z -> Y W
    for z, y, w in gr.binary:
        as_left[y].append((z, w))
        as_right[w].append((z, y))

    out_of = defaultdict(lambda: defaultdict(set))  # X -> u -> {v}
    into = defaultdict(lambda: defaultdict(set))    # X -> v -> {u}
    work = []

    def add(x, u, v):
        if v not in out_of[x][u]:
            out_of[x][u].add(v)
            into[x][v].add(u)
            work.append((x, u, v))

    for (u, v), a in zip(g.edges, g.colors):
        for x in by_terminal[a]:
            add(x, u, v)
    goal = (gr.start, inst.s, inst.t)
    while work:
        x, u, v = work.pop()
        if (x, u, v) == goal:
            return True
        for z, w in as_left[x]:
            for r in list(out_of[w][v]):
                add(z, u, r)
        for z, y in as_right[x]:
            for p in list(into[y][u]):
                add(z, p, v)
    return inst.t in out_of[gr.start][inst.s]


def dyck2_membership(word) -> bool:
    """Nonempty and balanced over (1 = 1, )1 = 2, (2 = 3, )2 = 4."""
    if not word:
        return False
    stack = []
    for a in word:
        if a in (1, 3):
            stack.append(a)
        elif a in (2, 4):
            if not stack or stack.pop() != a - 1:
                return False
        else:
            return False
    return not stack


# -- Word Break ------------------------------------------------------------------

def _trie(words):
    root = {}
    for w in words:
        node = root
        for a in w:
            node = node.setdefault(a, {})
        node[None] = True
    return root


def word_break_solve(inst: WordBreakInstance) -> bool:
    text = inst.text
    N = len(text)
    root = _trie(inst.dictionary)
    ok = [False] * (N + 1)
    ok[0] = True
    for i in range(N):
        if not ok[i]:
            continue
        node = root
        j = i
        while j < N and text[j] in node:
            node = node[text[j]]
            j += 1
            if None in node:
                ok[j] = True
    return ok[N]


# -- OMv --------------------------------------------------------------------------

class OmvRoundsExhausted(RuntimeError):
    pass


class OmvEngine:
    """Online boolean matrix-vector products against a fixed N x N matrix."""

    mode = "naive"

    def __init__(self, matrix, max_rounds=None):
        self.matrix = np.asarray(matrix, dtype=bool)
        n, n2 = self.matrix.shape
        if n != n2:
            raise PreconditionError(f"matrix must be square, got {self.matrix.shape}")
        self.N = n
        self.max_rounds = n if max_rounds is None else max_rounds
        self.rounds_used = 0
        self.queries = []

    def round(self, v) -> np.ndarray:
        if self.rounds_used >= self.max_rounds:
            raise OmvRoundsExhausted(f"all {self.max_rounds} rounds used")
        v = np.asarray(v, dtype=bool)
        if v.shape != (self.N,):
            raise PreconditionError(f"vector must have length {self.N}, got {v.shape}")
        self.rounds_used += 1
        self.queries.append(v.copy())
        return boolmat.bool_matvec(self.matrix, v)


def omv_round(engine: OmvEngine, v) -> np.ndarray:
    return engine.round(v)


def omv_solve(inst: OmvInstance):
    """Answer every round of an OMv instance, in order."""
    engine = OmvEngine(inst.matrix)
    return [engine.round(v) for v in inst.rounds]


def solve(inst):
    """Dispatch to the reference solver for the instance's kind."""
    from . import oracles

    if isinstance(inst, WalkInstance):
        return solve_walk_dp(inst)
    if isinstance(inst, AnyWalkInstance):
        return solve_anywalk(inst)
    if isinstance(inst, NfaInstance):
        return nfa_accepts(inst)
    if isinstance(inst, CflInstance):
        return cfl_reach_solve(inst)
    if isinstance(inst, WordBreakInstance):
        return word_break_solve(inst)
    if isinstance(inst, OmvInstance):
        return omv_solve(inst)
    if isinstance(inst, OvInstance):
        return oracles.ov_bruteforce(inst)
    if isinstance(inst, CliqueInstance):
        return oracles.clique_bruteforce(inst)
    raise TypeError(f"no solver for {type(inst).__name__}")


SOLVERS = {
    "dp": solve_walk_dp,
    "matrix_chain": solve_walk_matrix_chain,
    "uniform_power": solve_uniform_color_power,
}
