"""Exponential brute-force oracles.

Nothing here imports the solver kernels: each oracle enumerates the
objects its problem quantifies over (walks, runs, pairs, vertex subsets)
straight from the instance fields.
"""
from __future__ import annotations

from itertools import combinations

from .core import EDGE, PreconditionError

WALK_BUDGET = 2_000_000


def _out_lists(graph):
    """u -> list of (v, color observed when stepping u -> v)."""
    out = [[] for _ in range(graph.n)]
    for i, (u, v) in enumerate(graph.edges):
        if graph.coloring == EDGE:
            out[u].append((v, graph.colors[i]))
            if not graph.directed:
                out[v].append((u, graph.colors[i]))
        else:
            out[u].append((v, graph.colors[v]))
            if not graph.directed:
                out[v].append((u, graph.colors[u]))
    return out


def enumerate_walks(graph, start, seq):
    """All walks (as vertex tuples) from ``start`` whose color sequence is ``seq``.

    Raises ``PreconditionError`` once more than ``WALK_BUDGET`` partial
    walks have been extended.
    """
    out = _out_lists(graph)
    found = []
    path = [start]
    steps = [0]

    def dfs(i):
        steps[0] += 1
        if steps[0] > WALK_BUDGET:
            raise PreconditionError(f"walk enumeration exceeded {WALK_BUDGET} partial walks")
        if i == len(seq):
            found.append(tuple(path))
            return
        for v, c in out[path[-1]]:
            if c == seq[i]:
                path.append(v)
                dfs(i + 1)
                path.pop()

    dfs(0)
    return found


def walk_enum_oracle(inst) -> bool:
    """Depth-first search over every walk of length l from s."""
    return any(w[-1] == inst.t for w in enumerate_walks(inst.graph, inst.s, inst.seq))


def anywalk_enum_oracle(inst) -> bool:
    return any(enumerate_walks(inst.graph, v, inst.seq) for v in range(inst.graph.n))


def nfa_enum_oracle(inst) -> bool:
    """Try every state sequence q_1..q_|x| (|Q|**|x| of them)."""
    nfa, word = inst.nfa, inst.word
    if nfa.n_states ** len(word) > WALK_BUDGET:
        raise PreconditionError("run enumeration too large")

    def runs(q, i):
        if i == len(word):
            yield q
            return
        for r in range(nfa.n_states):
            if (q, word[i], r) in nfa.transitions:
                yield from runs(r, i + 1)

    return any(q in nfa.accept for q in runs(nfa.q0, 0))


def ov_bruteforce(inst) -> bool:
    return any(all(x == 0 or y == 0 for x, y in zip(a, b)) for a in inst.A for b in inst.B)


CLIQUE_BUDGET = 5_000_000


def clique_bruteforce(inst, k=None) -> bool:
    k = inst.k if k is None else k
    n = inst.n
    from math import comb

    if comb(n, k) > CLIQUE_BUDGET:
        raise PreconditionError(f"C({n},{k}) subsets exceed the enumeration budget")
    adj = inst.adjacency()
    return any(all(v in adj[u] for u, v in combinations(sub, 2)) for sub in combinations(range(n), k))


def list_cliques(inst, k):
    """All k-cliques as sorted tuples, in lexicographic order."""
    adj = inst.adjacency()
    return [sub for sub in combinations(range(inst.n), k)
            if all(v in adj[u] for u, v in combinations(sub, 2))]
