"""Seeded random instance generators.

All generators draw from a Philox (counter-based) bit generator keyed by
the given seed, so the same arguments always reproduce the same instance.
"""
from __future__ import annotations

import math

import numpy as np

from .core import (
    EDGE, NODE, AnyWalkInstance, CflInstance, CliqueInstance, ColoredGraph,
    Grammar, Nfa, NfaInstance, OmvInstance, OvInstance, PreconditionError,
    WalkInstance, WordBreakInstance,
)

VARIANTS = {
    "dir-edge": (True, EDGE),
    "dir-node": (True, NODE),
    "undir-edge": (False, EDGE),
    "undir-node": (False, NODE),
}


def rng_for(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(int(seed) & (2**64 - 1)))


def parse_variant(variant):
    if isinstance(variant, tuple):
        return variant
    try:
        return VARIANTS[variant]
    except KeyError:
        raise PreconditionError(f"unknown variant {variant!r}; expected one of {sorted(VARIANTS)}") from None


def max_edges(n: int, directed: bool) -> int:
    return n * (n - 1) if directed else n * (n - 1) // 2


def _pick_edges(rng, n, directed, m):
    if directed:
        us, vs = np.nonzero(~np.eye(n, dtype=bool))
    else:
        us, vs = np.triu_indices(n, 1)
    idx = np.sort(rng.choice(len(us), size=m, replace=False))
    return list(zip(us[idx].tolist(), vs[idx].tolist()))


def random_graph(rng, n, m, directed, coloring, C) -> ColoredGraph:
    edges = _pick_edges(rng, n, directed, m)
    k = len(edges) if coloring == EDGE else n
    colors = rng.integers(1, C + 1, size=k).tolist()
    return ColoredGraph.build(directed, n, edges, coloring, C, colors)


def gen_random_walk_instance(n, alpha, beta, C, variant, seed) -> WalkInstance:
    """Walk instance with m = ceil(n**alpha) (capped) and l = ceil(n**beta)."""
    if n < 2:
        raise PreconditionError("n must be >= 2")
    if C < 1:
        raise PreconditionError("C must be >= 1")
    directed, coloring = parse_variant(variant)
    want = math.ceil(n ** alpha)
    cap = max_edges(n, directed)
    if want > n * n:
        raise PreconditionError(f"edge count ceil(n^alpha)={want} infeasible for n={n}")
    m = min(want, cap)
    rng = rng_for(seed)
    g = random_graph(rng, n, m, directed, coloring, C)
    l = math.ceil(n ** beta)
    seq = rng.integers(1, C + 1, size=l).tolist()
    s, t = rng.integers(0, n, size=2).tolist()
    return WalkInstance(g, s, t, seq)


def gen_tiny_walk_instance(seed, variant, C=2, max_n=6, max_l=6, min_n=1, min_l=0) -> WalkInstance:
    """Small instance with random size and density, for oracle comparisons."""
    directed, coloring = parse_variant(variant)
    rng = rng_for(seed)
    n = int(rng.integers(min_n, max_n + 1))
    cap = max_edges(n, directed)
    m = int(rng.integers(0, cap + 1)) if cap else 0
    g = random_graph(rng, n, m, directed, coloring, C)
    l = int(rng.integers(min_l, max(min_l, max_l) + 1))
    seq = rng.integers(1, C + 1, size=l).tolist()
    s, t = rng.integers(0, n, size=2).tolist()
    return WalkInstance(g, s, t, seq)


def gen_tiny_anywalk_instance(seed, variant="undir-edge", C=2, max_n=6, max_l=6) -> AnyWalkInstance:
    w = gen_tiny_walk_instance(seed, variant, C, max_n, max_l)
    return AnyWalkInstance(w.graph, w.seq)


def gen_random_nfa(seed, max_states=6, max_sigma=3, max_len=6, min_sigma=1) -> NfaInstance:
    rng = rng_for(seed)
    n = int(rng.integers(1, max_states + 1))
    sigma = int(rng.integers(min_sigma, max_sigma + 1))
    total = n * sigma * n
    m = int(rng.integers(0, min(total, 3 * n * sigma) + 1))
    picks = rng.choice(total, size=m, replace=False).tolist()
    trans = {(p // (sigma * n), (p // n) % sigma + 1, p % n) for p in picks}
    accept = {q for q in range(n) if rng.random() < 0.4}
    q0 = int(rng.integers(0, n))
    word = rng.integers(1, sigma + 1, size=int(rng.integers(0, max_len + 1))).tolist()
    return NfaInstance(Nfa(n, sigma, trans, q0, accept), word)


def gen_random_ov(seed, max_size=8, max_d=6) -> OvInstance:
    rng = rng_for(seed)
    d = int(rng.integers(1, max_d + 1))
    p = rng.uniform(0.2, 0.8)
    a = int(rng.integers(0, max_size + 1))
    b = int(rng.integers(0, max_size + 1))
    A = (rng.random((a, d)) < p).astype(int).tolist()
    B = (rng.random((b, d)) < p).astype(int).tolist()
    return OvInstance(A, B, d)


def gen_random_clique(seed, max_n=9, k=3, min_n=1) -> CliqueInstance:
    rng = rng_for(seed)
    n = int(rng.integers(min_n, max_n + 1))
    p = rng.uniform(0.3, 0.95)
    us, vs = np.triu_indices(n, 1)
    keep = rng.random(len(us)) < p
    return CliqueInstance(n, list(zip(us[keep].tolist(), vs[keep].tolist())), k)


def gen_random_wordbreak(seed, max_text=12, max_words=5, max_word_len=4) -> WordBreakInstance:
    rng = rng_for(seed)
    words = set()
    for _ in range(int(rng.integers(0, max_words + 1))):
        words.add(tuple(rng.integers(0, 3, size=int(rng.integers(1, max_word_len + 1))).tolist()))
    words = sorted(words)
    text = []
    target = int(rng.integers(0, max_text + 1))
    # mostly concatenations of dictionary words, sometimes noise
    while len(text) < target:
        if words and rng.random() < 0.8:
            text.extend(words[int(rng.integers(0, len(words)))])
        else:
            text.append(int(rng.integers(0, 3)))
    return WordBreakInstance(text, words)


def gen_random_omv(seed, max_N=8) -> OmvInstance:
    rng = rng_for(seed)
    N = int(rng.integers(1, max_N + 1))
    M = (rng.random((N, N)) < 0.3).astype(int).tolist()
    R = (rng.random((int(rng.integers(0, N + 1)), N)) < 0.3).astype(int).tolist()
    return OmvInstance(M, R)


def gen_random_cfl(seed, max_n=6) -> CflInstance:
    """Random directed graph labeled with the four Dyck-2 terminals."""
    rng = rng_for(seed)
    n = int(rng.integers(1, max_n + 1))
    cap = max_edges(n, True)
    m = int(rng.integers(0, cap + 1)) if cap else 0
    g = random_graph(rng, n, m, True, EDGE, 4)
    s, t = rng.integers(0, n, size=2).tolist()
    return CflInstance(g, s, t, Grammar.dyck2())


def gen_instance(kind, seed):
    """One small random instance of any kind; used for round-trip checks."""
    if kind == "walk":
        rng = rng_for(seed)
        variant = sorted(VARIANTS)[int(rng.integers(0, 4))]
        return gen_tiny_walk_instance(seed, variant, C=int(rng.integers(1, 5)))
    if kind == "anywalk":
        return gen_tiny_anywalk_instance(seed, sorted(VARIANTS)[seed % 4], C=1 + seed % 4)
    if kind == "nfa":
        return gen_random_nfa(seed)
    if kind == "cfl":
        return gen_random_cfl(seed)
    if kind == "wordbreak":
        return gen_random_wordbreak(seed)
    if kind == "omv":
        return gen_random_omv(seed)
    if kind == "ov":
        return gen_random_ov(seed)
    if kind == "clique":
        return gen_random_clique(seed, k=1 + seed % 4)
    raise PreconditionError(f"unknown kind {kind!r}")
