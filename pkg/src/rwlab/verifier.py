"""Frontier certificates for Directed Edge-2-Colored Walk.

A certificate lists the frontiers x_0..x_l and a claimed answer.  It is
checked with one boolean matrix product per color: the frontiers read
after color c are stacked as the columns of X_c, their predecessors as
X'_c, and the verifier tests X_c = A_c^T X'_c in column blocks of width at
most n.  Because every x_i is forced by x_{i-1}, an accepted certificate is
the honest one, whatever it claims.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import boolmat
from .core import EDGE, PreconditionError, WalkInstance
from .solvers import walk_frontiers


@dataclass(frozen=True, eq=False)
class Certificate:
    xs: np.ndarray  # (l + 1) x n, bool
    claim: bool

    def __post_init__(self):
        xs = np.array(self.xs, dtype=bool, ndmin=2)
        xs.setflags(write=False)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "claim", bool(self.claim))

    def __eq__(self, other):
        return (isinstance(other, Certificate) and self.claim == other.claim
                and self.xs.shape == other.xs.shape and bool((self.xs == other.xs).all()))

    __hash__ = None


def _require_variant(inst):
    g = inst.graph
    if not (g.directed and g.coloring == EDGE and g.C <= 2):
        raise PreconditionError("certificates are defined for directed edge-colored instances with C<=2")


def color_adjacency_matrices(inst: WalkInstance):
    """A_1, A_2 with A_c[u, v] = 1 iff (u, v) is an edge of color c."""
    n = inst.graph.n
    A = {c: np.zeros((n, n), dtype=bool) for c in (1, 2)}
    for (u, v), c in zip(inst.graph.edges, inst.graph.colors):
        A[c][u, v] = True
    return A


def build_certificate(inst: WalkInstance) -> Certificate:
    _require_variant(inst)
    xs = np.array(walk_frontiers(inst), dtype=bool).reshape(inst.l + 1, inst.graph.n)
    return Certificate(xs, bool(xs[-1, inst.t]))


def _check_dims(inst, cert):
    want = (inst.l + 1, inst.graph.n)
    if cert.xs.shape != want:
        raise PreconditionError(f"certificate has shape {cert.xs.shape}, instance needs {want}")


def verify_certificate(inst: WalkInstance, cert: Certificate) -> bool:
    _require_variant(inst)
    _check_dims(inst, cert)
    n = inst.graph.n
    xs = cert.xs
    x0 = np.zeros(n, dtype=bool)
    x0[inst.s] = True
    if not (xs[0] == x0).all():
        return False
    A = color_adjacency_matrices(inst)
    seq = np.asarray(inst.seq, dtype=int)
    for c in (1, 2):
        steps = np.flatnonzero(seq == c) + 1
        At = A[c].T
        for lo in range(0, len(steps), n):
            block = steps[lo:lo + n]
            X = xs[block].T          # n x w, columns x_i
            Xprev = xs[block - 1].T  # n x w, columns x_{i-1}
            if not (boolmat.bool_matmul(At, Xprev) == X).all():
                return False
    return cert.claim == bool(xs[-1, inst.t])


def verify_certificate_stepwise(inst: WalkInstance, cert: Certificate) -> bool:
    """Check x_i = A_{c_i}^T x_{i-1} one step at a time (reference for the batched check)."""
    _require_variant(inst)
    _check_dims(inst, cert)
    n = inst.graph.n
    xs = cert.xs
    if xs[0].sum() != 1 or not xs[0, inst.s]:
        return False
    A = color_adjacency_matrices(inst)
    for i, c in enumerate(inst.seq, start=1):
        if not (boolmat.bool_matvec(A[c].T, xs[i - 1]) == xs[i]).all():
            return False
    return cert.claim == bool(xs[-1, inst.t])


def serialize_certificate(cert: Certificate) -> str:
    l1, n = cert.xs.shape
    lines = [f"certificate n={n} l={l1 - 1} claim={int(cert.claim)}"]
    lines += ["".join("1" if b else "0" for b in row) for row in cert.xs]
    return "\n".join(lines) + "\n"


def parse_certificate(text) -> Certificate:
    from .core import ParseError

    if isinstance(text, bytes):
        text = text.decode("utf-8")
    lines = [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), start=1)
             if ln.strip() and not ln.strip().startswith("#")]
    if not lines:
        raise ParseError(1, "empty certificate")
    lineno, head = lines[0]
    toks = head.split()
    if toks[0] != "certificate" or len(toks) != 4:
        raise ParseError(lineno, "expected 'certificate n=<n> l=<l> claim=<0|1>'")
    fields = {}
    for tok in toks[1:]:
        key, _, val = tok.partition("=")
        if key not in ("n", "l", "claim") or not val.isdigit():
            raise ParseError(lineno, f"bad field {tok!r}")
        fields[key] = int(val)
    if fields.get("claim") not in (0, 1) or len(fields) != 3:
        raise ParseError(lineno, "claim must be 0 or 1; fields n, l, claim required")
    rows = lines[1:]
    if len(rows) != fields["l"] + 1:
        raise ParseError(lineno, f"expected {fields['l'] + 1} bitstring lines, got {len(rows)}")
    xs = []
    for ln, row in rows:
        if len(row) != fields["n"] or any(ch not in "01" for ch in row):
            raise ParseError(ln, f"expected a bitstring of length {fields['n']}")
        xs.append([ch == "1" for ch in row])
    return Certificate(np.array(xs, dtype=bool).reshape(fields["l"] + 1, fields["n"]), fields["claim"])
