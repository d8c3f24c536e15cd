"""Line-oriented text format for instances.

Every file starts with ``kind <name>``; the remaining lines are keyword
records whose first token names the record.  Blank lines and lines
starting with ``#`` are ignored.  ``serialize_instance`` emits a canonical
form (fixed record order, sorted edge/transition/word lists) that
``parse_instance`` maps back to an equal instance.
"""
from __future__ import annotations

from .core import (
    EDGE, NODE, AnyWalkInstance, CflInstance, CliqueInstance, ColoredGraph,
    Grammar, Nfa, NfaInstance, OmvInstance, OvInstance, ParseError,
    WalkInstance, WordBreakInstance, check, kind_of, KINDS,
)


def _ints(tokens, lineno, what):
    try:
        return [int(x) for x in tokens]
    except ValueError:
        raise ParseError(lineno, f"{what}: expected integers, got {' '.join(tokens)!r}") from None


def _bits(token, lineno, what):
    if any(ch not in "01" for ch in token):
        raise ParseError(lineno, f"{what}: expected a bitstring, got {token!r}")
    return [int(ch) for ch in token]


def _kv(tokens, lineno, keys):
    out = {}
    for tok in tokens:
        key, sep, val = tok.partition("=")
        if not sep or key not in keys:
            raise ParseError(lineno, f"unexpected field {tok!r}; expected {', '.join(k + '=' for k in keys)}")
        out[key] = val
    missing = [k for k in keys if k not in out]
    if missing:
        raise ParseError(lineno, f"missing field(s) {', '.join(missing)}")
    return out


def _kv_int(tokens, lineno, keys):
    raw = _kv(tokens, lineno, keys)
    try:
        return {k: int(v) for k, v in raw.items()}
    except ValueError:
        raise ParseError(lineno, f"non-integer field in {' '.join(tokens)!r}") from None


def _records(text):
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split()
        yield lineno, toks[0], toks[1:]


def parse_instance(text, kind=None):
    """Parse and validate one instance.

    ``kind`` may be given to insist on a particular instance kind; it is
    otherwise taken from the ``kind`` line.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    recs = list(_records(text))
    if not recs or recs[0][1] != "kind" or len(recs[0][2]) != 1:
        raise ParseError(recs[0][0] if recs else 1, "first record must be 'kind <name>'")
    lineno, _, (found,) = recs[0]
    if found not in KINDS:
        raise ParseError(lineno, f"unknown kind {found!r}")
    if kind is not None and kind != found:
        raise ParseError(lineno, f"expected kind {kind!r}, found {found!r}")
    inst = _PARSERS[found](recs[1:], lineno)
    return check(inst)


def _parse_graph_block(recs, lineno0):
    """Consume graph/edge/nodecolor records; return (graph, leftover records)."""
    if not recs or recs[0][1] != "graph":
        raise ParseError(recs[0][0] if recs else lineno0, "expected 'graph' record")
    lineno, _, toks = recs[0]
    if len(toks) != 4 or toks[0] not in ("directed", "undirected") or toks[1] not in (NODE, EDGE):
        raise ParseError(lineno, "graph: expected '<directed|undirected> <node|edge> n=<n> C=<C>'")
    directed = toks[0] == "directed"
    coloring = toks[1]
    hdr = _kv_int(toks[2:], lineno, ["n", "C"])
    edges, ecolors, ncolors = [], [], {}
    rest = []
    for rec in recs[1:]:
        ln, key, args = rec
        if key == "edge":
            vals = _ints(args, ln, "edge")
            want = 3 if coloring == EDGE else 2
            if len(vals) != want:
                raise ParseError(ln, f"edge: expected {want} integers")
            edges.append((vals[0], vals[1]))
            if coloring == EDGE:
                ecolors.append(vals[2])
        elif key == "nodecolor":
            if coloring != NODE:
                raise ParseError(ln, "nodecolor in an edge-colored graph")
            v, c = _ints(args, ln, "nodecolor") if len(args) == 2 else (None, None)
            if v is None:
                raise ParseError(ln, "nodecolor: expected 'nodecolor v c'")
            if v in ncolors:
                raise ParseError(ln, f"nodecolor: vertex {v} colored twice")
            ncolors[v] = c
        else:
            rest.append(rec)
    if coloring == NODE:
        missing = [v for v in range(hdr["n"]) if v not in ncolors]
        extra = [v for v in ncolors if not 0 <= v < hdr["n"]]
        if missing or extra:
            raise ParseError(lineno, f"nodecolor: need exactly one color per vertex 0..{hdr['n'] - 1}")
        colors = [ncolors[v] for v in range(hdr["n"])]
    else:
        colors = ecolors
    g = ColoredGraph.build(directed, hdr["n"], edges, coloring, hdr["C"], colors)
    return g, rest


def _take(rest, key, lineno0, required=True):
    found = [r for r in rest if r[1] == key]
    if len(found) > 1:
        raise ParseError(found[1][0], f"duplicate '{key}' record")
    if not found:
        if required:
            raise ParseError(lineno0, f"missing '{key}' record")
        return None
    rest.remove(found[0])
    return found[0]


def _no_leftovers(rest):
    if rest:
        ln, key, _ = rest[0]
        raise ParseError(ln, f"unexpected record {key!r}")


def _parse_walk(recs, lineno0):
    g, rest = _parse_graph_block(recs, lineno0)
    ln, _, args = _take(rest, "st", lineno0)
    st = _ints(args, ln, "st")
    if len(st) != 2:
        raise ParseError(ln, "st: expected 'st <s> <t>'")
    ln, _, args = _take(rest, "seq", lineno0)
    seq = _ints(args, ln, "seq")
    _no_leftovers(rest)
    return WalkInstance(g, st[0], st[1], seq)


def _parse_anywalk(recs, lineno0):
    g, rest = _parse_graph_block(recs, lineno0)
    ln, _, args = _take(rest, "seq", lineno0)
    seq = _ints(args, ln, "seq")
    _no_leftovers(rest)
    return AnyWalkInstance(g, seq)


def _parse_nfa(recs, lineno0):
    rest = list(recs)
    ln, _, args = _take(rest, "nfa", lineno0)
    hdr = _kv_int(args, ln, ["n", "sigma", "q0"])
    ln, _, args = _take(rest, "accept", lineno0)
    accept = _ints(args, ln, "accept")
    ln, _, args = _take(rest, "input", lineno0)
    word = _ints(args, ln, "input")
    trans = []
    for ln, key, args in list(rest):
        if key != "trans":
            continue
        vals = _ints(args, ln, "trans")
        if len(vals) != 3:
            raise ParseError(ln, "trans: expected 'trans q sigma q2'")
        trans.append(tuple(vals))
        rest.remove((ln, key, args))
    _no_leftovers(rest)
    return NfaInstance(Nfa(hdr["n"], hdr["sigma"], trans, hdr["q0"], accept), word)


def _parse_cfl(recs, lineno0):
    g, rest = _parse_graph_block(recs, lineno0)
    ln, _, args = _take(rest, "st", lineno0)
    st = _ints(args, ln, "st")
    if len(st) != 2:
        raise ParseError(ln, "st: expected 'st <s> <t>'")
    ln, _, args = _take(rest, "grammar", lineno0)
    hdr = _kv(args, ln, ["start", "terminals"])
    try:
        n_term = int(hdr["terminals"])
    except ValueError:
        raise ParseError(ln, "grammar: terminals must be an integer") from None
    ln, _, names = _take(rest, "nonterminals", lineno0)
    unary, binary = [], []
    for rec in list(rest):
        ln, key, args = rec
        if key == "unary":
            if len(args) != 2:
                raise ParseError(ln, "unary: expected 'unary X a'")
            unary.append((args[0], _ints(args[1:], ln, "unary")[0]))
        elif key == "binary":
            if len(args) != 3:
                raise ParseError(ln, "binary: expected 'binary X Y Z'")
            binary.append(tuple(args))
        else:
            continue
        rest.remove(rec)
    _no_leftovers(rest)
    grammar = Grammar(tuple(names), n_term, unary, binary, hdr["start"])
    return CflInstance(g, st[0], st[1], grammar)


def _parse_wordbreak(recs, lineno0):
    rest = list(recs)
    ln, _, args = _take(rest, "text", lineno0)
    text = _ints(args, ln, "text")
    words = []
    for rec in list(rest):
        ln, key, args = rec
        if key == "word":
            w = tuple(_ints(args, ln, "word"))
            if w in words:
                raise ParseError(ln, "word: duplicate dictionary entry")
            words.append(w)
            rest.remove(rec)
    _no_leftovers(rest)
    return WordBreakInstance(text, words)


def _parse_omv(recs, lineno0):
    rest = list(recs)
    ln, _, args = _take(rest, "omv", lineno0)
    hdr = _kv_int(args, ln, ["N", "rounds"])
    rows, rounds = [], []
    for rec in list(rest):
        ln, key, args = rec
        if key in ("row", "round"):
            if len(args) > 1:
                raise ParseError(ln, f"{key}: expected one bitstring")
            bits = _bits(args[0], ln, key) if args else []
            (rows if key == "row" else rounds).append(bits)
            rest.remove(rec)
    _no_leftovers(rest)
    if len(rows) != hdr["N"]:
        raise ParseError(lineno0, f"omv: expected {hdr['N']} row records, got {len(rows)}")
    if len(rounds) != hdr["rounds"]:
        raise ParseError(lineno0, f"omv: expected {hdr['rounds']} round records, got {len(rounds)}")
    return OmvInstance(rows, rounds)


def _parse_ov(recs, lineno0):
    rest = list(recs)
    ln, _, args = _take(rest, "ov", lineno0)
    d = _kv_int(args, ln, ["d"])["d"]
    A, B = [], []
    for rec in list(rest):
        ln, key, args = rec
        if key in ("a", "b"):
            if len(args) != 1:
                raise ParseError(ln, f"{key}: expected one bitstring")
            (A if key == "a" else B).append(_bits(args[0], ln, key))
            rest.remove(rec)
    _no_leftovers(rest)
    return OvInstance(A, B, d)


def _parse_clique(recs, lineno0):
    rest = list(recs)
    ln, _, args = _take(rest, "clique", lineno0)
    hdr = _kv_int(args, ln, ["n", "k"])
    edges = []
    for rec in list(rest):
        ln, key, args = rec
        if key == "edge":
            vals = _ints(args, ln, "edge")
            if len(vals) != 2:
                raise ParseError(ln, "edge: expected 'edge u v'")
            edges.append(tuple(vals))
            rest.remove(rec)
    _no_leftovers(rest)
    return CliqueInstance(hdr["n"], edges, hdr["k"])


_PARSERS = {
    "walk": _parse_walk,
    "anywalk": _parse_anywalk,
    "nfa": _parse_nfa,
    "cfl": _parse_cfl,
    "wordbreak": _parse_wordbreak,
    "omv": _parse_omv,
    "ov": _parse_ov,
    "clique": _parse_clique,
}


# -- serialization ------------------------------------------------------------

def _j(xs):
    return " ".join(str(x) for x in xs)


def _line(key, xs=()):
    body = _j(xs)
    return f"{key} {body}" if body else key


def _graph_lines(g: ColoredGraph):
    out = [f"graph {'directed' if g.directed else 'undirected'} {g.coloring} n={g.n} C={g.C}"]
    if g.coloring == EDGE:
        out += [f"edge {u} {v} {c}" for (u, v), c in sorted(zip(g.edges, g.colors))]
    else:
        out += [f"edge {u} {v}" for u, v in sorted(g.edges)]
        out += [f"nodecolor {v} {c}" for v, c in enumerate(g.colors)]
    return out


def serialize_instance(inst) -> str:
    kind = kind_of(inst)
    out = [f"kind {kind}"]
    if kind in ("walk", "anywalk", "cfl"):
        out += _graph_lines(inst.graph)
        if kind != "anywalk":
            out.append(f"st {inst.s} {inst.t}")
        if kind == "cfl":
            gr = inst.grammar
            out.append(f"grammar start={gr.start} terminals={gr.n_terminals}")
            out.append(_line("nonterminals", gr.nonterminals))
            out += [f"unary {x} {a}" for x, a in sorted(gr.unary)]
            out += [f"binary {x} {y} {z}" for x, y, z in sorted(gr.binary)]
        else:
            out.append(_line("seq", inst.seq))
    elif kind == "nfa":
        a = inst.nfa
        out.append(f"nfa n={a.n_states} sigma={a.sigma} q0={a.q0}")
        out.append(_line("accept", sorted(a.accept)))
        out += [f"trans {q} {x} {r}" for q, x, r in sorted(a.transitions)]
        out.append(_line("input", inst.word))
    elif kind == "wordbreak":
        out.append(_line("text", inst.text))
        out += [_line("word", w) for w in sorted(inst.dictionary)]
    elif kind == "omv":
        out.append(f"omv N={inst.N} rounds={len(inst.rounds)}")
        out += [_line("row", ["".join(map(str, r))] if r else []) for r in inst.matrix]
        out += [_line("round", ["".join(map(str, r))] if r else []) for r in inst.rounds]
    elif kind == "ov":
        out.append(f"ov d={inst.d}")
        out += ["a " + "".join(map(str, a)) for a in inst.A]
        out += ["b " + "".join(map(str, b)) for b in inst.B]
    elif kind == "clique":
        out.append(f"clique n={inst.n} k={inst.k}")
        out += [f"edge {u} {v}" for u, v in inst.edges]
    return "\n".join(out) + "\n"
