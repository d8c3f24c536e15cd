"""Command-line front end: ``rwlab <command> ...`` or ``python3 -m rwlab``.

Instance files use the text format of :mod:`rwlab.io`.  Files given as
``-`` (the default) are read from stdin.  Reduction outputs may hold
several instances separated by ``%%`` lines; ``solve`` answers each one.
"""
from __future__ import annotations

import argparse
import sys

from . import generate as gen
from . import harness, reductions as red, solvers
from .core import ParseError, PreconditionError, ValidationError
from .io import parse_instance, serialize_instance
from .verifier import build_certificate, parse_certificate, serialize_certificate, verify_certificate

EXIT_MISMATCH = 1
EXIT_INPUT = 2


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path, text):
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _documents(text):
    """Split on ``%%`` separator lines; comment-only chunks are dropped."""
    docs, cur = [], []
    for line in text.splitlines(keepends=True):
        if line.strip() == "%%":
            docs.append("".join(cur))
            cur = []
        else:
            cur.append(line)
    docs.append("".join(cur))
    keep = []
    for d in docs:
        body = [ln for ln in d.splitlines() if ln.strip() and not ln.strip().startswith("#")]
        if body:
            keep.append(d)
    return keep


def _fmt_answer(ans):
    if isinstance(ans, (bool, int)):
        return "YES" if ans else "NO"
    # OMv: one bitstring per round
    return "\n".join("".join("1" if b else "0" for b in row) for row in ans)


def cmd_gen(args):
    if args.kind == "walk":
        inst = gen.gen_random_walk_instance(args.n, args.alpha, args.beta, args.C, args.variant, args.seed)
    else:
        inst = gen.gen_instance(args.kind, args.seed)
    _write(args.output, serialize_instance(inst))
    return 0


def cmd_solve(args):
    docs = _documents(_read(args.input))
    if not docs:
        raise ParseError(1, "no instance found")
    for doc in docs:
        inst = parse_instance(doc)
        if args.solver != "auto":
            ans = solvers.SOLVERS[args.solver](inst)
        else:
            ans = solvers.solve(inst)
        print(_fmt_answer(ans))
    return 0


def _reduce(args, inst):
    name = args.name
    if name in ("red_walk_to_omv", "red_walk_to_omv_block"):
        return red.red_walk_to_omv(inst, "block_diagonal" if name.endswith("_block") else args.mode)
    if name == "red_clique_to_nfa":
        if args.k is None or args.k_prime is None:
            raise PreconditionError("red_clique_to_nfa needs --k and --k-prime")
        return red.red_clique_to_nfa(inst, args.k, args.k_prime)
    if name == "pad_instance":
        return red.pad_instance(inst, args.target_n, args.target_l, args.target_m)
    if name == "equivalence_cycle":
        chain = red.equivalence_cycle(inst)
        return chain[-1]
    fn = getattr(red, name, None)
    if fn is None or name not in harness.REGISTRY:
        raise PreconditionError(f"unknown reduction {name!r}; known: {', '.join(sorted(harness.REGISTRY))}")
    return fn(inst)


def cmd_reduce(args):
    inst = parse_instance(_read(args.input))
    report = _reduce(args, inst)
    _write(args.output, red.serialize_report(report))
    bad = report.violations()
    for v in bad:
        print(f"bound violated: {v}", file=sys.stderr)
    return EXIT_MISMATCH if bad else 0


def cmd_certify(args):
    inst = parse_instance(_read(args.input), kind="walk")
    _write(args.output, serialize_certificate(build_certificate(inst)))
    return 0


def cmd_verify(args):
    inst = parse_instance(_read(args.instance), kind="walk")
    cert = parse_certificate(_read(args.certificate))
    print("VALID" if verify_certificate(inst, cert) else "INVALID")
    return 0


def _caps(args):
    return harness.Caps(max_n=args.max_n, max_l=args.max_l)


def cmd_crosscheck(args):
    results = harness.crosscheck(args.name, args.seeds, _caps(args), corrupt=args.corrupt, start=args.start)
    failed = 0
    for r in results:
        status = "pass" if r.ok else "FAIL"
        line = f"seed {r.seed}: {status} in={_fmt_answer(r.answer_in)} out={_fmt_answer(r.answer_out)}"
        if r.oracle is not None:
            line += f" oracle={_fmt_answer(r.oracle)}"
        print(line)
        failed += not r.ok
    print(f"{args.name}: {len(results) - failed}/{len(results)} pass")
    return EXIT_MISMATCH if failed else 0


def cmd_audit(args):
    rows = harness.audit(args.name, args.seeds, _caps(args), start=args.start)
    sys.stdout.write(harness.rows_to_csv(rows, harness.AUDIT_FIELDS))
    bad = sum(1 for r in rows if not r["ok"])
    if bad:
        print(f"{args.name}: {bad} row(s) violate the promised sizes", file=sys.stderr)
    return EXIT_MISMATCH if bad else 0


def cmd_bench(args):
    for name in args.solver:
        if name not in solvers.SOLVERS:
            raise PreconditionError(f"unknown solver {name!r}; known: {', '.join(solvers.SOLVERS)}")
    records = harness.bench(args.n, args.beta, args.alpha, args.variant, tuple(args.solver),
                            args.reps, args.seed, args.C)
    _write(args.output, harness.records_to_csv(records))
    if args.fit:
        for name in args.solver:
            slope = harness.fit_slope(records, name)
            inside = abs(slope - 1.0) <= args.tol
            print(f"{name}: slope {slope:.3f} ({'within' if inside else 'outside'} 1±{args.tol})",
                  file=sys.stderr)
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="rwlab", description="Colored Walk / NFA Acceptance reduction lab")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a random instance")
    g.add_argument("--kind", default="walk", choices=sorted(["walk", "anywalk", "nfa", "cfl", "wordbreak",
                                                              "omv", "ov", "clique"]))
    g.add_argument("--n", type=int, default=8)
    g.add_argument("--alpha", type=float, default=1.5)
    g.add_argument("--beta", type=float, default=1.0)
    g.add_argument("--variant", default="dir-edge", choices=sorted(gen.VARIANTS))
    g.add_argument("--C", type=int, default=2)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output", default="-")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="decide an instance; prints YES or NO")
    s.add_argument("input", nargs="?", default="-")
    s.add_argument("--solver", default="auto", choices=["auto", *solvers.SOLVERS])
    s.set_defaults(func=cmd_solve)

    r = sub.add_parser("reduce", help="apply a reduction and print the report")
    r.add_argument("input", nargs="?", default="-")
    r.add_argument("--name", required=True)
    r.add_argument("--mode", default="two_instance", choices=["two_instance", "block_diagonal"])
    r.add_argument("--k", type=int)
    r.add_argument("--k-prime", type=int)
    r.add_argument("--target-n", type=int)
    r.add_argument("--target-l", type=int)
    r.add_argument("--target-m", type=int)
    r.add_argument("-o", "--output", default="-")
    r.set_defaults(func=cmd_reduce)

    c = sub.add_parser("certify", help="write the frontier certificate of a walk instance")
    c.add_argument("input", nargs="?", default="-")
    c.add_argument("-o", "--output", default="-")
    c.set_defaults(func=cmd_certify)

    v = sub.add_parser("verify", help="check a certificate; prints VALID or INVALID")
    v.add_argument("instance")
    v.add_argument("certificate")
    v.set_defaults(func=cmd_verify)

    for name, func, helptext in (("crosscheck", cmd_crosscheck, "compare answers before and after a reduction"),
                                 ("audit", cmd_audit, "CSV of measured vs promised output sizes")):
        a = sub.add_parser(name, help=helptext)
        a.add_argument("name")
        a.add_argument("--seeds", type=int, default=100)
        a.add_argument("--start", type=int, default=0)
        a.add_argument("--max-n", type=int, default=6)
        a.add_argument("--max-l", type=int, default=6)
        if name == "crosscheck":
            a.add_argument("--corrupt", action="store_true",
                           help="feed the reduction an unrelated input (harness self-test)")
        a.set_defaults(func=func)

    b = sub.add_parser("bench", help="time walk solvers on generated instances")
    b.add_argument("--n", type=int, nargs="+", default=[128, 256, 512])
    b.add_argument("--beta", type=float, nargs="+", default=[1.0])
    b.add_argument("--alpha", type=float, default=2.0)
    b.add_argument("--variant", default="dir-edge", choices=sorted(gen.VARIANTS))
    b.add_argument("--C", type=int, default=2)
    b.add_argument("--solver", nargs="+", default=["dp"])
    b.add_argument("--reps", type=int, default=5)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--fit", action="store_true", help="print the log-log slope of time vs m*l to stderr")
    b.add_argument("--tol", type=float, default=0.2)
    b.add_argument("-o", "--output", default="-")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ValidationError, PreconditionError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"rwlab {args.command}: error: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
