"""Acceptance suite: seven criteria, one pass/fail line each.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python3 tests/test_acceptance.py``.  Each criterion prints
``[criterion N] PASS|FAIL <summary> (<seconds>s)`` even under pytest's
output capture.
"""
from __future__ import annotations

import itertools
import math
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from rwlab import generate as gen, oracles, reductions as red  # noqa: E402
from rwlab.harness import REGISTRY, Caps, audit, bench, crosscheck, fit_slope  # noqa: E402
from rwlab.solvers import nfa_accepts, solve_walk_dp  # noqa: E402
from rwlab.verifier import (  # noqa: E402
    Certificate, build_certificate, verify_certificate, verify_certificate_stepwise,
)

from _support import gadget_forcing_failures  # noqa: E402

EQUIVALENCE_WEB = [
    "red_dirnode2_to_diredge2", "red_diredgeC_to_nfa", "red_nfa_to_dirnodeC", "red_dirnodeN_to_dirnode2",
    "red_dirnode2_to_undiredge2", "red_dirnode2_to_undirnode2", "red_undirected_to_directed",
    "red_walk_to_anywalk", "red_anywalk_to_walk", "pad_instance",
]
CROSS_PROBLEM = ["red_walk_to_cfl", "red_walk_to_wordbreak", "red_walk_to_omv", "red_walk_to_omv_block",
                 "red_ov_to_nfa", "red_clique_to_nfa"]


def report(capsys, number, ok, summary, elapsed):
    line = f"[criterion {number}] {'PASS' if ok else 'FAIL'} {summary} ({elapsed:.1f}s)"
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)
    return line


# -- 1: solver / oracle equivalence ----------------------------------------------

def criterion_1(seeds=500):
    """DP vs walk enumeration on 8 walk variants, NFA simulation vs run enumeration."""
    mismatches, count = [], 0
    for variant in sorted(gen.VARIANTS):
        for label, colors in (("C=2", lambda s: 2), ("C=3,4", lambda s: 3 + s % 2)):
            for seed in range(seeds):
                inst = gen.gen_tiny_walk_instance(seed, variant, colors(seed), max_n=8, max_l=8)
                count += 1
                if solve_walk_dp(inst) != oracles.walk_enum_oracle(inst):
                    mismatches.append((variant, label, seed))
    for seed in range(seeds):
        inst = gen.gen_random_nfa(seed, max_states=5, max_sigma=4, max_len=8)
        count += 1
        if nfa_accepts(inst) != oracles.nfa_enum_oracle(inst):
            mismatches.append(("nfa", seed))
    return not mismatches, f"{count} instances over 9 variants, {len(mismatches)} mismatches", mismatches


# -- 2: equivalence web ------------------------------------------------------------

def criterion_2(seeds=200):
    bad = {}
    for name in EQUIVALENCE_WEB + ["equivalence_cycle"]:
        results = crosscheck(name, seeds, Caps(max_n=6, max_l=6))
        fails = [r.seed for r in results if not r.ok]
        if fails or len(results) < seeds:
            bad[name] = fails
    return not bad, f"{len(EQUIVALENCE_WEB)} reductions + cycle x {seeds} seeds, failing: {sorted(bad) or 'none'}", bad


# -- 3: gadget forcing -----------------------------------------------------------------

def criterion_3(graphs=50):
    problems = []
    for node_colored in (False, True):
        for seed in range(graphs):
            inst = gen.gen_tiny_walk_instance(10_000 + seed, "dir-node", C=2, max_n=7, min_n=2)
            problems += [(node_colored, seed, p) for p in gadget_forcing_failures(inst, node_colored)]
    return not problems, f"{2 * graphs} reduced graphs, every v_in enumerated, {len(problems)} violations", problems


# -- 4: cross-problem reductions ---------------------------------------------------------

def criterion_4(seeds=100):
    bad = {}
    for name in CROSS_PROBLEM:
        results = crosscheck(name, seeds, Caps(max_n=6, max_l=6))
        fails = [r.seed for r in results if not r.ok]
        if fails:
            bad[name] = fails
    return not bad, f"{len(CROSS_PROBLEM)} reductions x {seeds} seeds, failing: {sorted(bad) or 'none'}", bad


# -- 5: parameter accounting ---------------------------------------------------------------

def _literal_checks(seeds):
    """The headline closed forms, recomputed here from the input parameters."""
    out = {"cfl n'=n+l": 0, "wordbreak M=m(n+1)": 0, "undirected n'=6n,m'=m+5n,l'=6l": 0,
           "node-N l'=l*ceil(log2 C)": 0}
    for seed in range(seeds):
        walk = gen.gen_tiny_walk_instance(seed, "dir-edge", max_n=6, max_l=6, min_l=1)
        n, m, l = walk.graph.n, walk.graph.m, walk.l
        if red.red_walk_to_cfl(walk).params_out["n"] != n + l:
            out["cfl n'=n+l"] += 1
        if red.red_walk_to_wordbreak(walk).params_out["M"] != m * (n + 1):
            out["wordbreak M=m(n+1)"] += 1
        node = gen.gen_tiny_walk_instance(seed, "dir-node", max_n=6, max_l=6)
        n, m, l = node.graph.n, node.graph.m, node.l
        for reduce in (red.red_dirnode2_to_undiredge2, red.red_dirnode2_to_undirnode2):
            if reduce(node).params_out != {"n": 6 * n, "m": m + 5 * n, "l": 6 * l}:
                out["undirected n'=6n,m'=m+5n,l'=6l"] += 1
        C = 3 + seed % 6
        wide = gen.gen_tiny_walk_instance(seed, "dir-node", C=C, max_n=6, max_l=6)
        if red.red_dirnodeN_to_dirnode2(wide).params_out["l"] != wide.l * math.ceil(math.log2(C)):
            out["node-N l'=l*ceil(log2 C)"] += 1
    return out


def criterion_5(seeds=100):
    audit_bad = {}
    for name in sorted(REGISTRY):
        rows = audit(name, seeds)
        fails = [r["seed"] for r in rows if not r["ok"]]
        if fails:
            audit_bad[name] = fails
    literal = _literal_checks(seeds)
    literal_bad = {k: v for k, v in literal.items() if v}
    ok = not audit_bad and not literal_bad
    summary = (f"audit of {len(REGISTRY)} reductions x {seeds} seeds: "
               f"{'all rows ok' if not audit_bad else 'violations in ' + ', '.join(sorted(audit_bad))}; "
               f"headline forms: " + ", ".join(f"{k} off on {v}/{seeds}" for k, v in literal.items()))
    return ok, summary, {"audit": audit_bad, "literal": literal}


# -- 6: verifier -----------------------------------------------------------------------------

def criterion_6(honest=300, tiny=400, random_certs=300):
    problems = []
    for seed in range(honest):
        inst = gen.gen_tiny_walk_instance(seed, "dir-edge", max_n=10, max_l=10)
        cert = build_certificate(inst)
        if not verify_certificate(inst, cert) or cert.claim != solve_walk_dp(inst):
            problems.append(("completeness", seed))
    tampers = 0
    for seed in range(tiny):
        inst = gen.gen_tiny_walk_instance(20_000 + seed, "dir-edge", max_n=5, max_l=4)
        good = build_certificate(inst)
        if verify_certificate(inst, Certificate(good.xs, not good.claim)):
            problems.append(("claim swap", seed))
        for i, v in itertools.product(*map(range, good.xs.shape)):
            xs = good.xs.copy()
            xs[i, v] ^= True
            for claim in (good.claim, not good.claim):
                tampers += 1
                if verify_certificate(inst, Certificate(xs, claim)):
                    problems.append(("soundness", seed, i, v))
    rng = np.random.Generator(np.random.Philox(6))
    for seed in range(random_certs):
        inst = gen.gen_tiny_walk_instance(30_000 + seed, "dir-edge", max_n=6, max_l=14)
        xs = build_certificate(inst).xs.copy()
        xs ^= rng.random(xs.shape) < [0.0, 0.05, 0.3][seed % 3]
        cert = Certificate(xs, bool(rng.integers(0, 2)))
        if verify_certificate(inst, cert) != verify_certificate_stepwise(inst, cert):
            problems.append(("batched != stepwise", seed))
    summary = f"{honest} honest, {tampers} tampered over {tiny} tiny instances, {random_certs} batched-vs-stepwise; " \
              f"{len(problems)} problems"
    return not problems, summary, problems


# -- 7: scaling benchmark ------------------------------------------------------------------------

def criterion_7(ns=(128, 256, 512), reps=5):
    records = bench(ns, betas=(1.0,), alpha=2.0, variant="dir-edge", solver_names=("dp", "matrix_chain"),
                    reps=reps, seed=0)
    slope = fit_slope(records, "dp")
    by = {(r.solver, r.n): r for r in records}
    slower = all(by["matrix_chain", n].time_ns > by["dp", n].time_ns for n in ns if n >= 256)
    agree = all(by["matrix_chain", n].answer == by["dp", n].answer for n in ns)
    ok = 0.8 <= slope <= 1.2 and slower and agree
    ratios = ", ".join(f"n={n}: chain/dp={by['matrix_chain', n].time_ns / by['dp', n].time_ns:.1f}" for n in ns)
    return ok, f"dp slope {slope:.3f} (want [0.8, 1.2]); {ratios}; answers agree={agree}", records


CRITERIA = [(1, criterion_1, 60), (2, criterion_2, None), (3, criterion_3, None), (4, criterion_4, 300),
            (5, criterion_5, None), (6, criterion_6, None), (7, criterion_7, 600)]


def run_one(number, fn, budget, capsys=None):
    t0 = time.perf_counter()
    ok, summary, detail = fn()
    elapsed = time.perf_counter() - t0
    if budget is not None and elapsed > budget:
        ok = False
        summary += f"; runtime {elapsed:.0f}s exceeds {budget}s"
    report(capsys, number, ok, summary, elapsed)
    return ok, summary, detail


@pytest.mark.slow
@pytest.mark.parametrize("number, fn, budget", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, fn, budget, capsys):
    ok, summary, detail = run_one(number, fn, budget, capsys)
    assert ok, f"{summary}\n{detail if not isinstance(detail, list) or len(detail) < 20 else detail[:20]}"


if __name__ == "__main__":
    results = [run_one(*c)[0] for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
