"""Cross-checking, parameter audits and timing for the reductions and solvers.

``REGISTRY`` maps each reduction name to a seeded input generator, the
reduction itself and the solvers for both sides.  ``crosscheck`` compares
answers, ``audit`` compares measured output sizes with the promised closed
forms, and ``bench`` times walk solvers on a grid of generated instances.
"""
from __future__ import annotations

import csv
import io
import os
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from typing import Callable

import numpy as np

from . import generate as gen
from . import oracles, reductions as red, solvers
from .core import WalkInstance


@dataclass(frozen=True)
class Caps:
    max_n: int = 6
    max_l: int = 6


@dataclass(frozen=True)
class Entry:
    make: Callable      # (seed, caps) -> input instance
    reduce: Callable    # input -> ReductionReport
    solve_out: Callable = None  # report -> bool; default solves report.output


def _walk(variant, C=2, min_l=0):
    def make(seed, caps):
        c = C(seed) if callable(C) else C
        return gen.gen_tiny_walk_instance(seed, variant, c, caps.max_n, caps.max_l, min_l=min_l)
    return make


def _pad(inst):
    rng = gen.rng_for(inst.l * 7919 + inst.graph.n)
    extra_l = 2 * int(rng.integers(0, 3)) + 1
    target_n = inst.graph.n + 4 + int(rng.integers(0, 3))
    target_m = inst.graph.m + 3 + int(rng.integers(0, 3))
    return red.pad_instance(inst, target_n=target_n, target_l=inst.l + extra_l, target_m=target_m)


_CLIQUE_SHAPES = [(1, 1), (1, 2), (2, 1)]


def _clique_make(seed, caps):
    k, kp = _CLIQUE_SHAPES[seed % 3]
    return gen.gen_random_clique(seed, max_n=max(caps.max_n, 1), k=2 * k + kp)


def _clique_reduce(inst):
    for k, kp in _CLIQUE_SHAPES:
        if 2 * k + kp == inst.k:
            return red.red_clique_to_nfa(inst, k, kp)
    raise ValueError(f"no gadget shape for k={inst.k}")


def _omv_answer(report):
    return report.extras["answer"]


def _cycle_reduce(inst):
    chain = red.equivalence_cycle(inst)
    last = chain[-1]
    return red.ReductionReport("equivalence_cycle", last.output, chain[0].params_in, last.params_out,
                               (), {"chain": [r.name for r in chain]})


REGISTRY = {
    "red_dirnode2_to_diredge2": Entry(_walk("dir-node"), red.red_dirnode2_to_diredge2),
    "red_diredgeC_to_nfa": Entry(_walk("dir-edge", C=lambda s: 2 + s % 3), red.red_diredgeC_to_nfa),
    "red_nfa_to_dirnodeC": Entry(lambda seed, caps: gen.gen_random_nfa(seed, caps.max_n, 3, caps.max_l),
                                 red.red_nfa_to_dirnodeC),
    "red_dirnodeN_to_dirnode2": Entry(_walk("dir-node", C=lambda s: 3 + s % 6), red.red_dirnodeN_to_dirnode2),
    "red_dirnode2_to_undiredge2": Entry(_walk("dir-node"), red.red_dirnode2_to_undiredge2),
    "red_dirnode2_to_undirnode2": Entry(_walk("dir-node"), red.red_dirnode2_to_undirnode2),
    "red_undirected_to_directed": Entry(
        lambda seed, caps: gen.gen_tiny_walk_instance(
            seed, "undir-edge" if seed % 2 else "undir-node", 2 + seed % 2, caps.max_n, caps.max_l),
        red.red_undirected_to_directed),
    "red_walk_to_anywalk": Entry(_walk("undir-edge"), red.red_walk_to_anywalk),
    "red_anywalk_to_walk": Entry(
        lambda seed, caps: gen.gen_tiny_anywalk_instance(seed, "undir-edge", 2, caps.max_n, caps.max_l),
        red.red_anywalk_to_walk),
    "pad_instance": Entry(_walk("dir-edge"), _pad),
    "red_walk_to_cfl": Entry(_walk("dir-edge", min_l=1), red.red_walk_to_cfl),
    "red_walk_to_wordbreak": Entry(_walk("dir-edge"), red.red_walk_to_wordbreak),
    "red_walk_to_omv": Entry(_walk("dir-edge"), lambda i: red.red_walk_to_omv(i, "two_instance"), _omv_answer),
    "red_walk_to_omv_block": Entry(_walk("dir-edge"), lambda i: red.red_walk_to_omv(i, "block_diagonal"),
                                   _omv_answer),
    "red_ov_to_nfa": Entry(lambda seed, caps: gen.gen_random_ov(seed, 8, caps.max_n), red.red_ov_to_nfa),
    "red_clique_to_nfa": Entry(_clique_make, _clique_reduce),
    "equivalence_cycle": Entry(_walk("dir-node"), _cycle_reduce),
}

# the constructions every registry must cover
REQUIRED = {
    "red_dirnode2_to_diredge2", "red_diredgeC_to_nfa", "red_nfa_to_dirnodeC", "red_dirnodeN_to_dirnode2",
    "red_dirnode2_to_undiredge2", "red_dirnode2_to_undirnode2", "red_undirected_to_directed",
    "red_walk_to_anywalk", "red_anywalk_to_walk", "pad_instance", "red_walk_to_cfl",
    "red_walk_to_wordbreak", "red_walk_to_omv", "red_walk_to_omv_block", "red_ov_to_nfa", "red_clique_to_nfa",
}
assert REQUIRED <= set(REGISTRY), f"registry misses {REQUIRED - set(REGISTRY)}"


CORRUPT_OFFSET = 1_000_003


def _corrupt(name, seed, caps):
    """Input of an unrelated seed, used to self-test that the harness notices a wrong reduction."""
    return REGISTRY[name].make(seed + CORRUPT_OFFSET, caps)


@dataclass(frozen=True)
class SeedResult:
    seed: int
    ok: bool
    answer_in: bool
    answer_out: bool
    oracle: object
    message: str = ""


def check_seed(name, seed, caps=Caps(), corrupt=False) -> SeedResult:
    entry = REGISTRY[name]
    inst = entry.make(seed, caps)
    report = entry.reduce(_corrupt(name, seed, caps) if corrupt else inst)
    a_in = bool(solvers.solve(inst))
    a_out = bool(entry.solve_out(report) if entry.solve_out else solvers.solve(report.output))
    oracle = None
    if isinstance(inst, WalkInstance) and inst.graph.n <= 8 and inst.l <= 8:
        oracle = oracles.walk_enum_oracle(inst)
    ok = a_in == a_out and (oracle is None or oracle == a_in)
    msg = "" if ok else f"in={a_in} out={a_out} oracle={oracle}"
    return SeedResult(seed, ok, a_in, a_out, oracle, msg)


def _check_seed_star(args):
    return check_seed(*args)


def _workers():
    try:
        return max(1, int(os.environ.get("RW_LAB_THREADS", "1")))
    except ValueError:
        return 1


def crosscheck(name, seeds, caps=Caps(), corrupt=False, start=0):
    if name not in REGISTRY:
        raise KeyError(f"unknown reduction {name!r}; known: {', '.join(sorted(REGISTRY))}")
    jobs = [(name, s, caps, corrupt) for s in range(start, start + seeds)]
    workers = _workers()
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_check_seed_star, jobs, chunksize=8))
    return [check_seed(*job) for job in jobs]


# -- audit ----------------------------------------------------------------------

AUDIT_FIELDS = ["reduction", "seed", "params_in", "params_out", "bound", "ok"]


def _kv(d):
    return " ".join(f"{k}={v}" for k, v in d.items())


def audit_report(report):
    return report.violations()


def audit(name, seeds, caps=Caps(), start=0):
    """One row per seed: measured sizes against the construction's closed forms."""
    if name not in REGISTRY:
        raise KeyError(f"unknown reduction {name!r}; known: {', '.join(sorted(REGISTRY))}")
    entry = REGISTRY[name]
    rows = []
    for seed in range(start, start + seeds):
        report = entry.reduce(entry.make(seed, caps))
        bad = report.violations()
        rows.append({
            "reduction": name, "seed": seed,
            "params_in": _kv(report.params_in), "params_out": _kv(report.params_out),
            "bound": report.bound_expr, "ok": int(not bad),
        })
    return rows


def rows_to_csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


# -- bench ----------------------------------------------------------------------

@dataclass(frozen=True)
class BenchRecord:
    solver: str
    n: int
    m: int
    l: int
    variant: str
    seed: int
    time_ns: int
    answer: str


BENCH_FIELDS = [f.name for f in fields(BenchRecord)]
MEMORY_LIMIT_BYTES = 2 * 1024**3


def _cell_bytes(solver, n, m):
    if solver == "dp":
        return 64 * (n + m)
    return 8 * n * n  # dense matrices for the product baselines


def time_solver(fn, inst, reps):
    """Median wall time over ``reps`` runs, discarding the first as warm-up."""
    times, answer = [], None
    for _ in range(reps):
        t0 = time.perf_counter_ns()
        answer = fn(inst)
        times.append(max(1, time.perf_counter_ns() - t0))
    kept = times[1:] if len(times) > 1 else times
    return int(statistics.median(kept)), bool(answer)


def bench(ns, betas=(1.0,), alpha=2.0, variant="dir-edge", solver_names=("dp",), reps=5, seed=0, C=2):
    records = []
    for n in ns:
        for beta in betas:
            inst = gen.gen_random_walk_instance(n, alpha, beta, C, variant, seed)
            for name in solver_names:
                if _cell_bytes(name, n, inst.graph.m) > MEMORY_LIMIT_BYTES:
                    records.append(BenchRecord(name, n, inst.graph.m, inst.l, variant, seed, 0, "SKIP"))
                    continue
                t, ans = time_solver(solvers.SOLVERS[name], inst, reps)
                records.append(BenchRecord(name, n, inst.graph.m, inst.l, variant, seed, t,
                                           "YES" if ans else "NO"))
    return records


def fit_slope(records, solver="dp") -> float:
    """Least-squares slope of log(time) against log(m * l)."""
    pts = [(r.m * r.l, r.time_ns) for r in records if r.solver == solver and r.answer != "SKIP"]
    if len(pts) < 2:
        raise ValueError("need at least two timed cells to fit a slope")
    x = np.log([p[0] for p in pts])
    y = np.log([p[1] for p in pts])
    return float(np.polyfit(x, y, 1)[0])


def records_to_csv(records) -> str:
    return rows_to_csv([asdict(r) for r in records], BENCH_FIELDS)
