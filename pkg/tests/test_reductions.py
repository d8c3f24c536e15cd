import numpy as np
import pytest

from rwlab import generate as gen, oracles, reductions as red
from rwlab.core import (
    AnyWalkInstance, CliqueInstance, ColoredGraph, Nfa, NfaInstance, OvInstance,
    PreconditionError, WalkInstance,
)
from rwlab.harness import REGISTRY, Caps, audit, crosscheck
from rwlab.io import parse_instance
from rwlab.solvers import (
    cfl_reach_solve, nfa_accepts, solve, solve_anywalk, solve_uniform_color_power, solve_walk_dp,
    walk_frontiers, word_break_solve,
)
from rwlab.verifier import build_certificate

from _support import gadget_forcing_failures


def answer(report):
    return solve(report.output)


def test_dirnode_to_diredge_on_j0(j0):
    r = red.red_dirnode2_to_diredge2(j0)
    g = r.output.graph
    assert (g.edge_color(0, 1), g.edge_color(1, 2)) == (2, 1)
    assert solve_walk_dp(j0) and oracles.walk_enum_oracle(r.output)
    assert r.params_out == r.params_in and not r.violations()


def test_dirnode_to_diredge_empty_seq(j0):
    for s, t in [(0, 0), (0, 2)]:
        inst = WalkInstance(j0.graph, s, t, [])
        assert answer(red.red_dirnode2_to_diredge2(inst)) == (s == t)


def test_diredge_to_nfa(i0):
    r = red.red_diredgeC_to_nfa(i0)
    nfa = r.output.nfa
    assert (nfa.n_states, nfa.sigma, nfa.q0, nfa.accept) == (3, 2, 0, frozenset({2}))
    assert nfa_accepts(r.output)
    assert nfa_accepts(red.red_diredgeC_to_nfa(WalkInstance(i0.graph, 1, 1, [])).output)


def test_nfa_to_dirnode_loop_removal():
    nfa = Nfa(1, 1, {(0, 1, 0)}, 0, {0})
    r = red.red_nfa_to_dirnodeC(nfa, [1, 1])
    assert solve_walk_dp(r.output) and oracles.walk_enum_oracle(r.output)
    assert not any(u == v for u, v in r.output.graph.edges)
    assert not r.violations()


def test_nfa_to_dirnode_empty_word():
    for accept in ({0}, {1}):
        r = red.red_nfa_to_dirnodeC(Nfa(2, 2, {(0, 1, 1)}, 0, accept), [])
        assert r.output.seq == (1,)
        assert solve_walk_dp(r.output) == (0 in accept)


def test_nfa_to_dirnode_sizes_are_exact():
    nfa = Nfa(3, 2, {(0, 1, 1), (1, 2, 2), (2, 2, 2)}, 0, {2, 0})
    r = red.red_nfa_to_dirnodeC(nfa, [1, 2])
    assert r.params_out == {"n": 7 * 2, "m": 2 * (3 + 2) * 2, "l": 3}


def test_dirnodeN_binary_encoding():
    g = ColoredGraph.build(True, 2, [(0, 1)], "node", 4, [1, 3])
    r = red.red_dirnodeN_to_dirnode2(WalkInstance(g, 0, 1, [3]))
    assert r.extras["B"] == 2
    assert r.output.seq == (2, 1)  # 3 - 1 = 0b10
    assert solve_walk_dp(r.output) and oracles.walk_enum_oracle(r.output)


def test_dirnodeN_with_two_colors_is_a_renaming(j0):
    r = red.red_dirnodeN_to_dirnode2(j0)
    assert r.extras["B"] == 1 and r.output == j0


def test_dirnodeN_with_five_colors():
    inst = gen.gen_tiny_walk_instance(3, "dir-node", C=5, min_n=2)
    r = red.red_dirnodeN_to_dirnode2(inst)
    assert r.extras["B"] == 3 and r.output.l == 3 * inst.l
    with pytest.raises(PreconditionError):
        red.red_dirnodeN_to_dirnode2(gen.gen_tiny_walk_instance(3, "dir-node", C=1))


@pytest.mark.parametrize("reduce", [red.red_dirnode2_to_undiredge2, red.red_dirnode2_to_undirnode2])
def test_undirected_gadgets_on_j0(j0, reduce):
    r = reduce(j0)
    assert r.params_out == {"n": 18, "m": 2 + 15, "l": 12}
    assert oracles.walk_enum_oracle(r.output) == solve_walk_dp(j0) is True
    empty = reduce(WalkInstance(j0.graph, 1, 1, []))
    assert empty.output.seq == () and solve_walk_dp(empty.output)


@pytest.mark.parametrize("reduce", [red.red_dirnode2_to_undiredge2, red.red_dirnode2_to_undirnode2])
def test_reverse_walk_probe(reduce):
    # u -> v and v -> u with different colors: a gadget must not be walked backwards
    g = ColoredGraph.build(True, 2, [(0, 1), (1, 0)], "node", 2, [1, 2])
    for s in (0, 1):
        for t in (0, 1):
            for seq in ([1], [2], [1, 2], [2, 1], [2, 2], [1, 1]):
                inst = WalkInstance(g, s, t, seq)
                assert oracles.walk_enum_oracle(reduce(inst).output) == oracles.walk_enum_oracle(inst)


def test_audit_row_for_undirected_gadget():
    rows = [r for r in audit("red_dirnode2_to_undiredge2", 60) if r["params_in"] == "n=5 m=8 l=3"]
    g = ColoredGraph.build(True, 5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2), (1, 3), (2, 4)],
                           "node", 2, [1, 2, 1, 2, 1])
    r = red.red_dirnode2_to_undiredge2(WalkInstance(g, 0, 4, [1, 2, 1]))
    assert r.params_out == {"n": 30, "m": 33, "l": 18}
    assert all(row["ok"] for row in rows)


@pytest.mark.parametrize("node_colored", [False, True])
def test_gadget_forcing(node_colored):
    for seed in range(20):
        inst = gen.gen_tiny_walk_instance(seed, "dir-node", C=2, max_n=6, min_n=2)
        assert gadget_forcing_failures(inst, node_colored) == []


def test_undirected_to_directed():
    g = ColoredGraph.build(False, 2, [(0, 1)], "edge", 1, [1])
    r = red.red_undirected_to_directed(WalkInstance(g, 0, 1, [1]))
    assert r.params_out["m"] == 2 and answer(r)
    r = red.red_undirected_to_directed(WalkInstance(g, 0, 0, [1, 1]))
    assert answer(r) and oracles.walk_enum_oracle(r.output)


def test_walk_to_anywalk(i0):
    g = ColoredGraph.build(False, 2, [(0, 1)], "edge", 2, [1])
    for s, t in [(0, 0), (0, 1)]:
        r = red.red_walk_to_anywalk(WalkInstance(g, s, t, []))
        assert r.output.seq == (3, 4)
        assert solve_anywalk(r.output) == (s == t)
    gi = ColoredGraph.build(False, 3, i0.graph.edges, "edge", 2, i0.graph.colors)
    inst = WalkInstance(gi, 0, 2, [1, 2])
    assert solve_anywalk(red.red_walk_to_anywalk(inst).output) == solve_walk_dp(inst)


def test_anywalk_to_walk():
    g = ColoredGraph.build(False, 2, [(0, 1)], "edge", 1, [1])
    assert answer(red.red_anywalk_to_walk(AnyWalkInstance(g, [1])))
    r = red.red_anywalk_to_walk(AnyWalkInstance(g, []))
    assert answer(r) and r.params_out == {"n": 4, "m": 5, "l": 2}


def test_pad_vertices_only(i0):
    r = red.pad_instance(i0, target_n=10)
    assert r.params_out == {"n": 10, "m": 3, "l": 2} and answer(r)


def test_pad_length(i0):
    r = red.pad_instance(i0, target_l=7)
    assert r.output.l == 7 and r.output.seq == (1, 1, 1, 1, 2, 1, 2)
    assert oracles.walk_enum_oracle(r.output) is True
    no = WalkInstance(i0.graph, 0, 2, [2, 2])
    assert oracles.walk_enum_oracle(red.pad_instance(no, target_l=5).output) is False
    with pytest.raises(PreconditionError, match="odd"):
        red.pad_instance(i0, target_l=6)


def test_pad_edges(i0):
    r = red.pad_instance(i0, target_n=9, target_l=5, target_m=10)
    assert r.params_out == {"n": 9, "m": 10, "l": 5} and not r.violations()
    with pytest.raises(PreconditionError):
        red.pad_instance(i0, target_n=5, target_l=5, target_m=40)


def test_walk_to_cfl(i0):
    r = red.red_walk_to_cfl(i0)
    assert r.output.graph.n == 5 and cfl_reach_solve(r.output)
    g = ColoredGraph.build(True, 2, [(0, 1)], "edge", 2, [2])
    assert not cfl_reach_solve(red.red_walk_to_cfl(WalkInstance(g, 0, 1, [1])).output)
    with pytest.raises(PreconditionError):
        red.red_walk_to_cfl(WalkInstance(g, 0, 0, []))


def test_walk_to_wordbreak_on_i0(i0):
    r = red.red_walk_to_wordbreak(i0)
    wb = r.output
    assert wb.text == (0, 1, 0, 0, 0, 2)
    # one word 0^u c 0^(n-v) per edge, 1-based endpoints
    assert set(wb.dictionary) == {(0, 1, 0), (0, 0, 2), (0, 2)}
    assert word_break_solve(wb) is True and r.params_out == {"N": 6, "M": 8}


def test_walk_to_wordbreak_single_step():
    g = ColoredGraph.build(True, 3, [(0, 2), (1, 2)], "edge", 2, [1, 2])
    r = red.red_walk_to_wordbreak(WalkInstance(g, 0, 2, [1]))
    assert r.output.text in r.output.dictionary and word_break_solve(r.output)


def test_walk_to_wordbreak_empty_seq(i0):
    for s, t in [(0, 0), (0, 2)]:
        assert word_break_solve(red.red_walk_to_wordbreak(WalkInstance(i0.graph, s, t, [])).output) == (s == t)


@pytest.mark.parametrize("mode", ["two_instance", "block_diagonal"])
def test_omv_on_i0(i0, mode):
    r = red.red_walk_to_omv(i0, mode)
    assert r.extras["answer"] is True
    assert r.params_out["rounds_used"] == 2
    if mode == "two_instance":
        assert r.extras["rounds_used"] == {1: 1, 2: 1}
    assert not r.violations()


@pytest.mark.parametrize("mode", ["two_instance", "block_diagonal"])
def test_omv_trace_equals_dp_frontiers_and_certificate(mode):
    for seed in range(80):
        inst = gen.gen_tiny_walk_instance(seed, "dir-edge", max_n=7, max_l=7)
        r = red.red_walk_to_omv(inst, mode)
        xs = walk_frontiers(inst)
        n = inst.graph.n
        assert len(r.extras["trace"]) == len(xs)
        for u, x in zip(r.extras["trace"], xs):
            assert (u[:n] == x).all() and not u[n:].any()
        cert = build_certificate(inst)
        assert np.array_equal(np.array([u[:n] for u in r.extras["trace"]]).reshape(cert.xs.shape), cert.xs)


def test_omv_uniform_sequence_matches_power():
    for seed in range(40):
        inst = gen.gen_tiny_walk_instance(seed, "dir-edge", max_n=7, max_l=7)
        uni = WalkInstance(inst.graph, inst.s, inst.t, [2] * inst.l)
        assert red.red_walk_to_omv(uni).extras["answer"] == solve_uniform_color_power(uni)


def test_ov_examples():
    assert nfa_accepts(red.red_ov_to_nfa(OvInstance([[0]], [[1]], 1)).output)
    assert not nfa_accepts(red.red_ov_to_nfa(OvInstance([[1]], [[1]], 1)).output)
    r = red.red_ov_to_nfa(OvInstance([[1, 0], [0, 0]], [[1, 1], [0, 1], [1, 0]], 2))
    assert r.params_out == {"n": 2 + 2 * 3, "m": 6 + 2 * 4 + 3, "l": 1 + 3 * 3}


def test_clique_examples():
    tri = CliqueInstance(3, [(0, 1), (1, 2), (0, 2)], 3)
    path = CliqueInstance(3, [(0, 1), (1, 2)], 3)
    assert nfa_accepts(red.red_clique_to_nfa(tri, 1, 1).output)
    assert not nfa_accepts(red.red_clique_to_nfa(path, 1, 1).output)
    empty = red.red_clique_to_nfa(CliqueInstance(3, [], 4), 1, 2)
    assert empty.output.word == (3,) and not nfa_accepts(empty.output)
    with pytest.raises(PreconditionError):
        red.red_clique_to_nfa(tri, 1, 2)


def test_node_ids():
    assert red.node_id_bits(1) == 1 and red.node_id_bits(2) == 1
    assert red.node_id_bits(5) == 3 and red.node_id_bits(8) == 3
    assert red.node_id(5, 3) == (2, 1, 2)


def test_equivalence_cycle(j0):
    chain = red.equivalence_cycle(j0)
    assert [r.name for r in chain] == ["red_dirnode2_to_diredge2", "red_diredgeC_to_nfa",
                                       "red_nfa_to_dirnodeC", "red_dirnodeN_to_dirnode2"]
    assert solve_walk_dp(chain[-1].output) == solve_walk_dp(j0)


@pytest.mark.parametrize("name", sorted(REGISTRY))
def test_registry_answers_and_sizes(name):
    results = crosscheck(name, 40, Caps(max_n=5, max_l=5))
    assert all(r.ok for r in results), [r for r in results if not r.ok]
    assert all(row["ok"] for row in audit(name, 40))


@pytest.mark.parametrize("name", sorted(REGISTRY))
def test_corrupted_inputs_are_caught(name):
    assert not all(r.ok for r in crosscheck(name, 60, corrupt=True))


def test_report_serialization_parses_back(i0):
    for r in [red.red_walk_to_wordbreak(i0), red.red_walk_to_cfl(i0), red.red_diredgeC_to_nfa(i0)]:
        text = red.serialize_report(r)
        assert text.startswith(f"# reduction {r.name} params_in n=3 m=3 l=2 params_out ")
        assert parse_instance(text) == r.output
    two = red.serialize_report(red.red_walk_to_omv(i0))
    parts = two.split("%%\n")
    assert len(parts) == 2 and all(parse_instance(p).N == 3 for p in parts)
