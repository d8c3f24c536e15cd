import itertools

import numpy as np
import pytest

from rwlab import generate as gen
from rwlab.core import ParseError, PreconditionError, WalkInstance
from rwlab.solvers import solve_walk_dp
from rwlab.verifier import (
    Certificate, build_certificate, color_adjacency_matrices, parse_certificate,
    serialize_certificate, verify_certificate, verify_certificate_stepwise,
)


def test_i0_certificate(i0):
    cert = build_certificate(i0)
    assert cert.xs.astype(int).tolist() == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert cert.claim is True and verify_certificate(i0, cert)


def test_zero_length_certificate(i0):
    for s, t in [(1, 1), (1, 2)]:
        inst = WalkInstance(i0.graph, s, t, [])
        cert = build_certificate(inst)
        assert cert.xs.shape == (1, 3) and cert.claim == (s == t)
        assert verify_certificate(inst, cert)


def test_claim_swap_rejected(i0):
    cert = build_certificate(i0)
    assert not verify_certificate(i0, Certificate(cert.xs, not cert.claim))


def test_color_matrices_are_disjoint():
    inst = gen.gen_random_walk_instance(12, 1.8, 1, 2, "dir-edge", 4)
    A = color_adjacency_matrices(inst)
    assert not (A[1] & A[2]).any()
    assert int(A[1].sum() + A[2].sum()) == inst.graph.m


def test_completeness_and_claims():
    claims = set()
    for seed in range(100):
        inst = gen.gen_tiny_walk_instance(seed, "dir-edge", max_n=8, max_l=8)
        cert = build_certificate(inst)
        assert cert.claim == solve_walk_dp(inst)
        assert verify_certificate(inst, cert)
        claims.add(cert.claim)
    assert claims == {True, False}


def test_single_bit_tampering_rejected():
    for seed in range(40):
        inst = gen.gen_tiny_walk_instance(seed, "dir-edge", max_n=5, max_l=4)
        honest = build_certificate(inst)
        for i, v in itertools.product(range(honest.xs.shape[0]), range(honest.xs.shape[1])):
            xs = honest.xs.copy()
            xs[i, v] ^= True
            assert not verify_certificate(inst, Certificate(xs, honest.claim))
            assert not verify_certificate(inst, Certificate(xs, not honest.claim))


def test_batched_equals_stepwise():
    rng = np.random.default_rng(9)
    for seed in range(100):
        inst = gen.gen_tiny_walk_instance(seed, "dir-edge", max_n=6, max_l=12)
        honest = build_certificate(inst)
        xs = honest.xs.copy()
        if seed % 3:
            xs ^= rng.random(xs.shape) < 0.1
        cert = Certificate(xs, bool(rng.integers(0, 2)) if seed % 2 else honest.claim)
        assert verify_certificate(inst, cert) == verify_certificate_stepwise(inst, cert)


def test_long_sequences_use_several_blocks():
    inst = gen.gen_random_walk_instance(4, 1.5, 2.5, 2, "dir-edge", 1)  # l = 32 > n
    cert = build_certificate(inst)
    assert verify_certificate(inst, cert)
    xs = cert.xs.copy()
    xs[-2] ^= True
    assert not verify_certificate(inst, Certificate(xs, cert.claim))


def test_preconditions(i0, j0):
    with pytest.raises(PreconditionError):
        build_certificate(j0)
    with pytest.raises(PreconditionError):
        verify_certificate(i0, Certificate(np.zeros((2, 3), dtype=bool), False))


def test_file_round_trip(i0):
    cert = build_certificate(i0)
    text = serialize_certificate(cert)
    assert text == "certificate n=3 l=2 claim=1\n100\n010\n001\n"
    assert parse_certificate(text) == cert
    with pytest.raises(ParseError):
        parse_certificate("certificate n=3 l=2 claim=1\n100\n01\n001\n")
    with pytest.raises(ParseError):
        parse_certificate("certificate n=3 l=2 claim=1\n100\n")


def test_certificate_is_read_only(i0):
    cert = build_certificate(i0)
    with pytest.raises(ValueError):
        cert.xs[0, 0] = False
