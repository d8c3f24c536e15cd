"""Frontier certificates: cheap to check, impossible to fake.

A certificate lists x_0 .. x_l.  The verifier checks all steps of one
color with a single boolean matrix product, so a certificate for a long
sequence costs about l/n square products per color.
"""
import numpy as np

from rwlab import generate as gen
from rwlab.verifier import (
    Certificate, build_certificate, serialize_certificate, verify_certificate,
)

inst = gen.gen_random_walk_instance(6, 1.6, 1.2, 2, "dir-edge", seed=6)
cert = build_certificate(inst)
print(serialize_certificate(cert))
print("honest certificate:", verify_certificate(inst, cert))

# flip every bit once; each tampered certificate must be rejected
rejected = 0
for i in range(cert.xs.shape[0]):
    for v in range(cert.xs.shape[1]):
        xs = cert.xs.copy()
        xs[i, v] = not xs[i, v]
        rejected += not verify_certificate(inst, Certificate(xs, cert.claim))
print(f"single-bit tampers rejected: {rejected}/{cert.xs.size}")

# lying about the answer with the honest vectors also fails
print("claim flipped:", verify_certificate(inst, Certificate(cert.xs, not cert.claim)))
print("frontier sizes:", np.sum(cert.xs, axis=1).tolist())
