"""A random qutrit code encoding two secret qutrits: ramp behaviour and reconstruction."""

import numpy as np

from qssrec import GF
from qssrec.oracle import full_access_structure
from qssrec.reconstruct import build_u_rec
from qssrec.symplectic import SharePartition, random_stabilizer_code

rng = np.random.default_rng(1)
F = GF(3)

# keep drawing until the code has sets that are neither qualified nor forbidden
for attempt in range(50):
    code = random_stabilizer_code(F, 4, 2, rng)
    report = full_access_structure(code)
    if report.intermediate_sets():
        break
print("generators:")
for g in code.generators:
    print(" ", list(map(int, g.coords)))

print("qualified:", report.qualified_sets())
print("forbidden:", report.forbidden_sets())
print("intermediate:", report.intermediate_sets())
print("consistent:", report.consistent)

J = min(report.qualified_sets(), key=len)
plan = build_u_rec(code, SharePartition(4, J))
secret = rng.normal(size=9) + 1j * rng.normal(size=9)
secret /= np.linalg.norm(secret)
rep = plan.reconstruct(secret)
print(f"J={J} ell={plan.analysis.ell} secret on qudits {rep.secret_register}")
print("fidelity:", rep.secret_fidelity, "purity:", rep.purity_of_secret_register)
