"""Step through unitary reconstruction of a qubit secret from shares 3, 4 and 5."""

import numpy as np

from qssrec import load_five_qubit_code, load_five_qubit_codewords
from qssrec.qstate import labels
from qssrec.reconstruct import build_u_rec, verify_expansion
from qssrec.symplectic import SharePartition, SymplecticVector

code = load_five_qubit_code()
psi = load_five_qubit_codewords()
part = SharePartition(5, (3, 4, 5))

plan = build_u_rec(code, part, psi)
print("ell =", plan.analysis.ell)

# the erased shares 1,2 carry a 4-dimensional code: here just the computational basis
for lab, st in zip(labels(2, 2), plan.erased_basis.states):
    print("phi_Jbar", "".join(map(str, lab)), np.round(st.amps.real, 3))

# every codeword splits as a sum over that basis
print("expansion holds:", bool(verify_expansion(plan)))

# the states left on shares 3,4,5, one per (secret bit, erased label)
for i1 in range(2):
    for b, lab in enumerate(labels(2, 2)):
        amps = plan.phi_J[i1][b].amps
        nz = {format(i, "03b"): round(float(amps[i].real), 3) for i in np.flatnonzero(np.abs(amps) > 1e-12)}
        print(f"phi_J({i1}, {''.join(map(str, lab))}) =", nz)

print("U_rec unitarity error:", plan.unitarity_error())
print("layout: label on", plan.layout.label, "secret on", plan.layout.secret)

rep = plan.reconstruct([0.6, 0.8])
out = rep.output_state.amps
for i in np.flatnonzero(np.abs(out) > 1e-12):
    print(format(i, "05b"), round(float(out[i].real), 3))
print("fidelity of qubit 5 with the secret:", rep.secret_fidelity)

# Paulis on the shares nobody holds make no difference
err = SymplecticVector(code.field, [1, 1, 0, 1] + [0] * 6)
print("fidelity after Y1 Z2:", plan.reconstruct([0.6, 0.8], error=err).secret_fidelity)
