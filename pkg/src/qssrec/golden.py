"""Reproduction of the [[5,1,3]] worked example, one named assertion at a time."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .io import load_five_qubit_code, load_five_qubit_codewords
from .qstate import QuditState, basis_state, eigenphases, state_from_kets, verify_codeword
from .reconstruct import build_u_rec, verify_expansion
from .symplectic import SharePartition, SymplecticVector, analyze, restrict, symplectic_dual

# phi_J(i1, i2 i3) on qubits 3,4,5, each with overall factor 1/2.
PHI_J_TABLE = {
    (0, (0, 0)): {"000": 1, "110": -1, "011": -1, "101": 1},
    (0, (0, 1)): {"001": 1, "010": 1, "111": -1, "100": -1},
    (0, (1, 0)): {"010": 1, "100": 1, "001": -1, "111": -1},
    (0, (1, 1)): {"011": -1, "000": -1, "101": -1, "110": -1},
    (1, (0, 0)): {"100": -1, "111": -1, "010": -1, "001": -1},
    (1, (0, 1)): {"101": 1, "011": 1, "110": -1, "000": -1},
    (1, (1, 0)): {"110": 1, "101": 1, "000": -1, "011": -1},
    (1, (1, 1)): {"111": 1, "001": -1, "100": -1, "010": 1},
}

# (|0000> + |0101> + |1010> + |1111>)/2 on qubits 1-4.
RESIDUAL_KETS = {"0000": 0.5, "0101": 0.5, "1010": 0.5, "1111": 0.5}

J_EXAMPLE = (3, 4, 5)
SECRET_EXAMPLE = (0.6, 0.8)


@dataclass
class GoldenCheck:
    name: str
    passed: bool
    detail: str = ""

    def line(self):
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}" + (f": {self.detail}" if self.detail else "")


def tabulated_phi_J(i1, i23):
    return state_from_kets(2, PHI_J_TABLE[(i1, tuple(i23))]) * 0.5


def run_golden(code=None, codewords=None, tol=1e-9):
    """Run every check; a check that raises is recorded as failed with the error text."""
    code = load_five_qubit_code() if code is None else code
    codewords = load_five_qubit_codewords() if codewords is None else list(codewords)
    part = SharePartition(5, J_EXAMPLE)
    results = []
    ctx = {}

    def check(name):
        def deco(fn):
            try:
                ok, detail = fn()
            except KeyError as exc:
                ok, detail = False, f"needs {exc.args[0]!r} from an earlier failed check"
            except Exception as exc:  # recorded, not raised
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            results.append(GoldenCheck(name, bool(ok), detail))
            return fn
        return deco

    @check("generators span a 4-dimensional self-orthogonal stabilizer")
    def _():
        return code.stabilizer.dim == 4 and code.stabilizer.issubspace(symplectic_dual(code.stabilizer)), \
            f"dim C = {code.stabilizer.dim}, dim C^perp = {symplectic_dual(code.stabilizer).dim}"

    @check("psi(0) and psi(1) are stabilized with the same generator eigenvalues")
    def _():
        ok0 = verify_codeword(code, codewords[0], tol=tol)
        ok1 = verify_codeword(code, codewords[1], tol=tol)
        if not (ok0 and ok1):
            return False, f"psi(0) stabilized={ok0}, psi(1) stabilized={ok1}"
        e0 = eigenphases(code.generators, codewords[0], tol)
        e1 = eigenphases(code.generators, codewords[1], tol)
        return np.allclose(e0, e1, atol=tol) and abs(codewords[0].inner(codewords[1])) <= tol, \
            "eigenvalues " + ", ".join(f"{z.real:+.0f}" for z in e0)

    @check("J={3,4,5} is qualified with ell = 2")
    def _():
        a = analyze(code, part)
        ctx["analysis"] = a
        return a.qualified and a.ell == 2, f"qualified={a.qualified} ell={a.ell}"

    @check("C ∩ F^Jbar and C^perp ∩ F^Jbar are both zero for Jbar={1,2}")
    def _():
        d1 = restrict(code.stabilizer, part.Jbar).dim
        d2 = restrict(symplectic_dual(code.stabilizer), part.Jbar).dim
        return d1 == 0 and d2 == 0, f"dims {d1}, {d2}"

    @check("phi_Jbar basis is |00>, |01>, |10>, |11> in order")
    def _():
        plan = build_u_rec(code, part, codewords, tol=tol)
        ctx["plan"] = plan
        devs = [st.distance_up_to_phase(basis_state(2, lab))
                for st, lab in zip(plan.erased_basis.states, product((0, 1), repeat=2))]
        return len(devs) == 4 and max(devs) <= tol, f"max deviation {max(devs, default=np.inf):.2e}"

    @check("all eight phi_J states match the tabulated list up to global phase")
    def _():
        plan = ctx["plan"]
        worst = 0.0
        for i1, i23 in PHI_J_TABLE:
            b = 2 * i23[0] + i23[1]
            worst = max(worst, tabulated_phi_J(i1, i23).distance_up_to_phase(plan.phi_J[i1][b]))
        return worst <= tol, f"max amplitude deviation {worst:.2e}"

    @check("psi(i) = (1/2) sum_j phi_Jbar(j) ⊗ phi_J(i, j)")
    def _():
        res = verify_expansion(ctx["plan"], tol=tol)
        return res.ok, f"max deviation {res.max_deviation:.2e}"

    @check("U_rec is unitary")
    def _():
        err = ctx["plan"].unitarity_error()
        return err <= tol, f"max |U^dag U - I| = {err:.2e}"

    @check("U_rec phi_J(i1, i2 i3) = |i2 i3>|i1>")
    def _():
        U = ctx["plan"].u_rec
        worst = 0.0
        for i1, i23 in PHI_J_TABLE:
            got = QuditState(2, 3, U @ tabulated_phi_J(i1, i23).amps)
            worst = max(worst, got.distance_up_to_phase(basis_state(2, (*i23, i1))))
        return worst <= tol, f"max deviation {worst:.2e}"

    @check("secret 0.6|0> + 0.8|1> comes out as (1/2)(|0000>+|0101>+|1010>+|1111>) ⊗ secret")
    def _():
        rep = ctx["plan"].reconstruct(np.array(SECRET_EXAMPLE))
        expected = state_from_kets(2, RESIDUAL_KETS).tensor(QuditState(2, 1, SECRET_EXAMPLE))
        dev = float(np.max(np.abs(rep.output_state.amps - expected.amps)))
        ok = dev <= tol and rep.secret_fidelity >= 1 - tol and rep.secret_register == (5,)
        return ok, f"max deviation {dev:.2e}, qubit-5 fidelity {rep.secret_fidelity:.12f}"

    @check("any Pauli error on qubits 1,2 leaves the recovered secret intact")
    def _():
        worst = 1.0
        for coords in product(range(2), repeat=4):
            err = SymplecticVector(code.field, list(coords) + [0] * 6)
            worst = min(worst, ctx["plan"].reconstruct(np.array(SECRET_EXAMPLE), error=err).secret_fidelity)
        return worst >= 1 - tol, f"min fidelity over 16 errors {worst:.12f}"

    return results
