"""Unitary reconstruction of the secret by a qualified share set.

The set ``J`` rewrites its shares with one unitary ``U_rec`` acting on its own
qudits only.  Nothing is added for the missing shares in ``Jbar``.  Afterwards
the last ``k`` qudits of ``J`` hold the secret, in a product state with
everything else.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qstate import (
    DEFAULT_TOL,
    DensityMatrix,
    PauliOperator,
    QuditState,
    apply_pauli,
    apply_unitary,
    contract,
    eigenphases,
    fidelity,
    labels,
    partial_trace,
    pauli_from_vector,
    project_array,
    synthesize_codewords,
    trace_distance,
)
from .symplectic import (
    InconsistencyError,
    NotQualifiedError,
    SymplecticVector,
    analyze,
    embed,
    project_subspace,
    restrict,
)

NULL_THRESHOLD = 1e-8


def _require_qualified(code, partition):
    analysis = analyze(code, partition)
    if not analysis.qualified:
        raise NotQualifiedError(
            f"J={partition} is not qualified: C^perp ∩ F^Jbar has dim {analysis.dim_Cperp_Jbar} "
            f"but C ∩ F^Jbar has dim {analysis.dim_C_Jbar}"
        )
    if not code.field.is_prime:
        raise ValueError("state simulation needs a prime field")
    return analysis


def _gram_schmidt(columns, start=None, null=NULL_THRESHOLD):
    """Modified Gram–Schmidt over ``columns`` (iterated in order).

    ``start`` is an orthonormal set (as columns) to extend; vectors whose
    residual norm is below ``null`` are dropped.
    """
    basis = [] if start is None else [start[:, i] for i in range(start.shape[1])]
    fresh = []
    for v in columns:
        w = np.array(v, dtype=np.complex128)
        for _ in range(2):
            for b in basis:
                w = w - np.vdot(b, w) * b
        nrm = np.linalg.norm(w)
        if nrm > null:
            w = w / nrm
            basis.append(w)
            fresh.append(w)
    return fresh


@dataclass(frozen=True, eq=False)
class ErasedCodeBasis:
    """Orthonormal basis ``phi_Jbar(i)`` of the code the stabilizer induces on ``Jbar``."""

    partition: object
    ell: int
    states: tuple
    phases: tuple = ()

    def __len__(self):
        return len(self.states)

    def matrix(self):
        """States as columns, ``q**|Jbar| x q**ell``."""
        return np.column_stack([s.amps for s in self.states])

    def rotated(self, V):
        """Another orthonormal basis of the same space: ``phi'_a = sum_b V[b, a] phi_b``."""
        V = np.asarray(V, dtype=np.complex128)
        M = self.matrix() @ V
        q, m = self.states[0].q, self.states[0].m
        return ErasedCodeBasis(self.partition, self.ell,
                               tuple(QuditState(q, m, M[:, i], self.states[0].tol) for i in range(M.shape[1])),
                               self.phases)


def build_erased_basis(code, partition, codewords=None, tol=DEFAULT_TOL):
    """Basis of the restricted code on ``Jbar``, one state per ``i`` in F_q^ell.

    Projects computational basis states of ``Jbar`` in lexicographic order onto
    the code and orthonormalises.  Generator phases of the restricted
    stabilizer are read off ``codewords[0]`` so the basis spans the space the
    actual reduced states live in.
    """
    analysis = _require_qualified(code, partition)
    q = code.q
    Jbar = partition.Jbar
    m = len(Jbar)
    if codewords is None:
        codewords = synthesize_codewords(code, tol=tol)
    restricted = project_subspace(restrict(code.stabilizer, Jbar), Jbar).vectors() if m else []
    phases = ()
    if restricted:
        full = [embed(v, Jbar, code.n) for v in restricted]
        phases = tuple(eigenphases(full, codewords[0], max(tol, 1e-9)))
    dim = q**m
    eye = np.eye(dim, dtype=np.complex128).reshape((q,) * m + (dim,))
    Pi = project_array(restricted, eye, list(phases) if phases else None).reshape(dim, dim)
    vecs = _gram_schmidt(Pi.T)
    if len(vecs) != q**analysis.ell:
        raise InconsistencyError(
            f"restricted code on Jbar={Jbar} has dimension {len(vecs)}, expected q^ell = {q ** analysis.ell}"
        )
    states = tuple(QuditState(q, m, v, tol) for v in vecs)
    return ErasedCodeBasis(partition, analysis.ell, states, phases)


def build_phi_J(partition, codewords, erased_basis, tol=DEFAULT_TOL):
    """``phi_J(i_k, i_ell)``: the J-part of ``psi(i_k)`` given ``phi_Jbar(i_ell)`` on Jbar.

    Returns a ``(q**k, q**ell)`` nested list of normalised states.  Every raw
    contraction must have norm ``q**(-ell/2)``; anything else means ``J`` could
    not actually be qualified and raises :class:`InconsistencyError`.
    """
    expected = len(erased_basis) ** -0.5
    phi = []
    for i_k, psi in enumerate(codewords):
        row = []
        for i_l, bar in enumerate(erased_basis.states):
            c = contract(psi, bar, partition.Jbar)
            nrm = c.norm()
            if nrm <= NULL_THRESHOLD:
                raise InconsistencyError(f"contraction for (i_k={i_k}, i_ell={i_l}) vanishes")
            if abs(nrm - expected) > tol:
                raise InconsistencyError(
                    f"contraction lengths differ: |(i_k={i_k}, i_ell={i_l})| = {nrm!r}, expected {expected!r}"
                )
            row.append(QuditState(c.q, c.m, c.amps / nrm, tol))
        phi.append(row)
    return phi


@dataclass(frozen=True)
class RegisterLayout:
    """Where the output registers sit after ``U_rec`` (1-based global qudit indices)."""

    label: tuple
    padding: tuple
    secret: tuple

    def target_digits(self, i_k, i_l):
        return tuple(i_l) + (0,) * len(self.padding) + tuple(i_k)


def _layout(partition, k, ell):
    J = partition.J
    if len(J) < k + ell:
        raise InconsistencyError(f"|J|={len(J)} < k + ell = {k + ell}")
    return RegisterLayout(J[:ell], J[ell:len(J) - k], J[len(J) - k:])


@dataclass(frozen=True, eq=False)
class ReconstructionPlan:
    code: object
    partition: object
    analysis: object
    codewords: tuple
    erased_basis: ErasedCodeBasis
    phi_J: tuple
    layout: RegisterLayout
    u_rec: np.ndarray
    tol: float = DEFAULT_TOL

    @property
    def q(self):
        return self.code.q

    def target(self, i_k, i_l):
        """``|label(i_l)> ⊗ |0...0> ⊗ |i_k>`` on the qudits of ``J``."""
        q = self.q
        digits = self.layout.target_digits(i_k, i_l)
        idx = int(np.ravel_multi_index(digits, (q,) * len(digits))) if digits else 0
        out = np.zeros(q ** len(self.partition.J), dtype=np.complex128)
        out[idx] = 1.0
        return QuditState(q, len(self.partition.J), out, self.tol)

    def unitarity_error(self):
        U = self.u_rec
        return float(np.max(np.abs(U.conj().T @ U - np.eye(U.shape[0])), initial=0.0))

    def action_error(self):
        """Max deviation of ``U_rec phi_J(i_k, i_l)`` from its target over all labels."""
        q, k, ell = self.q, self.code.k, self.analysis.ell
        worst = 0.0
        for a, i_k in enumerate(labels(q, k)):
            for b, i_l in enumerate(labels(q, ell)):
                got = self.u_rec @ self.phi_J[a][b].amps
                worst = max(worst, float(np.max(np.abs(got - self.target(i_k, i_l).amps))))
        return worst

    def encode(self, alpha):
        alpha = _secret_vector(alpha, self.q, self.code.k, self.tol)
        amps = sum(a * w.amps for a, w in zip(alpha, self.codewords))
        return QuditState(self.q, self.code.n, amps, self.tol)

    def apply(self, shared):
        """Apply ``U_rec`` to the ``J`` qudits of ``shared``; ``Jbar`` is untouched."""
        return apply_unitary(shared, self.u_rec, self.partition.J)

    def reconstruct(self, alpha, error=None):
        """Encode ``alpha``, optionally hit it with a Pauli ``error``, then reconstruct."""
        alpha = _secret_vector(alpha, self.q, self.code.k, self.tol)
        shared = self.encode(alpha)
        if error is not None:
            if isinstance(error, SymplecticVector):
                error = pauli_from_vector(error)
            if not isinstance(error, PauliOperator):
                raise TypeError("error must be a SymplecticVector or PauliOperator")
            shared = apply_pauli(error, shared)
        out = self.apply(shared)
        secret = QuditState(self.q, self.code.k, alpha, self.tol)
        rho = partial_trace(out, self.layout.secret)
        return ReconstructionReport(
            output_state=out,
            secret=secret,
            secret_register=self.layout.secret,
            secret_fidelity=min(1.0, max(0.0, fidelity(rho, secret))),
            purity_of_secret_register=rho.purity(),
            residual_entanglement=trace_distance(rho, DensityMatrix.from_state(secret)),
        )


@dataclass(frozen=True, eq=False)
class ReconstructionReport:
    output_state: QuditState
    secret: QuditState
    secret_register: tuple
    secret_fidelity: float
    purity_of_secret_register: float
    residual_entanglement: float

    def rest_state(self):
        """Reduced state of every qudit outside the secret register."""
        rest = [j for j in range(1, self.output_state.m + 1) if j not in self.secret_register]
        return partial_trace(self.output_state, rest)

    def ok(self, tol=DEFAULT_TOL):
        return (self.secret_fidelity >= 1 - tol
                and self.purity_of_secret_register >= 1 - tol)

    def as_dict(self):
        return {
            "secret_register": list(self.secret_register),
            "secret_fidelity": self.secret_fidelity,
            "purity_of_secret_register": self.purity_of_secret_register,
            "residual_entanglement": self.residual_entanglement,
        }


def _secret_vector(alpha, q, k, tol):
    if isinstance(alpha, QuditState):
        alpha = alpha.amps
    alpha = np.asarray(alpha, dtype=np.complex128).reshape(-1)
    if alpha.size != q**k:
        raise ValueError(f"secret needs {q ** k} amplitudes, got {alpha.size}")
    if abs(np.vdot(alpha, alpha).real - 1) > max(tol, 1e-12):
        raise ValueError(f"secret is not normalised (squared norm {np.vdot(alpha, alpha).real!r})")
    return alpha


def build_u_rec(code, partition, codewords=None, erased_basis=None, tol=DEFAULT_TOL):
    """Build the full reconstruction plan for a qualified ``partition``.

    ``U_rec`` sends ``phi_J(i_k, i_ell)`` to ``|i_ell> ⊗ |0..0> ⊗ |i_k>`` on J's
    qudits and is completed to a unitary on the rest of the space by
    Gram–Schmidt over computational basis vectors in lexicographic order.
    """
    analysis = _require_qualified(code, partition)
    q, k = code.q, code.k
    if codewords is None:
        codewords = synthesize_codewords(code, tol=tol)
    codewords = tuple(codewords)
    if len(codewords) != q**k:
        raise ValueError(f"expected {q ** k} codewords, got {len(codewords)}")
    if erased_basis is None:
        erased_basis = build_erased_basis(code, partition, codewords, tol)
    phi = build_phi_J(partition, codewords, erased_basis, tol)
    layout = _layout(partition, k, analysis.ell)

    dim = q ** len(partition.J)
    src_cols, tgt_idx = [], []
    for a, i_k in enumerate(labels(q, k)):
        for b, i_l in enumerate(labels(q, analysis.ell)):
            src_cols.append(phi[a][b].amps)
            digits = layout.target_digits(i_k, i_l)
            tgt_idx.append(int(np.ravel_multi_index(digits, (q,) * len(digits))) if digits else 0)
    Phi = np.column_stack(src_cols)
    gram_err = np.max(np.abs(Phi.conj().T @ Phi - np.eye(Phi.shape[1])), initial=0.0)
    if gram_err > max(tol, 1e-9):
        raise InconsistencyError(f"phi_J family is not orthonormal (max Gram error {gram_err:.3g})")
    extra = _gram_schmidt(np.eye(dim, dtype=np.complex128), start=Phi)
    Phi_full = np.column_stack([Phi] + extra) if extra else Phi
    rest = [i for i in range(dim) if i not in set(tgt_idx)]
    T_full = np.eye(dim, dtype=np.complex128)[:, tgt_idx + rest]
    if Phi_full.shape != (dim, dim):
        raise InconsistencyError("unitary completion failed")
    U = T_full @ Phi_full.conj().T
    return ReconstructionPlan(code, partition, analysis, codewords, erased_basis,
                              tuple(tuple(r) for r in phi), layout, U, tol)


build_plan = build_u_rec


def reconstruct(code, partition, alpha, codewords=None, error=None, tol=DEFAULT_TOL):
    """One-shot: build the plan and reconstruct ``alpha``."""
    return build_u_rec(code, partition, codewords, tol=tol).reconstruct(alpha, error)


@dataclass(frozen=True)
class ExpansionCheck:
    ok: bool
    max_deviation: float

    def __bool__(self):
        return self.ok


def verify_expansion(plan, codewords=None, tol=None):
    """Rebuild each ``psi(i_k)`` as ``q^(-ell/2) sum phi_Jbar(i) ⊗ phi_J(i_k, i)``.

    Compares with ``codewords`` (default: the plan's own), up to a global phase
    per codeword.
    """
    tol = plan.tol if tol is None else tol
    codewords = plan.codewords if codewords is None else tuple(codewords)
    q, n = plan.q, plan.code.n
    Jbar, J = plan.partition.Jbar, plan.partition.J
    perm = np.argsort([j - 1 for j in Jbar] + [j - 1 for j in J])
    worst = 0.0
    scale = len(plan.erased_basis) ** -0.5
    for a, psi in enumerate(codewords):
        acc = np.zeros(q**n, dtype=np.complex128)
        for b, bar in enumerate(plan.erased_basis.states):
            acc += np.kron(bar.amps, plan.phi_J[a][b].amps)
        acc = np.transpose((scale * acc).reshape((q,) * n), perm).reshape(-1)
        worst = max(worst, psi.distance_up_to_phase(QuditState(q, n, acc, tol)))
    return ExpansionCheck(worst <= tol, worst)
