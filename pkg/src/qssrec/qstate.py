"""Dense state vectors of qudit registers (prime local dimension).

Qudit 1 is the most significant digit of the amplitude index, so the ket
``|j_1 j_2 ... j_m>`` sits at index ``sum(j_t * q**(m - t))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .symplectic import (
    InconsistencyError,
    SymplecticVector,
    embed,
    logical_operators,
    logical_partners,
)

DEFAULT_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class QuditState:
    q: int
    m: int
    amps: np.ndarray
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        a = np.array(self.amps, dtype=np.complex128).reshape(-1)
        if a.size != self.q**self.m:
            raise ValueError(f"expected {self.q ** self.m} amplitudes for {self.m} qudits of dimension {self.q}, got {a.size}")
        a.setflags(write=False)
        object.__setattr__(self, "amps", a)

    def tensor_view(self):
        return self.amps.reshape((self.q,) * self.m)

    def norm(self):
        return float(np.linalg.norm(self.amps))

    def is_normalized(self):
        return abs(self.norm() ** 2 - 1) <= self.tol

    def normalized(self):
        nrm = self.norm()
        if nrm <= self.tol:
            raise ValueError("cannot normalise a numerically zero state")
        return QuditState(self.q, self.m, self.amps / nrm, self.tol)

    def inner(self, other):
        """``<self|other>``."""
        _check_dims(self, other)
        return complex(np.vdot(self.amps, other.amps))

    def tensor(self, other):
        if self.q != other.q:
            raise ValueError("local dimensions differ")
        return QuditState(self.q, self.m + other.m, np.kron(self.amps, other.amps), self.tol)

    def __add__(self, other):
        _check_dims(self, other)
        return QuditState(self.q, self.m, self.amps + other.amps, self.tol)

    def __sub__(self, other):
        _check_dims(self, other)
        return QuditState(self.q, self.m, self.amps - other.amps, self.tol)

    def __mul__(self, c):
        return QuditState(self.q, self.m, self.amps * c, self.tol)

    __rmul__ = __mul__

    def distance_up_to_phase(self, other):
        """Max amplitude deviation after aligning the global phase of ``other`` to ``self``."""
        _check_dims(self, other)
        ov = np.vdot(other.amps, self.amps)
        phase = ov / abs(ov) if abs(ov) > 0 else 1.0
        return float(np.max(np.abs(self.amps - phase * other.amps), initial=0.0))

    def __repr__(self):
        return f"QuditState(q={self.q}, m={self.m}, norm={self.norm():.6g})"


def _check_dims(a, b):
    if (a.q, a.m) != (b.q, b.m):
        raise ValueError(f"dimension mismatch: (q={a.q}, m={a.m}) vs (q={b.q}, m={b.m})")


def basis_state(q, digits, tol=DEFAULT_TOL):
    """Computational basis state ``|digits>``."""
    digits = tuple(int(d) for d in digits)
    amps = np.zeros(q ** len(digits), dtype=np.complex128)
    idx = 0
    for d in digits:
        if not 0 <= d < q:
            raise ValueError(f"digit {d} out of range for q={q}")
        idx = idx * q + d
    amps[idx] = 1.0
    return QuditState(q, len(digits), amps, tol)


def state_from_kets(q, terms, tol=DEFAULT_TOL):
    """Build a state from ``{"0101": coeff, ...}`` (digits as a string or tuple)."""
    m = None
    amps = None
    for label, c in terms.items():
        digits = [int(ch) for ch in label] if isinstance(label, str) else list(label)
        if m is None:
            m = len(digits)
            amps = np.zeros(q**m, dtype=np.complex128)
        elif len(digits) != m:
            raise ValueError("inconsistent ket lengths")
        amps[int(np.ravel_multi_index(digits, (q,) * m))] += c
    return QuditState(q, m, amps, tol)


def labels(q, length):
    """All digit tuples of ``length`` over ``range(q)`` in lexicographic order."""
    return list(product(range(q), repeat=length))


# ---------------------------------------------------------------------------
# Generalised Pauli operators
# ---------------------------------------------------------------------------

def root_table(q):
    """``exp(2πi j/q)`` for ``j`` in ``range(q)``; exact ``±1`` for qubits."""
    if q == 2:
        return np.array([1.0, -1.0], dtype=np.complex128)
    return np.exp(2j * np.pi * np.arange(q) / q)


@dataclass(frozen=True, eq=False)
class PauliOperator:
    """``phase * X^{a_1} Z^{b_1} ⊗ ... ⊗ X^{a_m} Z^{b_m}`` with
    ``X|j> = |j+1>`` and ``Z|j> = ω^j |j>``, ``ω = exp(2πi/q)``.
    """

    q: int
    x_part: np.ndarray
    z_part: np.ndarray
    phase: complex = 1.0

    @property
    def m(self):
        return len(self.x_part)

    def scaled(self, c):
        return PauliOperator(self.q, self.x_part, self.z_part, self.phase * c)

    def apply(self, state):
        return apply_pauli(self, state)

    def apply_array(self, arr):
        """Act on ``arr`` of shape ``(q,)*m + batch``."""
        q, m = self.q, self.m
        out = arr
        roots = root_table(q)
        digits = np.arange(q)
        for t in range(m):
            b = int(self.z_part[t])
            if b:
                shape = [1] * out.ndim
                shape[t] = q
                out = out * roots[b * digits % q].reshape(shape)
        for t in range(m):
            a = int(self.x_part[t])
            if a:
                out = np.roll(out, a, axis=t)
        if self.phase != 1:
            out = out * self.phase
        return out

    def matrix(self):
        """Dense matrix; for tests on small registers only."""
        dim = self.q**self.m
        eye = np.eye(dim, dtype=np.complex128).reshape((self.q,) * self.m + (dim,))
        return self.apply_array(eye).reshape(dim, dim)


def pauli_from_vector(v):
    """Pauli operator for a symplectic vector over a prime field, no extra phase."""
    if not v.field.is_prime:
        raise ValueError(f"state simulation needs a prime field, got {v.field!r}")
    return PauliOperator(v.field.q, v.x_part.copy(), v.z_part.copy())


def canonical_phase(v):
    """Phase making ``P_v`` have order ``q``: ``i^{a.b}`` for qubits, 1 for odd primes."""
    if v.field.q == 2:
        return 1j ** (int(np.dot(v.x_part, v.z_part)) % 4)
    return 1.0


def apply_pauli(P, state):
    if (P.q, P.m) != (state.q, state.m):
        raise ValueError(f"operator on (q={P.q}, m={P.m}) applied to state on (q={state.q}, m={state.m})")
    return QuditState(state.q, state.m, P.apply_array(state.tensor_view()).reshape(-1), state.tol)


def pauli_on(v, indices, m):
    """Pauli for ``v`` (over ``len(indices)`` qudits) acting on ``indices`` of an ``m``-qudit register."""
    return pauli_from_vector(embed(v, indices, m))


# ---------------------------------------------------------------------------
# Stabilizer projections
# ---------------------------------------------------------------------------

def _phased(vectors, phases):
    ops = []
    for i, v in enumerate(vectors):
        P = pauli_from_vector(v).scaled(canonical_phase(v))
        if phases is not None:
            P = P.scaled(1 / phases[i])
        ops.append(P)
    return ops


def project_array(vectors, arr, phases=None):
    """Apply the projector onto the joint eigenvalue-1 space of the phased generators.

    ``phases[i]`` is the eigenvalue of the canonical-phase operator of
    ``vectors[i]`` that should count as "stabilized" (default 1).
    """
    for P in _phased(vectors, phases):
        acc = arr
        term = arr
        for _ in range(1, P.q):
            term = P.apply_array(term)
            acc = acc + term
        arr = acc / P.q
    return arr


def eigenphases(vectors, state, tol=None):
    """Eigenvalue of each canonical-phase generator on ``state``.

    Raises ``ValueError`` when ``state`` is not a common eigenvector.
    """
    tol = state.tol if tol is None else tol
    psi = state.tensor_view()
    nrm2 = state.norm() ** 2
    out = []
    for P, v in zip(_phased(vectors, None), vectors):
        moved = P.apply_array(psi)
        lam = np.vdot(psi, moved) / nrm2
        if np.linalg.norm(moved - lam * psi) > tol * max(1.0, np.sqrt(nrm2)) or abs(abs(lam) - 1) > tol:
            raise ValueError(f"state is not an eigenvector of the operator for {v!r}")
        out.append(complex(lam))
    return out


def verify_codeword(code, state, phases=None, tol=None):
    """True iff ``state`` is fixed by every generator of ``code``.

    With ``phases=None`` each generator's eigenvalue is read off the state
    itself (the stabilizer fixes only a subspace; operator phases are a
    convention), so any common eigenvector of all generators passes.
    """
    if state.q != code.q or state.m != code.n:
        raise ValueError(f"state on (q={state.q}, m={state.m}) does not match the [[{code.n},{code.k}]] code over GF({code.q})")
    if not code.field.is_prime:
        raise ValueError("state simulation needs a prime field")
    tol = state.tol if tol is None else tol
    if state.norm() <= tol:
        return False
    gens = code.generators
    if phases is None:
        try:
            eigenphases(gens, state, tol)
        except ValueError:
            return False
        return True
    psi = state.tensor_view()
    scale = max(1.0, state.norm())
    return all(np.linalg.norm(P.apply_array(psi) - psi) <= tol * scale for P in _phased(gens, phases))


def synthesize_codewords(code, logical_x=None, phases=None, tol=DEFAULT_TOL):
    """Orthonormal codewords ``psi(i)`` for every ``i`` in F_q^k.

    ``psi(0...0)`` is the normalised projection of the first computational basis
    state with nonzero overlap onto the joint eigenvalue-1 space of the
    stabilizer and the logical Z operators; ``psi(i) = prod_j Xbar_j^{i_j} psi(0)``.
    The list is ordered by the base-q integer value of ``i`` (big-endian).
    """
    if not code.field.is_prime:
        raise ValueError("state simulation needs a prime field")
    q, n, k = code.q, code.n, code.k
    if logical_x is None:
        xs, zs = logical_operators(code)
    else:
        xs, zs = logical_partners(code, logical_x)
    gens = list(code.generators) + list(zs)
    ph = None if phases is None else list(phases) + [1.0] * len(zs)
    dim = q**n
    seed = None
    for idx in range(dim):
        e = np.zeros(dim, dtype=np.complex128)
        e[idx] = 1.0
        proj = project_array(gens, e.reshape((q,) * n), ph).reshape(-1)
        if np.linalg.norm(proj) > 1e-6:
            seed = proj / np.linalg.norm(proj)
            break
    if seed is None:
        raise InconsistencyError("stabilizer projector annihilates every basis state")
    xops = [pauli_from_vector(x).scaled(canonical_phase(x)) for x in xs]
    words = []
    for lab in labels(q, k):
        arr = seed.reshape((q,) * n)
        for P, power in zip(xops, lab):
            for _ in range(power):
                arr = P.apply_array(arr)
        words.append(QuditState(q, n, arr.reshape(-1), tol))
    gram = np.array([[a.inner(b) for b in words] for a in words])
    if np.max(np.abs(gram - np.eye(len(words)))) > 1e3 * tol:
        raise InconsistencyError("synthesized codewords are not orthonormal")
    return words


# ---------------------------------------------------------------------------
# Subsystem operations
# ---------------------------------------------------------------------------

def _check_subset(m, indices):
    idx = [int(j) for j in indices]
    if len(set(idx)) != len(idx) or any(not 1 <= j <= m for j in idx):
        raise ValueError(f"invalid qudit subset {indices} for {m} qudits")
    return idx


def contract(state, phi, indices):
    """``(<phi|_indices ⊗ I) |state>``, a state on the remaining qudits (ascending).

    ``phi``'s qudits are matched to ``indices`` in the given order.
    """
    idx = _check_subset(state.m, indices)
    if phi.q != state.q or phi.m != len(idx):
        raise ValueError(f"phi has {phi.m} qudits, expected {len(idx)}")
    rest = [j for j in range(1, state.m + 1) if j not in idx]
    T = np.transpose(state.tensor_view(), [j - 1 for j in idx] + [j - 1 for j in rest])
    T = T.reshape(phi.q ** len(idx), -1)
    out = phi.amps.conj() @ T
    return QuditState(state.q, len(rest), out, state.tol)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    q: int
    m: int
    entries: np.ndarray

    def __post_init__(self):
        d = self.q**self.m
        e = np.array(self.entries, dtype=np.complex128).reshape(d, d)
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)

    @classmethod
    def from_state(cls, state):
        return cls(state.q, state.m, np.outer(state.amps, state.amps.conj()))

    def trace(self):
        return complex(np.trace(self.entries))

    def purity(self):
        return float(np.real(np.trace(self.entries @ self.entries)))

    def is_valid(self, tol=DEFAULT_TOL):
        """Hermitian, unit trace and positive semidefinite within ``tol``."""
        E = self.entries
        if np.max(np.abs(E - E.conj().T), initial=0.0) > tol:
            return False
        if abs(self.trace() - 1) > tol:
            return False
        return bool(np.min(np.linalg.eigvalsh((E + E.conj().T) / 2), initial=0.0) >= -tol)


def partial_trace(state, keep):
    """Reduced density matrix on the qudits in ``keep`` (output ordered as given)."""
    keep = _check_subset(state.m, keep)
    q, m = state.q, state.m
    traced = [j for j in range(1, m + 1) if j not in keep]
    if isinstance(state, DensityMatrix):
        T = state.entries.reshape((q,) * (2 * m))
        perm = [j - 1 for j in keep] + [j - 1 for j in traced]
        T = np.transpose(T, perm + [m + p for p in perm])
        dk, dt = q ** len(keep), q ** len(traced)
        T = T.reshape(dk, dt, dk, dt)
        return DensityMatrix(q, len(keep), np.einsum("itjt->ij", T))
    T = np.transpose(state.tensor_view(), [j - 1 for j in keep] + [j - 1 for j in traced])
    T = T.reshape(q ** len(keep), -1)
    return DensityMatrix(q, len(keep), T @ T.conj().T)


def fidelity(rho, state):
    """``<psi|rho|psi>`` as a real number."""
    if (rho.q, rho.m) != (state.q, state.m):
        raise ValueError("dimension mismatch between density matrix and state")
    return float(np.real(np.vdot(state.amps, rho.entries @ state.amps)))


def trace_distance(rho, sigma):
    if (rho.q, rho.m) != (sigma.q, sigma.m):
        raise ValueError("dimension mismatch between density matrices")
    D = rho.entries - sigma.entries
    return float(0.5 * np.sum(np.abs(np.linalg.eigvalsh((D + D.conj().T) / 2))))


def apply_unitary(state, U, indices):
    """Apply the matrix ``U`` to ``indices`` (in the given order), identity elsewhere."""
    idx = _check_subset(state.m, indices)
    q, m = state.q, state.m
    d = q ** len(idx)
    if U.shape != (d, d):
        raise ValueError(f"unitary of shape {U.shape} does not act on {len(idx)} qudits")
    rest = [j for j in range(1, m + 1) if j not in idx]
    perm = [j - 1 for j in idx] + [j - 1 for j in rest]
    T = np.transpose(state.tensor_view(), perm).reshape(d, -1)
    T = (U @ T).reshape((q,) * m)
    return QuditState(q, m, np.transpose(T, np.argsort(perm)).reshape(-1), state.tol)
