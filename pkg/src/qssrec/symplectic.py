"""Linear algebra over F_q^{2n} with the symplectic form.

Vectors are stored in interleaved order ``(a_1, b_1, ..., a_n, b_n)`` where
``a_j`` is the X-part and ``b_j`` the Z-part of qudit ``j``.  Qudit indices in
every public function are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product

import numpy as np

from .gf import FieldElement, FieldSpec


class NotQualifiedError(ValueError):
    """Raised when an operation needs a qualified share set and did not get one."""


class InconsistencyError(RuntimeError):
    """An identity that must hold for valid inputs failed; indicates a bug or corrupt input."""


# ---------------------------------------------------------------------------
# Array-level kernels
# ---------------------------------------------------------------------------

def rref_array(F, M):
    """Reduced row-echelon form of ``M`` over ``F``.

    Returns ``(R, pivots)`` where ``R`` has only the nonzero rows.
    """
    A = np.array(M, dtype=np.int64, copy=True).reshape(-1, np.shape(M)[-1] if np.ndim(M) else 0)
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = F.mul_table[F.inv_table[A[r, c]], A[r]]
        for i in np.flatnonzero(A[:, c]):
            if i != r:
                A[i] = F.sub_table[A[i], F.mul_table[A[i, c], A[r]]]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank_array(F, M):
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return rref_array(F, M)[0].shape[0]


def nullspace_array(F, M, ncols=None):
    """Basis (as rows, in RREF) of ``{x : M x = 0}``."""
    M = np.asarray(M, dtype=np.int64)
    if ncols is None:
        ncols = M.shape[-1]
    if M.size == 0:
        return np.eye(ncols, dtype=np.int64)
    R, pivots = rref_array(F, M.reshape(-1, ncols))
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for i, pc in enumerate(pivots):
            basis[t, pc] = F.neg_table[R[i, f]]
    if basis.shape[0]:
        basis = rref_array(F, basis)[0]
    return basis


def solve(F, A, b):
    """One solution ``x`` of ``A x = b`` over ``F``, or ``None`` if inconsistent."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    ncols = A.shape[1]
    R, pivots = rref_array(F, np.hstack([A, b]))
    if ncols in pivots:
        return None
    x = np.zeros(ncols, dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = R[i, ncols]
    return x


def symplectic_form(F, X, Y):
    """Vectorised symplectic product over the last axis (length ``2n``)."""
    X = np.asarray(X, dtype=np.int64)
    Y = np.asarray(Y, dtype=np.int64)
    ab = F.dot(X[..., 0::2], Y[..., 1::2])
    ba = F.dot(Y[..., 0::2], X[..., 1::2])
    return F.sub_table[ab, ba]


def _dual_rows(F, rows):
    """Rows ``r'`` such that ``<x, r> = r' . x`` for every ``x``."""
    rows = np.asarray(rows, dtype=np.int64)
    out = np.empty_like(rows)
    out[..., 0::2] = rows[..., 1::2]
    out[..., 1::2] = F.neg_table[rows[..., 0::2]]
    return out


def _columns(indices):
    cols = []
    for j in indices:
        cols += [2 * (j - 1), 2 * (j - 1) + 1]
    return cols


def _check_indices(n, indices):
    indices = sorted(set(int(j) for j in indices))
    for j in indices:
        if not 1 <= j <= n:
            raise ValueError(f"qudit index {j} outside 1..{n}")
    return tuple(indices)


# ---------------------------------------------------------------------------
# Value types
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SymplecticVector:
    field: FieldSpec
    coords: np.ndarray

    def __post_init__(self):
        c = np.array(self.coords, dtype=np.int64).reshape(-1)
        if c.size % 2:
            raise ValueError("symplectic vectors need an even number of coordinates")
        if c.size and (c.min() < 0 or c.max() >= self.field.q):
            raise ValueError(f"coordinates must lie in [0, {self.field.q})")
        c.setflags(write=False)
        object.__setattr__(self, "coords", c)

    @classmethod
    def zeros(cls, field, n):
        return cls(field, np.zeros(2 * n, dtype=np.int64))

    @property
    def n(self):
        return self.coords.size // 2

    @property
    def x_part(self):
        return self.coords[0::2]

    @property
    def z_part(self):
        return self.coords[1::2]

    def support(self):
        """1-based qudits where ``(a_j, b_j) != (0, 0)``."""
        return tuple(int(j) + 1 for j in np.flatnonzero(self.x_part | self.z_part))

    def __add__(self, other):
        _check_compatible(self, other)
        return SymplecticVector(self.field, self.field.add_table[self.coords, other.coords])

    def __sub__(self, other):
        _check_compatible(self, other)
        return SymplecticVector(self.field, self.field.sub_table[self.coords, other.coords])

    def scale(self, c):
        return SymplecticVector(self.field, self.field.mul_table[int(c), self.coords])

    def __eq__(self, other):
        if not isinstance(other, SymplecticVector):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.coords, other.coords)

    def __hash__(self):
        return hash((self.field, self.coords.tobytes()))

    def __repr__(self):
        return f"SymplecticVector({self.field!r}, {self.coords.tolist()})"


def _check_compatible(x, y):
    if x.field != y.field:
        raise ValueError(f"field mismatch: {x.field!r} vs {y.field!r}")
    if x.n != y.n:
        raise ValueError(f"length mismatch: n={x.n} vs n={y.n}")


@dataclass(frozen=True, eq=False)
class SymplecticSubspace:
    """A subspace of F_q^{2n}, held as its canonical RREF basis."""

    field: FieldSpec
    n: int
    basis: np.ndarray

    def __post_init__(self):
        b = np.array(self.basis, dtype=np.int64)
        b = b.reshape(-1, 2 * self.n) if self.n else np.zeros((0, 0), dtype=np.int64)
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)

    @property
    def dim(self):
        return self.basis.shape[0]

    def vectors(self):
        return [SymplecticVector(self.field, row) for row in self.basis]

    def contains(self, x):
        coords = x.coords if isinstance(x, SymplecticVector) else np.asarray(x)
        return rank_array(self.field, np.vstack([self.basis, coords])) == self.dim

    def __contains__(self, x):
        return self.contains(x)

    def issubspace(self, other):
        return rank_array(self.field, np.vstack([other.basis, self.basis])) == other.dim

    def __eq__(self, other):
        if not isinstance(other, SymplecticSubspace):
            return NotImplemented
        return (self.field == other.field and self.n == other.n
                and np.array_equal(self.basis, other.basis))

    def __hash__(self):
        return hash((self.field, self.n, self.basis.tobytes()))

    def __repr__(self):
        return f"SymplecticSubspace({self.field!r}, n={self.n}, dim={self.dim})"

    def elements(self):
        """Every vector of the subspace as an ``(q**dim, 2n)`` array."""
        F = self.field
        if self.dim == 0:
            return np.zeros((1, 2 * self.n), dtype=np.int64)
        coeffs = np.array(list(product(range(F.q), repeat=self.dim)), dtype=np.int64)
        terms = F.mul_table[coeffs[:, :, None], self.basis[None, :, :]]
        return F.sum(terms, axis=1)


def rref(vectors, field=None, n=None):
    """Canonical subspace spanned by ``vectors``.

    ``field`` and ``n`` are needed only when ``vectors`` is empty or a raw array.
    """
    vectors = list(vectors) if not isinstance(vectors, np.ndarray) else vectors
    if isinstance(vectors, list) and vectors and isinstance(vectors[0], SymplecticVector):
        field = vectors[0].field
        n = vectors[0].n
        for v in vectors[1:]:
            _check_compatible(vectors[0], v)
        rows = np.array([v.coords for v in vectors])
    else:
        if field is None or n is None:
            raise ValueError("field and n are required for raw or empty input")
        rows = np.asarray(vectors, dtype=np.int64)
        rows = rows.reshape(-1, 2 * n) if n else np.zeros((0, 0), dtype=np.int64)
    if rows.shape[0] == 0:
        return SymplecticSubspace(field, n, np.zeros((0, 2 * n), dtype=np.int64))
    return SymplecticSubspace(field, n, rref_array(field, rows)[0])


def zero_subspace(field, n):
    return rref([], field, n)


def full_space(field, n):
    return SymplecticSubspace(field, n, np.eye(2 * n, dtype=np.int64))


def symplectic_product(x, y):
    """``sum_i a_i b'_i - a'_i b_i`` as a field element."""
    _check_compatible(x, y)
    return FieldElement(x.field, int(symplectic_form(x.field, x.coords, y.coords)))


def symplectic_dual(S):
    """``{x : <x, y> = 0 for all y in S}``."""
    if S.dim == 0:
        return full_space(S.field, S.n)
    return SymplecticSubspace(S.field, S.n, nullspace_array(S.field, _dual_rows(S.field, S.basis), 2 * S.n))


def restrict(S, indices):
    """``S`` intersected with the vectors supported on ``indices`` (still in F_q^{2n})."""
    indices = _check_indices(S.n, indices)
    outside = _columns(j for j in range(1, S.n + 1) if j not in indices)
    if S.dim == 0 or not outside:
        return S
    coeffs = nullspace_array(S.field, S.basis[:, outside].T, S.dim)
    if coeffs.shape[0] == 0:
        return zero_subspace(S.field, S.n)
    F = S.field
    rows = F.sum(F.mul_table[coeffs[:, :, None], S.basis[None, :, :]], axis=1)
    return rref(rows, F, S.n)


def project(x, indices):
    """Keep the ``(a_j, b_j)`` pairs for ``j`` in ``indices``, ascending."""
    indices = _check_indices(x.n, indices)
    return SymplecticVector(x.field, x.coords[_columns(indices)])


def project_subspace(S, indices):
    """Image of ``S`` under :func:`project`, a subspace of F_q^{2|indices|}."""
    indices = _check_indices(S.n, indices)
    return rref(S.basis[:, _columns(indices)], S.field, len(indices))


def embed(x, indices, n):
    """Inverse of :func:`project`: place a ``2|indices|`` vector on ``indices`` of ``n`` qudits."""
    indices = _check_indices(n, indices)
    coords = np.zeros(2 * n, dtype=np.int64)
    coords[_columns(indices)] = x.coords
    return SymplecticVector(x.field, coords)


# ---------------------------------------------------------------------------
# Codes and share sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class StabilizerCode:
    field: FieldSpec
    n: int
    k: int
    stabilizer: SymplecticSubspace
    raw_generators: tuple = dc_field(default=())

    @classmethod
    def from_generators(cls, field, n, generators, k=None):
        """Validate generators and build the code.

        ``k`` defaults to ``n - rank``.  Raises ``ValueError`` if the rank does not
        match ``n - k`` or the generators do not pairwise commute.
        """
        gens = tuple(g if isinstance(g, SymplecticVector) else SymplecticVector(field, g)
                     for g in generators)
        for g in gens:
            if g.field != field or g.n != n:
                raise ValueError(f"generator {g!r} does not live in {field!r}^{2 * n}")
        S = rref(list(gens), field, n) if gens else zero_subspace(field, n)
        if k is None:
            k = n - S.dim
        if S.dim != n - k:
            raise ValueError(f"generators have rank {S.dim}, expected n - k = {n - k}")
        if gens:
            G = np.array([g.coords for g in gens])
            gram = symplectic_form(field, G[:, None, :], G[None, :, :])
            bad = np.argwhere(gram != 0)
            if bad.size:
                i, j = bad[0]
                raise ValueError(f"generators {i + 1} and {j + 1} are not symplectically orthogonal")
        return cls(field, n, k, S, gens)

    @property
    def q(self):
        return self.field.q

    @property
    def generators(self):
        """Raw generators when given, else the RREF basis."""
        return self.raw_generators or tuple(self.stabilizer.vectors())

    def normalizer(self):
        return symplectic_dual(self.stabilizer)

    def __repr__(self):
        return f"StabilizerCode([[{self.n},{self.k}]] over {self.field!r})"


@dataclass(frozen=True)
class SharePartition:
    n: int
    J: tuple

    def __post_init__(self):
        object.__setattr__(self, "J", _check_indices(self.n, self.J))

    @classmethod
    def from_J(cls, n, J):
        return cls(n, tuple(J))

    @classmethod
    def from_Jbar(cls, n, Jbar):
        Jbar = _check_indices(n, Jbar)
        return cls(n, tuple(j for j in range(1, n + 1) if j not in Jbar))

    @property
    def Jbar(self):
        return tuple(j for j in range(1, self.n + 1) if j not in self.J)

    def complement(self):
        return SharePartition(self.n, self.Jbar)

    def __str__(self):
        return ",".join(map(str, self.J)) or "{}"


@dataclass(frozen=True)
class AccessAnalysis:
    partition: SharePartition
    qualified: bool
    ell: int
    dim_C_J: int
    dim_C_Jbar: int
    dim_Cperp_Jbar: int

    @property
    def ell_equals_Jbar(self):
        return self.ell == len(self.partition.Jbar)


def is_qualified(code, part):
    """True iff erasures on the complement of ``J`` are correctable.

    Compares ``C^perp ∩ F_q^{Jbar}`` with ``C ∩ F_q^{Jbar}`` by canonical form.
    """
    Jbar = part.Jbar
    return restrict(code.normalizer(), Jbar) == restrict(code.stabilizer, Jbar)


def analyze(code, part):
    if part.n != code.n:
        raise ValueError(f"partition is over {part.n} shares, code has {code.n}")
    C = code.stabilizer
    C_J = restrict(C, part.J)
    C_Jbar = restrict(C, part.Jbar)
    Cperp_Jbar = restrict(code.normalizer(), part.Jbar)
    qualified = Cperp_Jbar == C_Jbar
    nJ, nJbar = len(part.J), len(part.Jbar)
    ell = nJ - code.k - C_J.dim
    if qualified:
        checks = {
            "dim C∩F^Jbar = |Jbar| - ell": C_Jbar.dim == nJbar - ell,
            "|J|-k-|Jbar| <= dim C∩F^J": nJ - code.k - nJbar <= C_J.dim,
            "dim C∩F^J <= |J|-k": C_J.dim <= nJ - code.k,
            "0 <= ell <= |Jbar|": 0 <= ell <= nJbar,
        }
        failed = [name for name, ok in checks.items() if not ok]
        if failed:
            raise InconsistencyError(f"J={part}: violated {failed}")
    return AccessAnalysis(part, qualified, ell, C_J.dim, C_Jbar.dim, Cperp_Jbar.dim)


# ---------------------------------------------------------------------------
# Logical operators and random codes
# ---------------------------------------------------------------------------

def _reduce_mod(F, R, pivots, v):
    v = v.copy()
    for i, pc in enumerate(pivots):
        if v[pc]:
            v = F.sub_table[v, F.mul_table[v[pc], R[i]]]
    return v


def logical_operators(code):
    """Deterministic symplectic pairs ``(X_i, Z_i)`` spanning ``C^perp / C``.

    Returns two tuples of :class:`SymplecticVector` with ``<X_i, Z_j> = δ_ij``
    and ``<X_i, X_j> = <Z_i, Z_j> = 0``.
    """
    F = code.field
    C = code.stabilizer
    pool = []
    R, pivots = rref_array(F, C.basis) if C.dim else (np.zeros((0, 2 * code.n), dtype=np.int64), [])
    span = C.basis
    for row in code.normalizer().basis:
        v = _reduce_mod(F, R, pivots, row)
        if rank_array(F, np.vstack([span, v])) > span.shape[0]:
            pool.append(v)
            span = np.vstack([span, v])
    xs, zs = [], []
    while pool:
        u = pool.pop(0)
        forms = [int(symplectic_form(F, u, w)) for w in pool]
        t = next((i for i, f in enumerate(forms) if f), None)
        if t is None:
            raise InconsistencyError("symplectic form is degenerate on C^perp / C")
        w = F.mul_table[F.inv_table[forms[t]], pool.pop(t)]
        rest = []
        for v in pool:
            alpha = F.neg_table[symplectic_form(F, v, w)]
            beta = symplectic_form(F, v, u)
            v = F.add_table[v, F.mul_table[alpha, u]]
            v = F.add_table[v, F.mul_table[beta, w]]
            rest.append(v)
        pool = rest
        xs.append(SymplecticVector(F, u))
        zs.append(SymplecticVector(F, w))
    if len(xs) != code.k:
        raise InconsistencyError(f"found {len(xs)} logical pairs, expected k={code.k}")
    return tuple(xs), tuple(zs)


def logical_partners(code, logical_x):
    """Logical Z partners for user-supplied logical X operators.

    Validates that ``logical_x`` are ``k`` commuting vectors of ``C^perp`` that are
    independent modulo ``C``.
    """
    F = code.field
    xs = [x if isinstance(x, SymplecticVector) else SymplecticVector(F, x) for x in logical_x]
    if len(xs) != code.k:
        raise ValueError(f"expected {code.k} logical X operators, got {len(xs)}")
    Cperp = code.normalizer()
    for x in xs:
        if x.n != code.n or x not in Cperp:
            raise ValueError(f"{x!r} is not in the normalizer C^perp")
    X = np.array([x.coords for x in xs]).reshape(-1, 2 * code.n)
    if np.any(symplectic_form(F, X[:, None], X[None, :])):
        raise ValueError("logical X operators must pairwise commute")
    if rank_array(F, np.vstack([code.stabilizer.basis, X])) != code.stabilizer.dim + len(xs):
        raise ValueError("logical X operators are not independent modulo the stabilizer")
    B = Cperp.basis
    zs = []
    for j in range(len(xs)):
        # Unknown: coefficients c over the C^perp basis; z = c @ B.
        constraints = [_dual_rows(F, x.coords) for x in xs] + [_dual_rows(F, z.coords) for z in zs]
        A = np.array([F.sum(F.mul_table[B, row[None, :]], axis=1) for row in constraints])
        rhs = np.array([1 if i == j else 0 for i in range(len(xs))] + [0] * len(zs))
        # <z, x> = -(<x, z>); we want <x_i, z_j> = δ_ij, so solve <z, x_i> = -δ_ij.
        rhs = F.neg_table[rhs]
        c = solve(F, A, rhs)
        if c is None:
            raise ValueError("no logical Z partner exists for the given logical X operators")
        zs.append(SymplecticVector(F, F.sum(F.mul_table[c[:, None], B], axis=0)))
    return tuple(xs), tuple(zs)


def random_stabilizer_code(field, n, k, rng):
    """Uniform-ish random self-orthogonal stabilizer of dimension ``n - k``."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    rows = np.zeros((0, 2 * n), dtype=np.int64)
    while rows.shape[0] < n - k:
        S = rref(rows, field, n)
        D = symplectic_dual(S).basis
        coeffs = rng.integers(0, field.q, size=D.shape[0])
        v = field.sum(field.mul_table[coeffs[:, None], D], axis=0)
        if not S.contains(v):
            rows = np.vstack([rows, v])
    return StabilizerCode.from_generators(field, n, [SymplecticVector(field, r) for r in rows], k=k)
