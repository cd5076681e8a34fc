"""Brute-force ground truth for access structures.

Nothing here goes through the RREF / nullspace path used by
:func:`qssrec.symplectic.is_qualified`.  Erasure correctability is decided by
listing every error on the erased shares, and "no information" by comparing
reduced density matrices of encoded probe secrets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations, product

import numpy as np

from .qstate import DEFAULT_TOL, QuditState, partial_trace, synthesize_codewords
from .symplectic import (
    SharePartition,
    is_qualified,
    project_subspace,
    rank_array,
    restrict,
    symplectic_dual,
)

ERROR_BUDGET_BITS = 24
CODE_BUDGET_BITS = 24


class EnumerationBudgetError(RuntimeError):
    pass


def _bits(q, count):
    return count * math.log2(q)


def _codespace_keys(code):
    """Every element of C, enumerated from the raw generators, as a set of byte keys."""
    F = code.field
    G = np.array([g.coords for g in code.generators], dtype=np.int64).reshape(-1, 2 * code.n)
    if _bits(F.q, G.shape[0]) > CODE_BUDGET_BITS:
        raise EnumerationBudgetError(f"|C| = {F.q}^{G.shape[0]} exceeds the enumeration budget")
    elems = np.zeros((1, 2 * code.n), dtype=np.int64)
    for g in G:
        shifted = [elems]
        for c in range(1, F.q):
            shifted.append(F.add_table[elems, F.mul_table[c, g][None, :]])
        elems = np.vstack(shifted)
    return {row.tobytes() for row in elems}


def _syndromes(F, E, G):
    """``<e, g_i>`` for every row ``e`` of ``E`` and generator ``g_i``, computed term by term."""
    out = np.zeros((E.shape[0], G.shape[0]), dtype=np.int64)
    for i, g in enumerate(G):
        acc = np.zeros(E.shape[0], dtype=np.int64)
        for t in range(E.shape[1] // 2):
            ab = F.mul_table[E[:, 2 * t], g[2 * t + 1]]
            ba = F.mul_table[E[:, 2 * t + 1], g[2 * t]]
            acc = F.add_table[acc, F.sub_table[ab, ba]]
        out[:, i] = acc
    return out


def brute_force_erasure_check(code, Jbar):
    """True iff every error on ``Jbar`` with trivial syndrome lies in ``C``."""
    F = code.field
    Jbar = sorted(set(int(j) for j in Jbar))
    if _bits(F.q, 2 * len(Jbar)) > ERROR_BUDGET_BITS:
        raise EnumerationBudgetError(
            f"{F.q}^{2 * len(Jbar)} error vectors on Jbar={Jbar} exceed the enumeration budget"
        )
    if not Jbar:
        return True
    cols = []
    for j in Jbar:
        cols += [2 * (j - 1), 2 * j - 1]
    local = np.array(list(product(range(F.q), repeat=len(cols))), dtype=np.int64)
    E = np.zeros((local.shape[0], 2 * code.n), dtype=np.int64)
    E[:, cols] = local
    G = np.array([g.coords for g in code.generators], dtype=np.int64).reshape(-1, 2 * code.n)
    undetected = E if G.shape[0] == 0 else E[~np.any(_syndromes(F, E, G), axis=1)]
    members = _codespace_keys(code)
    return all(row.tobytes() in members for row in undetected)


def probe_secrets(q, k):
    """All computational secrets, then ``(|a> + c|b>)/√2`` for ``a < b`` and ``c`` in {1, i}."""
    dim = q**k
    probes = []
    for a in range(dim):
        v = np.zeros(dim, dtype=np.complex128)
        v[a] = 1.0
        probes.append(v)
    for a, b in combinations(range(dim), 2):
        for c in (1.0, 1j):
            v = np.zeros(dim, dtype=np.complex128)
            v[a], v[b] = 1 / np.sqrt(2), c / np.sqrt(2)
            probes.append(v)
    return probes


def forbidden_check_by_state(code, holders, codewords=None, tol=DEFAULT_TOL):
    """True iff the reduced state on ``holders`` is the same for every probe secret."""
    holders = sorted(set(int(j) for j in holders))
    if not holders:
        return True
    if codewords is None:
        codewords = synthesize_codewords(code, tol=tol)
    W = np.column_stack([w.amps for w in codewords])
    ref = None
    for alpha in probe_secrets(code.q, code.k):
        rho = partial_trace(QuditState(code.q, code.n, W @ alpha, tol), holders).entries
        if ref is None:
            ref = rho
        elif np.max(np.abs(rho - ref)) > tol:
            return False
    return True


def _label(qualified, forbidden):
    if qualified:
        return "Q"
    return "F" if forbidden else "I"


@dataclass
class SubsetVerdict:
    J: tuple
    algebraic: str
    brute: str
    state: str
    qualified: bool
    forbidden: bool

    def line(self):
        js = ",".join(map(str, self.J)) if self.J else "{}"
        return f"J={js} eq3={self.algebraic} brute={self.brute} state={self.state}"


@dataclass
class AccessStructureReport:
    n: int
    k: int
    subsets: list = field(default_factory=list)

    @property
    def consistent(self):
        if any(v.brute not in (v.algebraic, "skipped", "-") or v.state == "mismatch" for v in self.subsets):
            return False
        by_J = {v.J: v for v in self.subsets}
        full = set(range(1, self.n + 1))
        for v in self.subsets:
            comp = tuple(sorted(full - set(v.J)))
            if v.forbidden != by_J[comp].qualified:
                return False
        return True

    def qualified_sets(self):
        return [v.J for v in self.subsets if v.qualified]

    def forbidden_sets(self):
        return [v.J for v in self.subsets if v.forbidden]

    def intermediate_sets(self):
        return [v.J for v in self.subsets if v.algebraic == "I"]

    def lines(self):
        return [v.line() for v in self.subsets]

    def as_dict(self):
        return {
            "n": self.n,
            "k": self.k,
            "consistent": self.consistent,
            "subsets": [
                {"J": list(v.J), "eq3": v.algebraic, "brute": v.brute, "state": v.state} for v in self.subsets
            ],
        }


def subsets_by_mask(n):
    """All subsets of ``1..n`` ordered by integer mask (participant ``j`` is bit ``j-1``)."""
    return [tuple(j + 1 for j in range(n) if mask >> j & 1) for mask in range(2**n)]


def full_access_structure(code, codewords=None, state_check=None, tol=DEFAULT_TOL):
    """Classify every subset and cross-check against both oracles.

    ``state_check`` defaults to on for prime fields with ``n <= 8``.
    """
    n = code.n
    if n > 12:
        raise EnumerationBudgetError(f"2^{n} subsets is beyond the sweep limit (n <= 12)")
    if state_check is None:
        state_check = code.field.is_prime and n <= 8
    if state_check and codewords is None:
        codewords = synthesize_codewords(code, tol=tol)
    full = set(range(1, n + 1))
    qualified = {}
    brute = {}
    for J in subsets_by_mask(n):
        Jbar = tuple(sorted(full - set(J)))
        qualified[J] = is_qualified(code, SharePartition(n, J))
        try:
            brute[J] = brute_force_erasure_check(code, Jbar)
        except EnumerationBudgetError:
            brute[J] = None
    report = AccessStructureReport(n, code.k)
    for J in subsets_by_mask(n):
        comp = tuple(sorted(full - set(J)))
        is_q, is_f = qualified[J], qualified[comp]
        if brute[J] is None or brute[comp] is None:
            b = "skipped"
        else:
            b = _label(brute[J], brute[comp])
        if state_check:
            no_info = forbidden_check_by_state(code, J, codewords, tol)
            s = "ok" if no_info == is_f else "mismatch"
        else:
            s = "-"
        report.subsets.append(SubsetVerdict(J, _label(is_q, is_f), b, s, is_q, is_f))
    return report


@dataclass
class DimensionAudit:
    J: tuple
    qualified: bool
    ell: int
    dims: dict
    checks: dict

    @property
    def ok(self):
        return all(self.checks.values())

    def lines(self):
        js = ",".join(map(str, self.J)) if self.J else "{}"
        out = [f"J={js} qualified={'yes' if self.qualified else 'no'} ell={self.ell}"]
        out += [f"  {name} = {val}" for name, val in self.dims.items()]
        out += [f"  [{'pass' if ok else 'FAIL'}] {name}" for name, ok in self.checks.items()]
        return out


def audit_dimensions(code, partition):
    """Recompute every subspace dimension around ``partition`` and check the identities between them."""
    F = code.field
    n, k = code.n, code.k
    J, Jbar = partition.J, partition.Jbar
    G = np.array([g.coords for g in code.generators], dtype=np.int64).reshape(-1, 2 * n)
    C = code.stabilizer
    Cperp = symplectic_dual(C)
    C_J = restrict(C, J)
    C_Jbar = restrict(C, Jbar)
    Cperp_Jbar = restrict(Cperp, Jbar)
    jbar_cols = [c for j in Jbar for c in (2 * j - 2, 2 * j - 1)]
    j_cols = [c for j in J for c in (2 * j - 2, 2 * j - 1)]
    dim_P_Jbar_C = rank_array(F, G[:, jbar_cols]) if jbar_cols and G.size else 0
    dim_P_J_Cperp = rank_array(F, Cperp.basis[:, j_cols]) if j_cols else 0
    P_Jbar_C = project_subspace(C, Jbar)
    qualified = C_Jbar.dim == Cperp_Jbar.dim and C_Jbar.issubspace(Cperp_Jbar)
    ell = len(J) - k - C_J.dim
    dims = {
        "dim C": rank_array(F, G) if G.size else 0,
        "dim C^perp": Cperp.dim,
        "dim C∩F^J": C_J.dim,
        "dim C∩F^Jbar": C_Jbar.dim,
        "dim C^perp∩F^Jbar": Cperp_Jbar.dim,
        "dim P_Jbar(C)": dim_P_Jbar_C,
        "dim P_J(C^perp)": dim_P_J_Cperp,
    }
    perp_of_proj = symplectic_dual(P_Jbar_C) if Jbar else None
    checks = {
        "dim C = n - k": dims["dim C"] == n - k,
        "dim C^perp = n + k": Cperp.dim == n + k,
        "C ⊆ C^perp": C.issubspace(Cperp),
        "dim P_Jbar(C) = (n-k) - dim C∩F^J": dim_P_Jbar_C == (n - k) - C_J.dim,
        "dim P_J(C^perp) = 2|J| - dim C∩F^J": dim_P_J_Cperp == 2 * len(J) - C_J.dim,
        "C^perp∩F^Jbar = P_Jbar(C)^perp": (
            perp_of_proj is None and Cperp_Jbar.dim == 0
            or perp_of_proj is not None and project_subspace(Cperp_Jbar, Jbar) == perp_of_proj
        ),
    }
    if qualified:
        checks.update({
            "|J|-k-|Jbar| <= dim C∩F^J": len(J) - k - len(Jbar) <= C_J.dim,
            "dim C∩F^J <= |J|-k": C_J.dim <= len(J) - k,
            "dim C∩F^Jbar = |Jbar| - ell": C_Jbar.dim == len(Jbar) - ell,
            "0 <= ell <= |Jbar|": 0 <= ell <= len(Jbar),
        })
    return DimensionAudit(J, qualified, ell, dims, checks)
