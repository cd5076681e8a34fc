"""Exit criteria.  Each test prints a single PASS/FAIL line; the lines are
also repeated in the terminal summary.  ``python3 tests/test_acceptance.py``
runs the same checks without pytest."""

import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import random_secret, random_unitary, sample_codes  # noqa: E402
from qssrec.gf import GF, supported_orders  # noqa: E402
from qssrec.golden import run_golden  # noqa: E402
from qssrec.io import load_five_qubit_code, load_five_qubit_codewords  # noqa: E402
from qssrec.oracle import (  # noqa: E402
    audit_dimensions,
    brute_force_erasure_check,
    forbidden_check_by_state,
    full_access_structure,
    subsets_by_mask,
)
from qssrec.qstate import synthesize_codewords, trace_distance  # noqa: E402
from qssrec.reconstruct import build_erased_basis, build_u_rec  # noqa: E402
from qssrec.symplectic import SharePartition, SymplecticVector, is_qualified, symplectic_form  # noqa: E402

pytestmark = pytest.mark.acceptance

TOL = 1e-9
RESULTS = []

# 40 (q, n, k) shapes x 6 = 240 codes for the oracle sweep; one per shape for
# the state-level suites.
ORACLE_CODES = sample_codes(qs=(2, 3), max_n=5, per_shape=6, seed=2024)
STATE_CODES = sample_codes(qs=(2, 3), max_n=5, per_shape=1, seed=7)


def record(number, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail})"
    RESULTS.append(line)
    print(line)
    return ok


def criterion_golden():
    results = run_golden(load_five_qubit_code(), load_five_qubit_codewords(), tol=TOL)
    failed = [r.name for r in results if not r.passed]
    return record(1, "golden [[5,1,3]] reproduction", not failed,
                  f"{len(results) - len(failed)}/{len(results)} checks" + (f"; failed: {failed}" if failed else ""))


def criterion_threshold():
    code = load_five_qubit_code()
    mismatches, wrong_threshold = 0, 0
    for J in subsets_by_mask(5):
        part = SharePartition(5, J)
        q_eq = is_qualified(code, part)
        q_brute = brute_force_erasure_check(code, part.Jbar)
        mismatches += q_eq != q_brute
        wrong_threshold += q_eq != (len(J) >= 3)
    ok = mismatches == 0 and wrong_threshold == 0
    return record(2, "32-subset classification equals brute force, qualified iff |J| >= 3", ok,
                  f"{mismatches} oracle mismatches, {wrong_threshold} threshold violations")


def criterion_random_oracle():
    disagreements, audit_failures, checked = 0, 0, 0
    for code in ORACLE_CODES:
        for J in subsets_by_mask(code.n):
            part = SharePartition(code.n, J)
            checked += 1
            if is_qualified(code, part) != brute_force_erasure_check(code, part.Jbar):
                disagreements += 1
            audit = audit_dimensions(code, part)
            if audit.qualified and not audit.ok:
                audit_failures += 1
    ok = len(ORACLE_CODES) >= 200 and disagreements == 0 and audit_failures == 0
    return record(3, "random-code oracle agreement and dimension identities", ok,
                  f"{len(ORACLE_CODES)} codes, {checked} subsets, {disagreements} disagreements, "
                  f"{audit_failures} identity failures")


def criterion_reconstruction(secrets_per_set=5):
    rng = np.random.default_rng(99)
    worst = {"unitarity": 0.0, "fidelity": 0.0, "purity": 0.0,
             "residual": 0.0, "rotated": 0.0, "jbar_pauli": 0.0}
    cases = 0
    for code in STATE_CODES:
        words = synthesize_codewords(code)
        dim_k = code.q**code.k
        for J in subsets_by_mask(code.n):
            part = SharePartition(code.n, J)
            if not is_qualified(code, part):
                continue
            cases += 1
            # build_phi_J enforces the equal-length law at the plan's tolerance
            plan = build_u_rec(code, part, words, tol=TOL)
            worst["unitarity"] = max(worst["unitarity"], plan.unitarity_error())
            rests = []
            for _ in range(secrets_per_set):
                rep = plan.reconstruct(random_secret(rng, dim_k))
                worst["fidelity"] = max(worst["fidelity"], 1 - rep.secret_fidelity)
                worst["purity"] = max(worst["purity"], 1 - rep.purity_of_secret_register)
                rests.append(rep.rest_state())
            for r in rests[1:]:
                worst["residual"] = max(worst["residual"], trace_distance(r, rests[0]))
            base = build_erased_basis(code, part, words, tol=TOL)
            rotated = build_u_rec(code, part, words, erased_basis=base.rotated(random_unitary(rng, len(base))), tol=TOL)
            worst["rotated"] = max(worst["rotated"], 1 - rotated.reconstruct(random_secret(rng, dim_k)).secret_fidelity)
            for _ in range(2):
                coords = np.zeros(2 * code.n, dtype=np.int64)
                for j in part.Jbar:
                    coords[2 * j - 2:2 * j] = rng.integers(0, code.q, size=2)
                rep = plan.reconstruct(random_secret(rng, dim_k), error=SymplecticVector(code.field, coords))
                worst["jbar_pauli"] = max(worst["jbar_pauli"], 1 - rep.secret_fidelity)
    ok = cases > 0 and all(v <= TOL for v in worst.values())
    return record(4, "reconstruction property suite", ok,
                  f"{cases} qualified sets; worst " + ", ".join(f"{k}={v:.1e}" for k, v in worst.items()))


def criterion_forbidden():
    forbidden_checked, witness_failures, duality_failures = 0, 0, 0
    for code in STATE_CODES:
        words = synthesize_codewords(code)
        full = set(range(1, code.n + 1))
        for J in subsets_by_mask(code.n):
            comp = tuple(sorted(full - set(J)))
            forbidden = is_qualified(code, SharePartition(code.n, comp))
            no_info = forbidden_check_by_state(code, J, words, tol=TOL)
            if forbidden:
                forbidden_checked += 1
                witness_failures += not no_info
            elif no_info:
                # a set that is not the complement of a qualified set must see something
                duality_failures += 1
        report = full_access_structure(code, words, tol=TOL)
        duality_failures += not report.consistent
    ok = witness_failures == 0 and duality_failures == 0
    return record(5, "forbidden-set witness and complement duality", ok,
                  f"{forbidden_checked} forbidden sets, {witness_failures} witness failures, "
                  f"{duality_failures} duality failures")


def criterion_fields(triples=10_000):
    rng = np.random.default_rng(6)
    orders = supported_orders(16)
    failures = []
    for q in orders:
        F = GF(q)
        a = np.arange(q)
        A, B, C = np.meshgrid(a, a, a, indexing="ij")
        add, mul, neg, inv = F.add_table, F.mul_table, F.neg_table, F.inv_table
        axioms = [
            np.array_equal(add[add[A, B], C], add[A, add[B, C]]),
            np.array_equal(mul[mul[A, B], C], mul[A, mul[B, C]]),
            np.array_equal(add, add.T),
            np.array_equal(mul, mul.T),
            np.array_equal(mul[A, add[B, C]], add[mul[A, B], mul[A, C]]),
            np.all(add[a, 0] == a),
            np.all(mul[a, 1] == a),
            np.all(add[a, neg] == 0),
            np.all(mul[a[1:], inv[1:]] == 1),
        ]
        n = 3
        X, Y, Z = rng.integers(0, q, size=(3, triples, 2 * n))
        c = rng.integers(0, q, size=(triples, 1))
        form = lambda u, v: symplectic_form(F, u, v)  # noqa: E731
        axioms += [
            np.all(form(X, X) == 0),
            np.array_equal(form(add[X, Y], Z), add[form(X, Z), form(Y, Z)]),
            np.array_equal(form(mul[c, X], Y), mul[c[:, 0], form(X, Y)]),
            np.array_equal(form(X, Y), neg[form(Y, X)]),
        ]
        if not all(axioms):
            failures.append(q)
    return record(6, "field axioms exhaustive, symplectic form alternating and bilinear", not failures,
                  f"fields {orders}, {triples} triples each" + (f"; failing q={failures}" if failures else ""))


CRITERIA = [criterion_golden, criterion_threshold, criterion_random_oracle,
            criterion_reconstruction, criterion_forbidden, criterion_fields]


def test_criterion_1_golden():
    assert criterion_golden()


def test_criterion_2_threshold_structure():
    assert criterion_threshold()


def test_criterion_3_random_oracle_agreement():
    assert criterion_random_oracle()


def test_criterion_4_reconstruction_properties():
    assert criterion_reconstruction()


def test_criterion_5_forbidden_witness():
    assert criterion_forbidden()


def test_criterion_6_field_layer():
    assert criterion_fields()


if __name__ == "__main__":
    start = time.time()
    outcomes = [fn() for fn in CRITERIA]
    print(f"{sum(outcomes)}/{len(outcomes)} criteria passed in {time.time() - start:.1f}s")
    sys.exit(0 if all(outcomes) else 1)
