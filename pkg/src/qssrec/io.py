"""Text file formats for stabilizer codes and state vectors.

Stabilizer file::

    # comments anywhere after '#'
    q n k
    a_1 b_1 ... a_n b_n      (n - k generator lines, entries in [0, q))

State file::

    q m
    index re im              (q**m lines, ascending index, big-endian labels)
"""

from __future__ import annotations

import os
from importlib import resources

import numpy as np

from .gf import GF
from .qstate import DEFAULT_TOL, QuditState
from .symplectic import StabilizerCode, SymplecticVector


class CodeFormatError(ValueError):
    """Malformed input file; the message carries the offending line number."""


def _content_lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _ints(lineno, line):
    try:
        return [int(tok) for tok in line.split()]
    except ValueError as exc:
        raise CodeFormatError(f"line {lineno}: expected integers, got {line!r}") from exc


def parse_code(text, source="<string>"):
    lines = list(_content_lines(text))
    if not lines:
        raise CodeFormatError(f"{source}: empty stabilizer file")
    lineno, header = lines[0]
    vals = _ints(lineno, header)
    if len(vals) != 3:
        raise CodeFormatError(f"{source}: line {lineno}: header must be 'q n k'")
    q, n, k = vals
    try:
        field = GF(q)
    except ValueError as exc:
        raise CodeFormatError(f"{source}: line {lineno}: {exc}") from exc
    if n < 1 or not 0 <= k <= n:
        raise CodeFormatError(f"{source}: line {lineno}: need n >= 1 and 0 <= k <= n")
    body = lines[1:]
    if len(body) != n - k:
        raise CodeFormatError(f"{source}: expected {n - k} generator lines, found {len(body)}")
    gens = []
    for lineno, line in body:
        row = _ints(lineno, line)
        if len(row) != 2 * n:
            raise CodeFormatError(f"{source}: line {lineno}: expected {2 * n} entries, got {len(row)}")
        if any(not 0 <= v < q for v in row):
            raise CodeFormatError(f"{source}: line {lineno}: entries must lie in [0, {q})")
        gens.append(SymplecticVector(field, row))
    try:
        return StabilizerCode.from_generators(field, n, gens, k=k)
    except ValueError as exc:
        raise CodeFormatError(f"{source}: {exc}") from exc


def read_code(path):
    with open(path) as fh:
        return parse_code(fh.read(), source=str(path))


def format_code(code):
    out = [f"{code.q} {code.n} {code.k}"]
    out += [" ".join(str(int(c)) for c in g.coords) for g in code.generators]
    return "\n".join(out) + "\n"


def write_code(code, path):
    with open(path, "w") as fh:
        fh.write(format_code(code))


def parse_state(text, source="<string>", tol=DEFAULT_TOL):
    lines = list(_content_lines(text))
    if not lines:
        raise CodeFormatError(f"{source}: empty state file")
    lineno, header = lines[0]
    vals = _ints(lineno, header)
    if len(vals) != 2:
        raise CodeFormatError(f"{source}: line {lineno}: header must be 'q m'")
    q, m = vals
    dim = q**m
    body = lines[1:]
    if len(body) != dim:
        raise CodeFormatError(f"{source}: expected {dim} amplitude lines, found {len(body)}")
    amps = np.zeros(dim, dtype=np.complex128)
    for expected, (lineno, line) in enumerate(body):
        toks = line.split()
        if len(toks) != 3:
            raise CodeFormatError(f"{source}: line {lineno}: expected 'index re im'")
        try:
            idx, re, im = int(toks[0]), float(toks[1]), float(toks[2])
        except ValueError as exc:
            raise CodeFormatError(f"{source}: line {lineno}: {exc}") from exc
        if idx != expected:
            raise CodeFormatError(f"{source}: line {lineno}: index {idx} out of order (expected {expected})")
        amps[idx] = complex(re, im)
    return QuditState(q, m, amps, tol)


def read_state(path, tol=DEFAULT_TOL):
    with open(path) as fh:
        return parse_state(fh.read(), source=str(path), tol=tol)


def format_state(state):
    out = [f"{state.q} {state.m}"]
    out += [f"{i} {a.real:.17g} {a.imag:.17g}" for i, a in enumerate(state.amps)]
    return "\n".join(out) + "\n"


def write_state(state, path):
    with open(path, "w") as fh:
        fh.write(format_state(state))


def parse_secret(source, q, k, tol=DEFAULT_TOL):
    """Secret amplitudes from a state file path or an inline list like ``0.6,0.8j``."""
    if os.path.exists(source):
        st = read_state(source, tol)
        if (st.q, st.m) != (q, k):
            raise CodeFormatError(f"{source}: secret must be {k} qudit(s) of dimension {q}")
        return st.amps
    try:
        amps = np.array([complex(tok.strip().replace(" ", "")) for tok in source.split(",")])
    except ValueError as exc:
        raise CodeFormatError(f"cannot parse secret {source!r}: {exc}") from exc
    if amps.size != q**k:
        raise CodeFormatError(f"secret needs {q ** k} amplitudes, got {amps.size}")
    return amps


def _data_text(name):
    return resources.files("qssrec").joinpath("data", name).read_text()


def load_five_qubit_code():
    """The binary [[5,1,3]] code with generators XZZXI, IXZZX, XIXZZ, ZXIXZ."""
    return parse_code(_data_text("five_qubit.stab"), source="five_qubit.stab")


def load_five_qubit_codewords(tol=DEFAULT_TOL):
    """The tabulated logical |0> and |1> of the [[5,1,3]] code (amplitudes ±1/4)."""
    return [parse_state(_data_text(f"five_qubit_psi{i}.state"), f"five_qubit_psi{i}.state", tol)
            for i in (0, 1)]


def data_path(name):
    return resources.files("qssrec").joinpath("data", name)
