"""Access structures and unitary secret reconstruction for stabilizer-based quantum secret sharing."""

from .gf import GF, FieldElement, FieldSpec, field_new
from .io import (
    CodeFormatError,
    load_five_qubit_code,
    load_five_qubit_codewords,
    read_code,
    read_state,
    write_code,
    write_state,
)
from .oracle import (
    audit_dimensions,
    brute_force_erasure_check,
    forbidden_check_by_state,
    full_access_structure,
)
from .qstate import (
    DensityMatrix,
    PauliOperator,
    QuditState,
    apply_pauli,
    contract,
    fidelity,
    partial_trace,
    pauli_from_vector,
    synthesize_codewords,
    verify_codeword,
)
from .reconstruct import (
    build_erased_basis,
    build_phi_J,
    build_u_rec,
    reconstruct,
    verify_expansion,
)
from .symplectic import (
    AccessAnalysis,
    NotQualifiedError,
    SharePartition,
    StabilizerCode,
    SymplecticSubspace,
    SymplecticVector,
    analyze,
    is_qualified,
    project,
    restrict,
    rref,
    symplectic_dual,
    symplectic_product,
)

__version__ = "0.1.0"
