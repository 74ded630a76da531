"""Compatible symplectic bases for self-dual CSS codes.

Transversal logical H, S and CNOT layers, their synthesis, and their
behaviour under code concatenation.
"""

from .basis import (
    BasisReport,
    ExistenceVerdict,
    SymplecticBasis,
    build_compatible_basis,
    existence_check,
    merge_triple,
    symplectic_gram_schmidt,
    verify_basis,
)
from .codes import CATALOG_KEYS, SelfDualCssCode, builtin, from_check_matrix, hamming_code, min_distance_bruteforce
from .concat import (
    ConcatenatedCode,
    LevelLayer,
    concatenate,
    lift_transversal,
    merge_product,
    push_down,
    push_up,
    verify_multilevel,
)
from .errors import *  # noqa: F401,F403
from .ftqc import MeasurementTarget, ancilla_classes, conversion_chain, convert_measurement, parse_target
from .gf2 import BitMatrix, BitVector, in_rowspace, nullspace_basis, rank, rref, solve_linear
from .pauli import PauliOperator, TransversalLayer, conjugate_by_gate, conjugate_by_layer, dense_oracle_conjugate
from .phase import PhasePattern, hadamard_layer, logical_phase_signs, synthesize_phase_layer

__version__ = "0.1.0"
