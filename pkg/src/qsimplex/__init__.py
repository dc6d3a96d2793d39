"""Qubit states and gates simulated in the probability simplex."""
from .core import (
    NORM_TOL,
    STRUCT_TOL,
    HilbertState,
    PVector,
    SimplexState,
    ValidityReport,
    map_state,
    p_of,
    unmap_state,
    validate,
)
from .gates import (
    AffineTransform,
    TransformMatrix,
    apply,
    build_transform,
    canonicalize,
    compose,
    hadamard,
    hadamard_row_via_or,
    phase,
    rabi,
)
from .boxprod import box_m, box_p, combine_n, m_cnot16, m_controlled_u
from .multiqubit import apply_cnot64, cnot64, shuffle8, shuffle64, tensor
from .evolve import effective_hamiltonian, evolve, sum_residual

__version__ = "0.1.0"
