"""Parity flow tracking of Pauli operators through Clifford circuits."""

from .circuit import CircuitError, Timeline, parse_circuit, render_labels, track
from .combined import CombinedTableau
from .pauli import (
    LabelError,
    NotHermitianError,
    PauliVec,
    XYZRep,
    from_xyz,
    is_proper,
    multi_product,
    order,
    parse_label,
    render_label,
    star_inverse,
    star_mul,
    symplectic_product,
    to_xyz,
)
from .stabilizer import (
    AuxMark,
    AuxMarks,
    AuxSpec,
    AuxState,
    RotationReport,
    check_rotation,
    fast_violation_check,
    init_aux,
    stabilizer_commutes,
)
from .tableau import CLIFFORD, FLOW, Gate, Tableau

__version__ = "0.1.0"
