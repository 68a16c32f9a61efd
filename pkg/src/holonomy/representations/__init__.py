"""Candidate holonomy algebras h in gl(m) as explicit rational matrices."""

from .constructors import (
    G2_TERMS,
    quaternion_right,
    add_center,
    classical_algebra,
    clifford_module,
    clifford_spin_rep,
    commutant,
    complexify,
    functor,
    g2_form,
    invariant_vectors,
    lambda_id_plus_j,
    octonion_left,
    primitive_wedge3,
    realify,
    realify_complex,
    restrict_to_subspace,
    sl2_irrep,
    stabilizer_algebra,
    subrepresentation,
    symplectic_matrix,
    trivial,
)
from .core import (
    FormTensor,
    Representation,
    RepresentationError,
    annihilator_algebra,
    dual_action,
    inverse,
    sym_action,
    sym_basis,
    wedge_action,
    wedge_basis,
)

__all__ = [name for name in dir() if not name.startswith("_")]
