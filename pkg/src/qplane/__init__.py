"""Exact local structure of the quantum plane C_rho[x,y,z] at roots of unity and of its blow-ups."""

from .field import CycMatrix, CycScalar, make_field
from .heis import psi, verify_heis_identities
from .ncalg import blowup_presentation, chart_algebra, normal_form, quantum_plane, quantum_space
from .reps import blowup_rep, central_character, classify, section_rep, standard_rep
from .tanspace import defect, local_quiver, normal_space, orbit_space, tangent_space

__version__ = "0.1.0"

__all__ = [
    "CycMatrix",
    "CycScalar",
    "blowup_presentation",
    "blowup_rep",
    "central_character",
    "chart_algebra",
    "classify",
    "defect",
    "local_quiver",
    "make_field",
    "normal_form",
    "normal_space",
    "orbit_space",
    "psi",
    "quantum_plane",
    "quantum_space",
    "section_rep",
    "standard_rep",
    "tangent_space",
    "verify_heis_identities",
]
