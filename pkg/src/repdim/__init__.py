"""Exact computations around socle equivalence and representation dimension.

Modules:

- ``exactlin``: matrices over GF(p) and the rationals
- ``pathalg``: bound quiver algebras, socles, projectives
- ``repmod``: representations, Hom spaces, decomposition
- ``approx``: add-M approximations, resolutions and gldim through sink maps
- ``endoalg``: End(M) as an algebra and its global dimension
- ``socletransfer``: identifications A/soc A = B/soc B and transfer along them
- ``harness``: file formats, corpus, search and the command line
"""
from .exactlin import GF, QQ
from .pathalg import BoundQuiverAlgebra, build_algebra, is_selfinjective
from .repmod import Representation, decompose, hom_basis
from .approx import AddGenerator, approximate, endomorphism_gldim, minimize, repdim_bound, resolve
from .endoalg import endomorphism_algebra, global_dimension
from .socletransfer import transfer_generator, transfer_sequence, verify_identification

__version__ = "0.1.0"

__all__ = [
    "GF", "QQ", "BoundQuiverAlgebra", "build_algebra", "is_selfinjective", "Representation", "decompose",
    "hom_basis", "AddGenerator", "approximate", "minimize", "resolve", "repdim_bound", "endomorphism_gldim",
    "endomorphism_algebra", "global_dimension", "verify_identification", "transfer_sequence",
    "transfer_generator",
]
