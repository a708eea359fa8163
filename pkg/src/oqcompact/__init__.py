"""Exact normal forms and identity checks for the alternating central extension of the q-Onsager algebra."""

from .ring import LaurentPoly, RationalFunction, q_int, rho
from .freealg import Alphabet, DegreeScheme, NcPoly, W, G, Gt, z, commutator, q_commutator
from .presentations import PresentationId, instantiate
from .quotient import TruncatedQuotient, build

__all__ = [
    "LaurentPoly", "RationalFunction", "q_int", "rho",
    "Alphabet", "DegreeScheme", "NcPoly", "W", "G", "Gt", "z", "commutator", "q_commutator",
    "PresentationId", "instantiate", "TruncatedQuotient", "build",
]

__version__ = "0.1.0"
