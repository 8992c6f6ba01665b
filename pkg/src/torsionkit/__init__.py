"""Exact computations around torsion orders of hypersurfaces.

Sparse polynomials over Q and F_p, Milnor K-theory relations, Fermat-Pfister
forms, twisting-type checks, residues of monomial symbols, the hypersurface
constructions, finite-field probes and the integer divisibility bounds.
"""

from .errors import TorsionKitError
from .polyring import GF, QQ, PolyContext, Polynomial, context, mth_root, parse

__all__ = ["GF", "QQ", "PolyContext", "Polynomial", "TorsionKitError", "context", "mth_root", "parse"]
__version__ = "0.1.0"
