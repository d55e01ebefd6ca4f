"""kkindex: a desk-scale operator lab for twisted convolution algebras,
truncated Fock spaces, Dirac operators and index-cycle comparisons.

Everything is finite sparse linear algebra over explicitly labeled bases;
identities that hold in closed form are verified entrywise, quantitative
bounds are measured against their analytic values.
"""

from . import assembly, dirac, fock, limitspace, opcore, twistgroup
from .fock import TruncationSpec

__all__ = [
    "assembly",
    "dirac",
    "fock",
    "limitspace",
    "opcore",
    "twistgroup",
    "TruncationSpec",
]

__version__ = "0.1.0"
