"""Hermitian lattices over number fields and explicit bounds for torsion in K-groups of rings of integers."""

__version__ = "0.1.0"

from .bigbound import BigBound
from .errors import (
    BudgetExceeded,
    ConjugationUnavailable,
    DomainError,
    HermlatError,
    NonUnimodular,
    NotPositiveDefinite,
    Undecided,
)
from .field_core import FieldElement, FractionalIdeal, NumberField, conjugate, embed, load_field, norm_abs, preset, trace
from .hermitian import HermitianLattice, UnimodularMatrix
from .ideal_lattice import IdealLattice

__all__ = [
    "BigBound",
    "BudgetExceeded",
    "ConjugationUnavailable",
    "DomainError",
    "FieldElement",
    "FractionalIdeal",
    "HermitianLattice",
    "HermlatError",
    "IdealLattice",
    "NonUnimodular",
    "NotPositiveDefinite",
    "NumberField",
    "UnimodularMatrix",
    "Undecided",
    "conjugate",
    "embed",
    "load_field",
    "norm_abs",
    "preset",
    "trace",
]
