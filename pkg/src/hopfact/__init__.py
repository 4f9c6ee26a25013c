"""Exact workbench for finite-dimensional (braided) Hopf algebras.

Structure constants over exact fields, axiom verification by tensor
contraction, double-cross-product constructions, inner double factorizations,
integrals and semisimplicity invariants, plus a CLI with a JSON interchange
format.
"""

__version__ = "0.1.0"

from .scalars import (  # noqa: F401
    QQ,
    CyclotomicField,
    Field,
    FieldMismatchError,
    FieldParseError,
    PrimeField,
    RationalField,
    Scalar,
    cyclotomic_field,
    parse_field,
    prime_field,
    root_of_unity,
    scalar_arith,
)
