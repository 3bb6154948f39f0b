"""Exact loop transgression on finite Z2-graded groupoids and its
representation-theoretic consequences: twisted (Real) groupoid algebras,
thickened Drinfeld doubles, flat-section and simple-object counts, and
orientifold discrete-torsion phase tables.  All arithmetic is exact
(rationals mod 1); nothing here touches floating point.
"""

from .phase import Phase, PhaseSum, ZERO, HALF

__all__ = ["Phase", "PhaseSum", "ZERO", "HALF"]
__version__ = "0.1.0"
