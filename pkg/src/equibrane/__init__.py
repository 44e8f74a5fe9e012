"""Exact computations for mid-dimensional equivariant branes in SL(2,C) Higgs
moduli: group-action classification, cover towers, quadratic differentials
and two-torsion kernels."""

__version__ = "0.1.0"
