"""Invariant lattices of order-p automorphisms on K3 surfaces from invertible
polynomials, and their BHCR mirrors."""

from .diaggrp import (DiagonalSymmetry, SymmetryGroup, dual_group, full_group,
                      grading_operator, j_group, sigma, sl_group, sl_subgroup,
                      subgroups_between)
from .fixedlocus import (FixedLocusInvariants, LatticeInvariants, curve_genus,
                         invariants_from_gnk, resolve_fixed_locus, riemann_hurwitz)
from .invpoly import ExponentMatrix, InvertiblePolynomial, decompose, enumerate_form_p, weights_from_matrix
from .lattices import (Lattice, classify, discriminant, make, mirror_invariants, signature,
                       verify_mirror_decomposition)
from .pipeline import AnalysisRecord, analyze, verify_tables
from .weights import WeightSystem, admissible_families, is_calabi_yau, normalize

__version__ = "0.1.0"
