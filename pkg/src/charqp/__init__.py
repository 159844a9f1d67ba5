"""Exact characteristic quasi-polynomials of Weyl arrangements and their equivariant versions."""
from __future__ import annotations

from .equivariant import (class_function_qp, equiv_chi_folding, equiv_chi_induced,
                          equiv_chi_theorem56, equiv_count_bruteforce, equivariant_qpoly, folding)
from .qpoly import (ArrangementSpec, QuasiPolynomial, arrangement_qpoly, characteristic_qpoly,
                    count_complement, dilate_qpoly, qpoly_by_subsets, qpoly_coxeter)
from .reference import catalog, reference_eval
from .roots import RootSystem, build

__all__ = [
    "ArrangementSpec", "QuasiPolynomial", "RootSystem", "arrangement_qpoly", "build", "catalog",
    "characteristic_qpoly", "class_function_qp", "count_complement", "dilate_qpoly",
    "equiv_chi_folding", "equiv_chi_induced", "equiv_chi_theorem56", "equiv_count_bruteforce",
    "equivariant_qpoly", "folding", "qpoly_by_subsets", "qpoly_coxeter", "reference_eval",
]
