"""Discrete calculus on the combinatorial plane and the lattice magnetic
Schrodinger operator built on it, with identity-verification suites and
finite-truncation spectral experiments."""

from .forms import (Cochain, GradeMismatchError, UNBOUNDED, Window, cutoff,
                    inner_product, norm, random_cochain)
from .complex_core import Chain, boundary, pair, random_chain, sigma, tau
from .calculus import (codifferential, codifferential_stencil, cup, d,
                       laplacian, star, star_inv)
from .magnetic import (ElectricPotential, MagneticPotential,
                       cross_term_closed_form, cross_term_comparison,
                       cutoff_commutation_residual, deformed_codifferential,
                       deformed_d, leibniz_residuals, magnetic_laplacian,
                       magnetic_laplacian_expanded, multiply_electric,
                       multiply_potential, multiply_potential_adjoint,
                       preset_electric, preset_magnetic,
                       product_rule_cross_term, schrodinger_apply)
from .spectral import (HermitianOperator, KernelReport, assemble, dump_matrix,
                       kernel_triviality, lowest_eigenvalues,
                       semibound_estimate)

__all__ = [
    "Chain", "Cochain", "ElectricPotential", "GradeMismatchError",
    "HermitianOperator", "KernelReport", "MagneticPotential", "UNBOUNDED",
    "Window", "assemble", "boundary", "codifferential",
    "codifferential_stencil", "cross_term_closed_form",
    "cross_term_comparison", "cup", "cutoff", "cutoff_commutation_residual",
    "d", "deformed_codifferential", "deformed_d", "dump_matrix",
    "inner_product", "kernel_triviality", "laplacian", "leibniz_residuals",
    "lowest_eigenvalues", "magnetic_laplacian", "magnetic_laplacian_expanded",
    "multiply_electric", "multiply_potential", "multiply_potential_adjoint",
    "norm", "pair", "preset_electric", "preset_magnetic",
    "product_rule_cross_term", "random_chain", "random_cochain",
    "schrodinger_apply", "semibound_estimate", "sigma", "star", "star_inv",
    "tau",
]

__version__ = "0.1.0"
