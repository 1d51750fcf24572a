"""Exact Weyl realizations of rotation, Lorentz and Poincare algebras in
generalized Heisenberg algebras, with order-by-order bracket verification."""

__version__ = "0.1.0"

from .exactnum import GaussianRational, bernoulli, psi_coeff, psi_inv_coeff
from .ncalgebra import (EUCLIDEAN, MINKOWSKI, NCPoly, act, commutator, extended_heisenberg,
                        heisenberg, mul, truncate, weyl)
from .opmatrix import (closed_form_k_power, exp_partial, k_matrix, ktilde, ktilde_power,
                       psi_inv_of, psi_of)
from .presentations import (Label, constants_presentation, extended_poincare_presentation,
                            extended_presentation, kappa_presentation, lorentz_presentation,
                            parse_label, poincare_presentation, so_presentation)
from .realize import (Realization, realize_extended, realize_extended_poincare,
                      realize_kappa_closed, realize_lambda, realize_lorentz, realize_poincare,
                      realize_so, realize_weyl_series)
from .gamma import gamma_canonical, gamma_epsilon, gamma_transport
from .verify import check_bracket, jacobi_check, lambda_group_check, mutation_trials

__all__ = [
    "GaussianRational", "bernoulli", "psi_coeff", "psi_inv_coeff",
    "EUCLIDEAN", "MINKOWSKI", "NCPoly", "act", "commutator", "extended_heisenberg", "heisenberg",
    "mul", "truncate", "weyl",
    "closed_form_k_power", "exp_partial", "k_matrix", "ktilde", "ktilde_power", "psi_inv_of",
    "psi_of",
    "Label", "constants_presentation", "extended_poincare_presentation", "extended_presentation",
    "kappa_presentation", "lorentz_presentation", "parse_label", "poincare_presentation",
    "so_presentation",
    "Realization", "realize_extended", "realize_extended_poincare", "realize_kappa_closed",
    "realize_lambda", "realize_lorentz", "realize_poincare", "realize_so", "realize_weyl_series",
    "gamma_canonical", "gamma_epsilon", "gamma_transport",
    "check_bracket", "jacobi_check", "lambda_group_check", "mutation_trials",
]
