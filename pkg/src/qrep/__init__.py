"""Exact computations with quiver representations."""

from .bounds import LambdaBound, codim_bounds, effective_m, lambda_bound, sharpened_m
from .dvr import DVRFamily, generic_fiber, integral_model, langton_reduce, special_fiber
from .fields import field_from_spec
from .fixtures import named_quiver
from .homext import (dual, ext_dim, hom_basis, hom_complex, hom_dim, is_isomorphic, semi_invariant, tau,
                     tau_minus)
from .matrix import ExactMatrix
from .quiver import Quiver, admissible_ordering, build_quiver, euler_pairing, is_acyclic, tits_form
from .rep import (Morphism, Representation, SubrepWitness, canonical_resolution, direct_sum, injective, make_rep,
                  projective, random_rep, simple)
from .stability import (beta_of, certify_semistable, check_semistable_oracle, filtration_weight, hn_filtration,
                        is_polystable, jh_filtration, separating_semi_invariant, two_step)
from .subreps import enumerate_subreps

__version__ = "0.1.0"

__all__ = [
    "DVRFamily", "ExactMatrix", "LambdaBound", "Morphism", "Quiver", "Representation", "SubrepWitness",
    "admissible_ordering", "beta_of", "build_quiver", "canonical_resolution", "certify_semistable",
    "check_semistable_oracle", "codim_bounds", "direct_sum", "dual", "effective_m", "enumerate_subreps",
    "euler_pairing", "ext_dim", "field_from_spec", "filtration_weight", "generic_fiber", "hn_filtration",
    "hom_basis", "hom_complex", "hom_dim", "injective", "integral_model", "is_acyclic", "is_isomorphic",
    "is_polystable", "jh_filtration", "lambda_bound", "langton_reduce", "make_rep", "named_quiver", "projective",
    "random_rep", "semi_invariant", "separating_semi_invariant", "sharpened_m", "simple", "special_fiber", "tau",
    "tau_minus", "tits_form", "two_step",
]
