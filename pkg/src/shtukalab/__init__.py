"""Exact computations with finite F_q-shtukas and finite group schemes of
F_q-additive type over finite fields."""
from .errors import *  # noqa: F401,F403
from .gf import FqElem, FqField, field_create, frob
from .shtuka import (Shtuka, ShtukaMorphism, apply, cyclic_decompose, hom_space, is_isomorphic,
                     restrict_scalars, ss_nil_split)
from .hopf import (FiniteHopf, Generator, HopfPresentation, cartier_dual, eigen_profile, expand,
                   frobenius_verschiebung, lie_dim_of_dual, primitives, tensor_product)
from .functors import GroupScheme, adjunction_dims, dieudonne, drinfeld, roundtrip
from .balance import (count_eigen_tuples, is_balanced, is_quasi_balanced, lisa_criterion,
                      product_rank_formula, s_series)
from .classify import point_count, structure_decompose
from .jobs import Job, parse_spec

__version__ = "0.1.0"
