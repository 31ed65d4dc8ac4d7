"""Discriminant forms, the Weil representation of SL2(Z), and its invariants."""

from .cyclo import Cyclo, arith, as_rational, e_of, serialize, sqrt_int
from .fqm import (
    DiscriminantForm,
    JordanComponent,
    JordanSymbol,
    count_norm,
    from_gram,
    from_jordan_symbol,
)
from .fundamental import (
    FundamentalDescriptor,
    FundamentalInvariant,
    fundamental_form,
    fundamental_invariant,
    induced_generating_set,
    invariant_generators,
    is_fundamental_quotient,
    tensor_combine,
)
from .induct import (
    IsotropicSubgroup,
    QuotientForm,
    descend,
    isotropic_elements,
    isotropic_subgroups,
    lift_up,
    quotient,
)
from .weil import (
    GroupAlgebraVector,
    OddSignatureError,
    SL2Word,
    dim_closed_form,
    dim_invariants,
    enumerate_cosets,
    inv,
    inv_at_cusp,
    inv_average_oracle,
    projection_closed_form,
    rank_of_vectors,
    rho,
    rho_S,
    rho_T,
    word_decompose,
    xi_factor,
)
from .appl import (
    JacobiBasisEntry,
    dim_s2,
    dim_s2_trace,
    dim_s2_trace_oracle,
    jacobi_singular_basis,
    theta_q_expansion,
)

__all__ = [
    "Cyclo",
    "arith",
    "as_rational",
    "e_of",
    "serialize",
    "sqrt_int",
    "DiscriminantForm",
    "JordanComponent",
    "JordanSymbol",
    "count_norm",
    "from_gram",
    "from_jordan_symbol",
    "FundamentalDescriptor",
    "FundamentalInvariant",
    "fundamental_form",
    "fundamental_invariant",
    "induced_generating_set",
    "invariant_generators",
    "is_fundamental_quotient",
    "tensor_combine",
    "IsotropicSubgroup",
    "QuotientForm",
    "descend",
    "isotropic_elements",
    "isotropic_subgroups",
    "lift_up",
    "quotient",
    "GroupAlgebraVector",
    "OddSignatureError",
    "SL2Word",
    "dim_closed_form",
    "dim_invariants",
    "enumerate_cosets",
    "inv",
    "inv_at_cusp",
    "inv_average_oracle",
    "projection_closed_form",
    "rank_of_vectors",
    "rho",
    "rho_S",
    "rho_T",
    "word_decompose",
    "xi_factor",
    "JacobiBasisEntry",
    "dim_s2",
    "dim_s2_trace",
    "dim_s2_trace_oracle",
    "jacobi_singular_basis",
    "theta_q_expansion",
]
