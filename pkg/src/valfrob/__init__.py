"""Exact valuations on rational function fields of prime characteristic and their Frobenius splittings."""

__version__ = "0.1.0"

from .classify import (  # noqa: E402
    CenterDescriptor,
    ClassificationReport,
    ValuationDescriptor,
    abhyankar_center_check,
    center_degree_identity,
    classify,
    defect_identity,
    degree_K_Kp,
    f_finite_verdict,
    fibre_dimension,
    split_verdict,
)
from .frobsplit import (  # noqa: E402
    FrobDecomposition,
    SplittingWitness,
    claim_suite,
    eta_split,
    extend_split,
    p_decompose,
    verify_claim,
    verify_free_basis,
    verify_inf_eq,
)
from .gf import GroundField, coeff_pth_root, field  # noqa: E402
from .groups import (  # noqa: E402
    Embedded,
    GroupElement,
    Lex,
    LexSum,
    PDivisible,
    Subgroup,
    cmp,
    index_p_gamma,
    rational_rank,
    smallest_positive,
    unit_pth_power_factor,
)
from .parse import poly_parse, rf_parse  # noqa: E402
from .poly import FieldDescriptor, Polynomial, RationalFunction, frobenius_power, rf_eq, substitute  # noqa: E402
from .series import (  # noqa: E402
    HahnSeries,
    LazySeries,
    SeriesEmbedding,
    embed_value,
    hahn_embed_value,
    series_ord,
    series_split,
)
from .valuations import (  # noqa: E402
    GaussValuation,
    MonomialValuation,
    ValuedBaseField,
    gauss_value,
    initial_form,
    lex_valuation,
    monomial_value,
    residue,
    residue_field_of,
    verify_monomialized,
)
