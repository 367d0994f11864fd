"""Exact computation with free Lie algebras, Magnus expansions and the
Johnson filtration of IA-automorphisms, over the integers throughout."""

from .intlinalg import (
    IntMatrix,
    QuotientInvariants,
    hermite_normal_form,
    quotient_invariants,
    row_rank,
    smith_normal_form,
)
from .freelie import (
    AssocPoly,
    LieElement,
    LyndonBasisElement,
    NotLieElementError,
    assoc_to_lie,
    bracket,
    graded_quotient,
    ideal_graded_span,
    lie_to_assoc,
    lyndon_basis,
    lyndon_words,
    standard_factorization,
    witt_rank,
)
from .magnus import (
    IDENTITY_AT_TRUNCATION,
    IdentityAtTruncationError,
    NonUnitError,
    TruncSeries,
    Word,
    commutator,
    expand,
    inv,
    lcs_depth,
    leading_lie,
    left_normed_commutator,
    mul,
)
from .autfn import (
    IAEndo,
    WordAut,
    aut_commutator,
    chi,
    chi3,
    compose,
    identity_endo,
    inner,
    invert,
    johnson_depth,
    johnson_image,
)
from .mccool import (
    DepthViolationError,
    DirectSumReport,
    GenWord,
    GradedRank,
    SubgroupSpec,
    andreadakis_check,
    direct_sum_check,
    evaluate,
    evaluate_word_aut,
    gen_commutator,
    graded_johnson_rank,
    johnson_rows,
    left_normed_gen_commutator,
    m3_presentation,
    mccool_generators,
    mccool_relations,
    mccool_spec,
    spec_e,
    spec_h,
    spec_h1,
    weight_c_commutators,
)
from .checks import CheckReport, CheckRow, build_J_generators

__version__ = "0.1.0"
