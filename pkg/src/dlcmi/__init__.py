"""Workbench for finite distributive lattices with a commutative monoidal
operation and an implication: variety checks, principal congruences by two
independent routes, compatible functions, implicit operations, constructions
and small-model enumeration."""

from ._kernels import BACKEND as KERNEL_BACKEND
from .compat import (
    CompatReport,
    FiniteFunction,
    check_condition_m,
    gabbay,
    gamma,
    idcrl_compat_s,
    is_compatible_oracle,
    is_compatible_pcom,
    lec_h_check,
    min_fixed,
    successor,
    unary_slice,
)
from .congruence import (
    Congruence,
    LemmaReport,
    PTReport,
    RWitness,
    all_congruences,
    idcrl_membership,
    lattice_lemma_checks,
    membership_congruence,
    principal_oracle,
    r_conditions_hold,
    r_congruence,
    r_membership,
    verify_pt,
    wh_membership,
)
from .core import (
    FiniteAlgebra,
    biimp,
    box,
    eval_qt,
    leq,
    power,
    stabilization_bounds,
    t_pow,
    t_term,
)
from .errors import (
    CapExceeded,
    DlcmiError,
    DocumentError,
    InternalInconsistency,
    InvalidAlgebra,
    MissingBottom,
    NoMinimum,
    NotALattice,
    NotDLCMI,
    NotIDCRL,
    NotWH,
    PreconditionFailed,
    UnsupportedTag,
)
from .factory import (
    AlgebraRecipe,
    boolean_algebra,
    enumerate_algebras,
    from_recipe,
    is_isomorphic,
    mv_chain,
    parse_recipe,
    product,
    wh_trivial_chain,
)
from .varieties import (
    VarietyReport,
    VarietyTag,
    check,
    check_cwrl_incomparable,
    check_lemaprod,
    evaluate_axiom,
    passes,
    wh_as_dlcmi_roundtrip,
)

__version__ = "0.1.0"
