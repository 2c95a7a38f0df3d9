"""Lattice-valued models of set theory over finite complete Heyting
algebras: the name universe, formula valuation, lifting along locale
morphisms, and the category of H-valued sets."""

from .errors import (
    BottomNotPreserved,
    BudgetExceeded,
    CrossAlgebra,
    EmptyFragment,
    HvError,
    MorphismError,
    NotAFrame,
    NotALattice,
    NotAPoset,
    NotComposable,
    NotEquivalent,
    NotAFunctionName,
    NotJoinPreserving,
    NotMeetPreserving,
    NotPositiveBounded,
    ParseError,
    TopNotPreserved,
    UnboundVariable,
    UnknownConstant,
    UnknownId,
    UnknownKey,
    WrongAlgebra,
)
from .lattice import (
    HeytingAlgebra,
    big_join,
    big_meet,
    implication,
    is_boolean,
    join,
    load_algebra,
    make_boolean,
    make_chain,
    meet,
    negation,
)
from .names import (
    NameStore,
    check_project,
    enumerate_names,
    hat_embed,
    make_name,
    ord_hf,
    ordered_pair_h,
    pad_equivalent,
    parse_name_literal,
    rank,
    singleton_h,
    unordered_pair_h,
)
from .formula import (
    And,
    BExists,
    BForall,
    Const,
    Eq,
    Implies,
    Member,
    Not,
    Or,
    UExists,
    UForall,
    Var,
    free_vars,
    is_positive_bounded,
    parse_formula,
    to_text,
)
from .valuation import (
    EvalContext,
    atomic_eq,
    atomic_mem,
    atomic_ni,
    eq_matrix,
    eval_formula,
    make_function_predicate,
    mem_matrix,
    models,
)
from .hset import (
    HSet,
    HSetMorphism,
    Singleton,
    completion,
    compose,
    dagger_hset,
    dagger_iso,
    dagger_morphism,
    dagger_points,
    equalizer,
    from_name,
    hsets_equal,
    identity,
    is_complete,
    lambda_f,
    lambda_iso,
    morphisms_equal,
    parse_hset_file,
    product,
    singletons,
    validate_hset,
    validate_morphism,
)
from .transfer import (
    LiftReport,
    LocaleMorphism,
    WitnessedLift,
    check_atomic_preservation,
    check_functoriality,
    check_positive_bounded_preservation,
    compose_locale,
    epsilon_hset_morphism,
    first_proposal_images,
    identity_morphism,
    is_generalized_related,
    lift,
    parse_morphism,
    preserves_implication,
    strict_related,
    validate_locale_morphism,
    witnessed_lift_with,
)
from . import checks

__version__ = "0.1.0"
