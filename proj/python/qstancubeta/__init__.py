"""Stancu-Beta operator family: q-calculus substrate, the four operator
variants with closed-form moment oracles, convergence-rate bound checks and
statistical-convergence machinery."""

from ._core import (  # noqa: F401
    BoundReport,
    Command,
    ConditionLadder,
    Conditions7Report,
    Grid,
    IndexSet,
    KorovkinProfile,
    LipschitzClass,
    MomentTriple,
    CentralMoments,
    NormKind,
    NumericsError,
    OperatorFamily,
    OperatorKind,
    OutputFormat,
    QContext,
    Report,
    RunConfig,
    SequenceSpec,
    TestFunction,
    apply_operator,
    cai_operator,
    central_moments,
    check_pointwise_inequality,
    classical_stancu_beta,
    constant_sequence,
    corpus,
    corpus_function,
    distance_to_set,
    korovkin_error_profile,
    lipschitz_maximal,
    make_context,
    make_function,
    modified_q_stancu_beta,
    modulus_of_continuity,
    moments,
    natural_density,
    ordinary_convergence_check,
    perfect_squares,
    q_beta,
    q_binomial,
    q_factorial,
    q_gamma,
    q_improper_integral,
    q_integer,
    q_jackson_integral,
    q_pochhammer_real,
    q_real_bracket,
    q_stancu_beta,
    qn_standard,
    qn_statistical_only,
    rate_bound_theorem5,
    rate_bound_theorem6,
    run,
    standard_sequence,
    statistical_limit_estimate,
    statistical_only_sequence,
    v_n,
    verify_conditions7,
    weighted_norm,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
