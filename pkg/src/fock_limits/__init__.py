"""Interacting Fock spaces over Jacobi sequences and the classical limits of
their position moments."""
from .jacobi import (
    FamilySpecError,
    JacobiError,
    JacobiSequence,
    Recurrence,
    make_family,
    parse_family,
    q_number,
    ratio_limit_check,
    to_float,
)
from .fock import (
    FockVector,
    LadderWord,
    MomentTable,
    apply_letter,
    apply_word,
    enumerate_balanced_words,
    moment_table,
    position_moment,
    scaled_moment,
    sqrt_two_omega_squared,
    word_expectation,
)
from .orthopoly import (
    MonicPolySequence,
    QuadratureRule,
    build_monic,
    eval_normalized,
    gauss_rule,
    norm_squared,
    weighted_measure_moment,
)
from .measures import (
    arcsine04_moment,
    arcsine_moment,
    density,
    laguerre_limit_sum,
)
from .limits import (
    ConvergenceReport,
    emit_report,
    parse_report,
    run_laguerre_limit,
    run_symmetric_limit,
)

__version__ = "0.1.0"
