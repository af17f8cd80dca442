"""Modular composition g(a) rem f over prime fields via matrices of relations."""

from .field import (
    PrimeField, FieldElem, QuotientRing, SplitEvent, SplitError, RandomTape,
    ZeroInverse, ZeroDivisorAll, NotCoprime, TapeExhausted,
    ff_inv, qr_invert_or_split, qr_crt,
)
from .upoly import (
    Poly, NEG_INF, poly_mul, poly_divrem, poly_xgcd, series_inv, rev,
    shift_var, powmod, horner_mod_compose,
)
from .pmat import (
    PolyMatrix, Shift, DimensionMismatch, SingularMatrix,
    pm_mul, approximant_basis, hermite_form, pm_determinant,
    minimal_kernel_vector, reduce_vector,
)
from .blockseq import (
    FAIL, Fail, BivarPoly, ProjectionVector, ZeroConstantTerm,
    brent_kung_compose, power_projection, seq_minpoly, compose_small_minpoly,
    simultaneous_bivar_compose, bivar_compose_nz,
    simultaneous_truncated_modmul, truncated_powers, block_truncated_powers,
)
from .relations import (
    ParameterProfile, DEFAULT_PROFILE, HankelBlock, RelationMatrix,
    CERT, NOCERT, build_block_hankel, candidate_basis, matrix_of_relations,
    compose_with_relation_matrix, change_of_basis,
)
from .compose import (
    BadSeriesUnit, CharacteristicTooSmall, MinPolyResult, CERTIFIED,
    MONTE_CARLO, ceil_root_pow, base_case_compose, annihilating_polynomial,
    minimal_polynomial, compose_modulo_inseparable, series_reversion,
)
from .towers import (
    NotSeparable, SeparableDecomposition, TowerElement,
    separable_decomposition, untangle, tangle, untangle_general,
    tangle_general, bivariate_reduction, main_reduction,
    compose_insep_product_of_fields, compose_modulo_power,
    modular_composition,
)

__all__ = [
    "PrimeField", "FieldElem", "QuotientRing", "SplitEvent", "SplitError",
    "RandomTape", "ZeroInverse", "ZeroDivisorAll", "NotCoprime",
    "TapeExhausted", "ff_inv", "qr_invert_or_split", "qr_crt",
    "Poly", "NEG_INF", "poly_mul", "poly_divrem", "poly_xgcd", "series_inv",
    "rev", "shift_var", "powmod", "horner_mod_compose",
    "PolyMatrix", "Shift", "DimensionMismatch", "SingularMatrix",
    "pm_mul", "approximant_basis", "hermite_form", "pm_determinant",
    "minimal_kernel_vector", "reduce_vector",
    "FAIL", "Fail", "BivarPoly", "ProjectionVector", "ZeroConstantTerm",
    "brent_kung_compose", "power_projection", "seq_minpoly",
    "compose_small_minpoly", "simultaneous_bivar_compose",
    "bivar_compose_nz", "simultaneous_truncated_modmul", "truncated_powers",
    "block_truncated_powers",
    "ParameterProfile", "DEFAULT_PROFILE", "HankelBlock", "RelationMatrix",
    "CERT", "NOCERT", "build_block_hankel", "candidate_basis",
    "matrix_of_relations", "compose_with_relation_matrix", "change_of_basis",
    "BadSeriesUnit", "CharacteristicTooSmall", "MinPolyResult", "CERTIFIED",
    "MONTE_CARLO", "ceil_root_pow", "base_case_compose",
    "annihilating_polynomial", "minimal_polynomial",
    "compose_modulo_inseparable", "series_reversion",
    "NotSeparable", "SeparableDecomposition", "TowerElement",
    "separable_decomposition", "untangle", "tangle", "untangle_general",
    "tangle_general", "bivariate_reduction", "main_reduction",
    "compose_insep_product_of_fields", "compose_modulo_power",
    "modular_composition",
]
