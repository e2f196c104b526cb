"""Reduction from binary linear systems to sum-of-rational-linear-functions ALPs."""

from .kfield import K, ONE, ZERO, Poly, RatFunc, compare_asymptotic, eval_at, limit_at_infinity, sign_threshold
from .instance import BinaryLinearSystem, check_assignment, generate_planted, generate_random, parse_system
from .alp_model import ALPInstance, coefficient_alphabet, deserialize, serialize, validate
from .reducer import count_profile, reduce

__all__ = [
    "K",
    "ONE",
    "ZERO",
    "Poly",
    "RatFunc",
    "compare_asymptotic",
    "eval_at",
    "limit_at_infinity",
    "sign_threshold",
    "BinaryLinearSystem",
    "check_assignment",
    "generate_planted",
    "generate_random",
    "parse_system",
    "ALPInstance",
    "coefficient_alphabet",
    "deserialize",
    "serialize",
    "validate",
    "count_profile",
    "reduce",
]
