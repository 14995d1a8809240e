"""Exact computations with sums of P-smooth numbers.

Smooth semigroups, minimal unsigned and signed representation lengths,
the Carmichael function, residue coverage of smooth sumsets and the
closed-form bounds that go with them.
"""

from .errors import BudgetExceededError, ResourceLimitError, SmoothsumError
from .smooth import (PrimeSet, SmoothNumber, count_smooth_upto, enumerate_smooth,
                     gap_statistics, greedy_decompose, is_smooth, largest_smooth_leq,
                     make_prime_set)
from .repr_exact import RepresentationTable, build_min_terms, f_of_k
from .repr_signed import (EvertseTuple, check_evertse_conditions, f_pm_of_k,
                          min_terms_signed, padic_value)
from .carmichael import (carmichael_lambda, eps_construct, factorize,
                         find_small_lambda_window)
from .obstruction import (coverage_bound_check, find_obstruction, power_residues,
                          smooth_residues, sumset_coverage)

__version__ = "0.1.0"

__all__ = [
    "SmoothsumError", "ResourceLimitError", "BudgetExceededError",
    "PrimeSet", "SmoothNumber", "make_prime_set", "enumerate_smooth", "is_smooth",
    "largest_smooth_leq", "greedy_decompose", "gap_statistics", "count_smooth_upto",
    "RepresentationTable", "build_min_terms", "f_of_k",
    "min_terms_signed", "f_pm_of_k", "padic_value", "EvertseTuple", "check_evertse_conditions",
    "factorize", "carmichael_lambda", "eps_construct", "find_small_lambda_window",
    "power_residues", "smooth_residues", "sumset_coverage", "coverage_bound_check",
    "find_obstruction",
]
