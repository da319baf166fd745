"""Solve c*x^2 + p^(2m) = 4*y^n and the number theory around it."""

from .arith import (
    Factorization,
    IncompleteFactorization,
    factorize,
    gcd,
    integer_root,
    is_prime,
    is_square,
    is_squarefree,
)
from .classnum import NotSquarefree, class_number, fundamental_discriminant, gcd_condition, reduced_forms
from .fiblucas import fibonacci, five_square_terms, identity_check, lucas, square_terms
from .lehmer import (
    InvalidParams,
    LehmerParams,
    defective_pairs,
    is_equivalent,
    lehmer_number,
    primitive_divisor_exists,
)
from .rsums import GaussPair, MalformedPower, congruence_check, i_sum, power_in_ring, r_sum
from .solver import (
    HypothesisReport,
    ProblemInstance,
    SolutionRecord,
    SolveOutcome,
    brute_force_solutions,
    check_hypotheses,
    corollary_report,
    find_u_candidates,
    find_witnesses,
    solve,
    verify_solution,
)

__version__ = "0.1.0"
