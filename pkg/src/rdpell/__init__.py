"""Exact continued fractions of sqrt(D) and solutions of X^2 - D*Y^2 = 1,
with closed-form fast paths for Richaud-Degert radicands D = f^2 +/- 2^alpha*n."""

from .cf import (
    CFExpansion,
    CFState,
    Convergent,
    Radicand,
    convergents,
    expand_sqrt,
    is_squarefree,
    isqrt,
    iter_convergents,
    iter_states,
)
from .closed_forms import (
    RDDecomposition,
    classify,
    closed_form,
    closed_form_T1,
    closed_form_T3,
    reduce_pair,
    reduce_to_fundamental,
    solve,
)
from .errors import (
    ConditionViolation,
    DivisionInexact,
    DomainError,
    NotASolution,
    NotFound,
    NotFundamental,
    PellError,
    PerfectSquare,
    PeriodTooLong,
)
from .families import FamilyParams, family_convergent, triangular_radicands
from .pell import (
    PellSolution,
    brute_fundamental,
    fundamental_solution,
    is_solution,
    nth_solution,
)
from .survey import emit_report, sieve_squarefree, survey_range

__version__ = "0.1.0"
