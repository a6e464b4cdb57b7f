"""Elliptic multinomial theorem: theta numerics, weights, coefficients,
normal ordering of elliptic-commuting variables, lattice paths and
identity checkers."""
from .algebra import (CoeffExpr, CoeffSum, NormalFormElement, ThetaAtom, Word,
                      coeff_equal_probabilistic, evaluate_coeff, multiply,
                      normalize_word, power_of_sum, sum_of_words)
from .coefficients import (MultiParams, elliptic_binomial, elliptic_multinomial,
                           q_multinomial)
from .errors import (BudgetError, DomainError, EllmultError, ExpressionError,
                     InconclusiveError, PrecisionError, SamplingError,
                     SingularParameterError)
from .identities import (IDENTITIES, ParamPoint, Report, SuiteConfig, check_identity,
                         run_suite, sample_params)
from .lattice import (LatticePath, PathQuery, convolution_split_gf, gf_at_endpoint,
                      path_weight, step_weight)
from .theta import DEFAULT_CONFIG, EvalConfig, qp_factorial, theta, theta_product
from .weights import big_weight, q_weight, shifted_big_weight, small_weight

__version__ = "0.1.0"
