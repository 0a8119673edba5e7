"""Large-beta expansions of Jacobi polynomials in Laguerre polynomials, their
zeros, and an exact rational oracle."""

from .algebra import MultiPoly, TruncatedSeries, parse_rational, series_exp, series_log, series_mul
from .expansion_b import eval_expansion_b, eval_finite_b, generate_ak, generate_dk
from .expansion_beta import eval_expansion_beta, generate_ck
from .laguerre import LaguerreParams, laguerre_eval, laguerre_zeros
from .oracle import JacobiParams, oracle_eval, oracle_zeros, relative_error, symmetry_map
from .zeros import all_zeros, generate_zero_coeffs, jacobi_zero_approx, symbolic_zero_coeffs

__version__ = "0.1.0"
