"""Orthogonal polynomials for exp(-x^4) and their Sobolev-type variants with
derivative masses at the origin, in arbitrary precision."""
__version__ = "0.1.0"

from .asymptotics import (LimitDiagnostics, RatioSample, empirical_ratio, limit_diagnostics, phi,
                          prediction_experiment, ratio_target)
from .errors import (DomainError, FreudSobolevError, IterationError, ParameterError, PoleError,
                     PrecisionEscalation, RangeError)
from .freud import FreudTable, eval_P, freud_table, string_forward, string_newton
from .numerics import Poly, context, gamma_quarter, symtridiag_eigen
from .sobolev import (ConnectionTable, SobolevParams, SobolevTable, build_table, gram_schmidt_Q,
                      identity_residuals, sobolev_fast, uvarov_table)
from .zeros import ZeroReport, interlacing_report, zeros_P, zeros_Q
