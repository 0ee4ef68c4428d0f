"""
Generalized Hermite functions from the factorization of the harmonic oscillator.

The family H_n^delta interpolates between the oscillator eigenfunctions
(delta = 0) and the Hermite polynomials (delta -> infinity); see
``genhermite.functions``. The command line entry point is ``genhermite.cli:main``.
"""

from .errors import (
    ConfigError,
    GenHermiteError,
    HermiteOverflowError,
    NonFiniteError,
    ParameterError,
    QuadratureExactnessError,
)
from .factorization import MielnikFactorization, SimpleFactorization, partner_potential
from .functions import GenHermiteFunction, JetValue, gen_hermite, gen_hermite_jet, gen_hermite_table, weight
from .grid import Grid, ResidualReport
from .ladder import LadderOperators
from .numerics import QuadratureRule, discretized_spectrum, gauss_hermite_rule, overlap_matrix

__version__ = "0.1.0"
