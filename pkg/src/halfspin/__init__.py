"""Half-integral spin eigenfunctions: series construction, spectrum, and two independent numerical oracles."""

from .core import Constants, HalfInteger, QuantumNumbers, SpinError, validate
from .series import (Eigenfunction, RadialSeries, eval_psi, eval_radial,
                     laguerre_oracle, nonterminating_prefix,
                     recursion_coefficients)
from .spectrum import e_min, enumerate_table, lambda_min, multiplicity
from .numeric import (RadialGrid, density_profile, fd_eigensolve, mean_radius,
                      normalized_eigenfunction, quadrature_norm)

__version__ = "0.1.0"
