"""Numerical function theory for weighted Bergman and Lipschitz spaces on the unit ball of C^n."""

__version__ = "0.1.0"

from .gamma import FracOpParams, InvalidParameters, frac_coeff, monomial_mass
from .series import BallPoint, SeriesFormatError, TaylorPolynomial, evaluate, series_from_json, series_to_json
from .radial import power_multiplier, radial_power, rst, rst_inv
from .quadrature import DEFAULT_SEED, Estimate, QuadratureSpec, integrate_ball
from .norms import SpaceParams, SupGrid, bergman_norm, bergman_norm_p2, lipschitz_norm
from .kernels import KernelSpec, kernel_eval, kernel_regime, kernel_series, natural_kernel_eval
from .carleson import DiscreteMeasure, ProbeGrid, bergman_dist, berezin, carleson_constant, forelli_rudin
from .lacunary import BlockGrowth, GeometricGaps, Membership, lacunary_bergman_test, lacunary_lipschitz_test
from .structure import (AtomSpec, Relation, atomic_synthesize, inclusion_bergman, lattice_generate,
                        lipschitz_stretch)
