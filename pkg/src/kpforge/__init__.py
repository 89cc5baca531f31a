"""kpforge: a spectral laboratory for fractional Leibniz rules on the torus."""

from .grid import GridSpec, SpectralField, make_grid, relative_sup_distance
from .bumps import (
    bump_phi,
    bump_psi,
    bump_phi_tilde,
    bump_psi_weighted,
    bump_phi_weighted,
)
from .operators import fractional_derivative, lp_block, lowpass, dilate
from .norms import NormValue, sup_norm, lp_norm, besov_norm, bmo_norm, weak_l1, psi_hat_l1
from .coefficients import FourierCoefficients, fourier_coeffs_phi_s, coeff_decay_fit

__version__ = "0.1.0"
