"""Linear frequency-multiplier operators: fractional derivatives, dyadic
blocks, low-pass projections, and exact dyadic dilation."""

from __future__ import annotations

import numpy as np

from .bumps import bump_phi, bump_psi
from .grid import GridSpec, SpectralField

__all__ = [
    "fractional_derivative",
    "lp_block",
    "lowpass",
    "dilate",
    "apply_radial_multiplier",
]


def apply_radial_multiplier(f: SpectralField, multiplier) -> SpectralField:
    """Multiply the spectrum pointwise by multiplier(|xi|)."""
    mags = f.grid.frequency_norm()
    return f.with_spectrum(f.spectrum * multiplier(mags))


def fractional_derivative(f: SpectralField, s: float) -> SpectralField:
    """Spectral multiplier |xi|**s; order s = 0 is the identity.

    The zero frequency is annihilated for s > 0 and preserved for s = 0
    (0**0 == 1), so composition and the identity case behave consistently.
    """
    if s < 0:
        raise ValueError(f"derivative order must be >= 0, got {s}")
    mags = f.grid.frequency_norm()
    return f.with_spectrum(f.spectrum * mags ** float(s))


def lp_block(f: SpectralField, j: int) -> SpectralField:
    """Dyadic annulus projection: spectrum times psi(2**-j xi).

    Any integer j is accepted; an annulus that misses the frequency lattice
    simply yields the zero field.  grid.block_range() gives the indices that
    can carry content.
    """
    scale = 2.0 ** (-int(j))
    return apply_radial_multiplier(f, lambda m: bump_psi(m * scale))


def lowpass(f: SpectralField, j: int) -> SpectralField:
    """Low-pass projection: spectrum times phi(2**-j xi)."""
    scale = 2.0 ** (-int(j))
    return apply_radial_multiplier(f, lambda m: bump_phi(m * scale))


def dilate(f: SpectralField, j0: int, rel_tol: float = 1e-12) -> SpectralField:
    """Exact dyadic dilation x -> 2**j0 x on the torus.

    The coefficient at lattice mode m moves to mode m * 2**j0.  For j0 >= 0
    this requires the spectrum to fit inside |m| < N / 2**(j0+1); for j0 < 0
    every occupied mode must be divisible by 2**(-j0).  Violations beyond
    rel_tol of the total coefficient mass are rejected.
    """
    j0 = int(j0)
    if j0 == 0:
        return f
    grid = f.grid
    spec = f.spectrum
    mass = np.sum(np.abs(spec))
    modes = grid.mode_axis()
    if grid.n == 1:
        mode_arrays = (modes,)
    else:
        mode_arrays = np.meshgrid(modes, modes, indexing="ij")

    if j0 > 0:
        factor = 2**j0
        ok = np.ones(grid.shape, dtype=bool)
        for m in mode_arrays:
            ok &= (m * factor >= -grid.N // 2) & (m * factor <= grid.N // 2 - 1)
    else:
        factor = 2 ** (-j0)
        ok = np.ones(grid.shape, dtype=bool)
        for m in mode_arrays:
            ok &= m % factor == 0

    bad = float(np.sum(np.abs(spec[~ok])))
    if mass > 0 and bad > rel_tol * mass:
        raise ValueError(
            f"dilation by 2**{j0} not grid-representable: relative offending "
            f"coefficient mass {bad / mass:.3e}"
        )

    new_spec = np.zeros(grid.shape, dtype=complex)
    if j0 > 0:
        idx = tuple((m * factor) % grid.N for m in mode_arrays)
        src = ok
    else:
        idx = tuple((m // factor) % grid.N for m in mode_arrays)
        src = ok
    if grid.n == 1:
        new_spec[idx[0][src]] = spec[src]
    else:
        new_spec[idx[0][src], idx[1][src]] = spec[src]
    return f.with_spectrum(new_spec)
