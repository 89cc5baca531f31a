"""Radial bump functions underlying every dyadic frequency operator.

One fixed profile is used everywhere so that block decompositions, Besov
norms, and all derived constants are reproducible bit for bit.  The cutoff
is built from chi(x) = exp(-1/x): smooth, radial, identically 1 inside the
unit ball and identically 0 outside radius 2.  The annular bump is the
difference of two dilates of the cutoff, so dyadic sums telescope exactly.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "bump_phi",
    "bump_psi",
    "bump_phi_tilde",
    "bump_psi_weighted",
    "bump_phi_weighted",
]


def _chi(x):
    """exp(-1/x) for x > 0, extended by zero (all derivatives vanish at 0+)."""
    x = np.asarray(x, dtype=float)
    safe = np.where(x > 0.0, x, 1.0)
    return np.where(x > 0.0, np.exp(-1.0 / safe), 0.0)


def bump_phi(rho):
    """Low-pass cutoff as a function of the radius rho = |xi|.

    Equals 1 for rho <= 1 and 0 for rho >= 2; on (1, 2) it is
    chi(2 - rho) / (chi(2 - rho) + chi(rho - 1)), which is smooth and
    symmetric about rho = 3/2 (so bump_phi(1.5) == 0.5 exactly).
    Negative input is folded by absolute value.
    """
    rho = np.abs(np.asarray(rho, dtype=float))
    a = _chi(2.0 - rho)
    b = _chi(rho - 1.0)
    # one of a, b is strictly positive for every rho >= 0
    out = a / (a + b)
    return out if out.ndim else float(out)


def bump_psi(rho):
    """Annular bump phi(rho) - phi(2 rho), supported in 1/2 <= rho <= 2."""
    return bump_phi(rho) - bump_phi(2.0 * np.asarray(rho, dtype=float))


def bump_phi_tilde(rho):
    """Wide cutoff phi(rho / 4): 1 for rho <= 4, 0 for rho >= 8."""
    return bump_phi(np.asarray(rho, dtype=float) / 4.0)


def bump_psi_weighted(rho, r):
    """rho**(-r) * psi(rho), extended by zero where psi vanishes.

    Safe at rho = 0 because psi vanishes identically near the origin.
    """
    rho = np.abs(np.asarray(rho, dtype=float))
    psi = np.asarray(bump_psi(rho), dtype=float)
    live = psi != 0.0
    safe = np.where(live, rho, 1.0)
    out = np.where(live, safe ** (-float(r)) * psi, 0.0)
    return out if out.ndim else float(out)


def bump_phi_weighted(rho, s):
    """rho**s * phi_tilde(rho): the weighted wide bump of order s > 0."""
    rho = np.abs(np.asarray(rho, dtype=float))
    out = rho ** float(s) * np.asarray(bump_phi_tilde(rho), dtype=float)
    return out if out.ndim else float(out)
