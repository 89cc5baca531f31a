"""Bilinear frequency symbols sigma(xi, eta).

Evaluators are vectorized over arrays of frequency vectors with shape
(..., n) and return complex values of shape (...).  Every dyadic sum is
evaluated exactly: for a fixed |xi| the annular bump psi(2**-j xi) is
nonzero for at most two consecutive j, so a two-term window around
floor(log2 |xi|) covers the whole sum.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .bumps import bump_phi, bump_psi, bump_psi_weighted
from .coefficients import BOX, FourierCoefficients, fourier_coeffs_phi_s

__all__ = [
    "SymbolSpec",
    "sigma1",
    "sigma2",
    "sigma3_series",
    "sigma3_closed",
    "sigma3_complement",
    "ds_symbol",
    "one_symbol",
    "pi_symbol",
    "pi_tilde_symbol",
    "pi_one_symbol",
    "pi_two_symbol",
]


@dataclass(frozen=True)
class SymbolSpec:
    """A pointwise-evaluable bilinear symbol with a label and parameters."""

    evaluator: Callable[[np.ndarray, np.ndarray], np.ndarray]
    label: str
    params: dict = field(default_factory=dict)

    def __call__(self, xi, eta):
        """Evaluate at frequency vectors; scalars and single vectors are
        promoted (and the result unwrapped) for convenience."""
        xi = np.asarray(xi, dtype=float)
        eta = np.asarray(eta, dtype=float)
        scalar = xi.ndim == 0
        if scalar:
            xi, eta = xi.reshape(1, 1), eta.reshape(1, 1)
        single = xi.ndim == 1
        if single:
            xi, eta = xi[None, :], eta[None, :]
        out = self.evaluator(xi, eta)
        if scalar or single:
            return complex(out.reshape(-1)[0])
        return out


def _norm(v):
    return np.sqrt(np.sum(v * v, axis=-1))


def _dyadic_window(r):
    """The (at most two) integers j with psi(2**-j r) != 0, as exponents.

    Returns an array of shape r.shape + (2,): floor(log2 r) and the next
    integer.  Entries for r == 0 are filled with 0; callers must mask.
    """
    safe = np.where(r > 0, r, 1.0)
    base = np.floor(np.log2(safe))
    return np.stack([base, base + 1.0], axis=-1)


def one_symbol() -> SymbolSpec:
    """sigma == 1: the plain pointwise product."""

    def ev(xi, eta):
        return np.ones(np.broadcast_shapes(xi.shape[:-1], eta.shape[:-1]), dtype=complex)

    return SymbolSpec(ev, "one")


def ds_symbol(s: float) -> SymbolSpec:
    """|xi + eta|**s: the derivative of the product, as a bilinear symbol."""

    def ev(xi, eta):
        return _norm(xi + eta) ** float(s) + 0j

    return SymbolSpec(ev, "ds", {"s": float(s)})


def sigma1(s: float) -> SymbolSpec:
    """Low-modulation symbol sum_j psi(2^-j xi) phi(2^(3-j) eta) |xi+eta|^s / |xi|^s.

    The wide-gap cutoff phi(2^(3-j) eta) confines the support to
    |eta| <= |xi| / 2, so |xi + eta| stays comparable to |xi| and the ratio
    is finite everywhere off xi = 0 (where the symbol vanishes).
    """
    if s <= 0:
        raise ValueError(f"order s must be positive, got {s}")

    def ev(xi, eta):
        rx, re_, rz = _norm(xi), _norm(eta), _norm(xi + eta)
        live = rx > 0
        js = _dyadic_window(rx)
        scale = 2.0 ** (-js)
        bump = np.sum(
            bump_psi(rx[..., None] * scale) * bump_phi(re_[..., None] * scale * 8.0),
            axis=-1,
        )
        safe = np.where(live, rx, 1.0)
        ratio = np.where(live, (rz / safe) ** float(s), 0.0)
        return np.where(live, bump * ratio, 0.0).astype(complex)

    return SymbolSpec(ev, "sigma1", {"s": float(s)})


def sigma2(s: float) -> SymbolSpec:
    """sigma2(xi, eta) := sigma1(eta, xi)."""
    base = sigma1(s)

    def ev(xi, eta):
        return base.evaluator(eta, xi)

    return SymbolSpec(ev, "sigma2", {"s": float(s)})


def sigma3_series(s: float, m_max: int = 256, coeffs: FourierCoefficients | None = None) -> SymbolSpec:
    """Diagonal symbol as the truncated Fourier-coefficient series.

    sum over k of psi(2^-k xi) |2^-k eta|^-s psi(2^-k eta) times the
    truncated series sum_{|m|_inf <= m_max} c_{s,m} exp(2 pi i 2^-k (xi+eta).m / 16).
    The k sum is finite because both annular bumps must be live, which
    forces 2^k within a factor of two of both |xi| and |eta|.
    """
    if s <= 0:
        raise ValueError(f"order s must be positive, got {s}")

    def make_ev(c: FourierCoefficients):
        cv = np.real(c.values)
        if c.n == 1:
            modes = np.arange(1, c.m_max + 1, dtype=float)
            c0 = float(cv[c.m_max])
            cpos = cv[c.m_max + 1 :]
        else:
            mgrid = np.stack(
                np.meshgrid(
                    np.arange(-c.m_max, c.m_max + 1),
                    np.arange(-c.m_max, c.m_max + 1),
                    indexing="ij",
                ),
                axis=-1,
            ).reshape(-1, 2).astype(float)
            flat = cv.reshape(-1)

        def series(u):
            # u has shape (...,) [n=1 scalar phase] or (..., 2)
            if c.n == 1:
                theta = (2.0 * np.pi / BOX) * u
                out = np.full(theta.shape, c0)
                chunk = max(1, int(2**22 // max(1, modes.size)))
                flat_theta = theta.reshape(-1)
                flat_out = out.reshape(-1)
                for lo in range(0, flat_theta.size, chunk):
                    block = flat_theta[lo : lo + chunk, None] * modes[None, :]
                    flat_out[lo : lo + chunk] += 2.0 * np.cos(block) @ cpos
                return flat_out.reshape(theta.shape)
            theta = (2.0 * np.pi / BOX) * u
            flat_theta = theta.reshape(-1, 2)
            vals = np.zeros(flat_theta.shape[0])
            chunk = max(1, int(2**22 // max(1, mgrid.shape[0])))
            for lo in range(0, flat_theta.shape[0], chunk):
                phase = flat_theta[lo : lo + chunk] @ mgrid.T
                vals[lo : lo + chunk] = np.cos(phase) @ flat
            return vals.reshape(theta.shape[:-1])

        def ev(xi, eta):
            rx, re_ = _norm(xi), _norm(eta)
            live = (rx > 0) & (re_ > 0)
            ks = _dyadic_window(rx)
            out = np.zeros(np.broadcast_shapes(rx.shape, re_.shape), dtype=complex)
            for idx in range(2):
                scale = 2.0 ** (-ks[..., idx])
                w = bump_psi(rx * scale) * bump_psi_weighted(re_ * scale, s)
                sel = live & (w != 0.0)
                if not np.any(sel):
                    continue
                u = (xi + eta) * scale[..., None]
                if xi.shape[-1] == 1:
                    out[sel] += w[sel] * series(u[..., 0][sel])
                else:
                    out[sel] += w[sel] * series(u[sel])
            return out

        return ev

    c = coeffs if coeffs is not None else fourier_coeffs_phi_s(s, m_max, n=1)
    return SymbolSpec(make_ev(c), "sigma3_series", {"s": float(s), "m_max": int(c.m_max)})


def sigma3_closed(s: float) -> SymbolSpec:
    """Closed form of the diagonal symbol on its support.

    On the live annuli the scaled output frequency satisfies
    |2^-k (xi + eta)| <= 4, where the wide bump in the series is exactly 1,
    so the series sums to (|xi+eta|^s / |eta|^s) sum_k psi(2^-k xi) psi(2^-k eta).
    """
    if s <= 0:
        raise ValueError(f"order s must be positive, got {s}")

    def ev(xi, eta):
        rx, re_, rz = _norm(xi), _norm(eta), _norm(xi + eta)
        live = (rx > 0) & (re_ > 0)
        ks = _dyadic_window(rx)
        scale = 2.0 ** (-ks)
        bump = np.sum(
            bump_psi(rx[..., None] * scale) * bump_psi(re_[..., None] * scale),
            axis=-1,
        )
        safe = np.where(live, re_, 1.0)
        ratio = np.where(live, (rz / safe) ** float(s), 0.0)
        return (bump * ratio).astype(complex)

    return SymbolSpec(ev, "sigma3_closed", {"s": float(s)})


def sigma3_complement(s: float) -> SymbolSpec:
    """(|xi+eta|^s - sigma1 |xi|^s - sigma2 |eta|^s) / |eta|^s.

    The symbol that would make the three-term split of the product
    derivative exact by construction; reported alongside the series form
    for comparison (the two differ on the near-diagonal bands).
    """
    s1 = sigma1(s)
    s2 = sigma2(s)

    def ev(xi, eta):
        rx, re_, rz = _norm(xi), _norm(eta), _norm(xi + eta)
        live = re_ > 0
        safe = np.where(live, re_, 1.0)
        total = rz ** float(s)
        val = total - s1.evaluator(xi, eta) * rx ** float(s) - s2.evaluator(xi, eta) * safe ** float(s)
        return np.where(live, val / safe ** float(s), 0.0).astype(complex)

    return SymbolSpec(ev, "sigma3_complement", {"s": float(s)})


def pi_symbol(s: float, strict: bool = False) -> SymbolSpec:
    """Collapsed half-plane symbol |xi+eta|^s sum_j psi(2^-j xi) phi(2^-j' eta).

    strict=False collapses the pair sum over k <= j (cutoff phi(2^-j eta));
    strict=True collapses k < j (cutoff phi(2^-(j-1) eta)).  At eta = 0 the
    low-pass factor equals 1, which is the correct bookkeeping for the mean
    mode of the second argument.
    """

    def ev(xi, eta):
        rx, re_, rz = _norm(xi), _norm(eta), _norm(xi + eta)
        live = rx > 0
        js = _dyadic_window(rx)
        scale = 2.0 ** (-js)
        lp_scale = scale * (2.0 if strict else 1.0)
        bump = np.sum(
            bump_psi(rx[..., None] * scale) * bump_phi(re_[..., None] * lp_scale),
            axis=-1,
        )
        return np.where(live, bump * rz ** float(s), 0.0).astype(complex)

    kind = "pi_strict" if strict else "pi"
    return SymbolSpec(ev, kind, {"s": float(s), "strict": bool(strict)})


def pi_tilde_symbol(s: float) -> SymbolSpec:
    """Complementary half-plane symbol: the strict collapse with roles swapped,
    |xi+eta|^s sum_k psi(2^-k eta) phi(2^-(k-1) xi).  Together with
    pi_symbol(s) this splits |xi+eta|^s exactly over the whole lattice."""
    base = pi_symbol(s, strict=True)

    def ev(xi, eta):
        return base.evaluator(eta, xi)

    return SymbolSpec(ev, "pi_tilde", {"s": float(s)})


def pi_one_symbol(s: float, r: float) -> SymbolSpec:
    """Low-block half of the collapsed symbol, reweighted by |xi|^-r:
    sum_{j <= 0} psi(2^-j xi) phi(2^-j eta) |xi+eta|^s / |xi|^r."""
    return _pi_half_symbol(s, r, low=True)


def pi_two_symbol(s: float, t: float) -> SymbolSpec:
    """High-block half, reweighted by |xi|^-t: sum over j > 0."""
    return _pi_half_symbol(s, t, low=False)


def _pi_half_symbol(s: float, weight: float, low: bool) -> SymbolSpec:
    def ev(xi, eta):
        rx, re_, rz = _norm(xi), _norm(eta), _norm(xi + eta)
        live = rx > 0
        js = _dyadic_window(rx)
        keep = js <= 0.0 if low else js > 0.0
        scale = 2.0 ** (-js)
        terms = bump_psi(rx[..., None] * scale) * bump_phi(re_[..., None] * scale)
        bump = np.sum(np.where(keep, terms, 0.0), axis=-1)
        safe = np.where(live, rx, 1.0)
        val = bump * rz ** float(s) * safe ** (-float(weight))
        return np.where(live, val, 0.0).astype(complex)

    name = "pi_one" if low else "pi_two"
    return SymbolSpec(ev, name, {"s": float(s), "weight": float(weight)})
