"""Discrete torus grids and real-valued sampled fields with cached spectra.

A field lives on the torus [-L/2, L/2)^n sampled at N points per axis,
x_k = L k / N - L/2.  Its spectral representation is the coefficient array
c_m of the expansion  f(x) = sum_m c_m exp(2 pi i (m / L) . x)  with m on
the integer lattice -N/2 <= m_i < N/2, stored in FFT index order.  The
half-box offset of the sample points is absorbed into the transform by the
alternating phase (-1)^(sum m_i), so stored coefficients are the true
coefficients relative to exp(2 pi i xi . x).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np

__all__ = ["GridSpec", "SpectralField", "make_grid"]


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class GridSpec:
    """Torus discretization: dimension n, samples per axis N, box side L."""

    n: int
    N: int
    L: float

    def __post_init__(self):
        if self.n not in (1, 2):
            raise ValueError(f"dimension n must be 1 or 2, got {self.n}")
        if not isinstance(self.N, int) or not _is_power_of_two(self.N) or self.N < 16:
            raise ValueError(f"N must be a power of two >= 16, got {self.N}")
        if not (self.L > 0):
            raise ValueError(f"box side L must be positive, got {self.L}")
        object.__setattr__(self, "L", float(self.L))

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.N,) * self.n

    @property
    def cell(self) -> float:
        """Sample spacing L / N."""
        return self.L / self.N

    @property
    def cell_volume(self) -> float:
        return (self.L / self.N) ** self.n

    @property
    def nyquist(self) -> float:
        """Largest resolved per-axis frequency, N / (2 L)."""
        return self.N / (2.0 * self.L)

    @property
    def j_min(self) -> int:
        """Lowest dyadic block index whose annulus can touch the lattice."""
        return _ceil_log2(1.0 / self.L) - 1

    @property
    def j_max(self) -> int:
        """Highest dyadic block index with lattice content."""
        return _floor_log2(self.N / (2.0 * self.L)) + 1

    def block_range(self) -> range:
        """Resolvable dyadic block indices, inclusive of both ends."""
        return range(self.j_min, self.j_max + 1)

    def axis_coordinates(self) -> np.ndarray:
        """Sample coordinates along one axis: -L/2 + L k / N."""
        return self.L * np.arange(self.N) / self.N - self.L / 2.0

    def coordinate_arrays(self) -> tuple[np.ndarray, ...]:
        x = self.axis_coordinates()
        if self.n == 1:
            return (x,)
        return tuple(np.meshgrid(x, x, indexing="ij"))

    def mode_axis(self) -> np.ndarray:
        """Integer modes m along one axis in FFT order."""
        return np.fft.fftfreq(self.N, d=1.0 / self.N).astype(int)

    def frequency_norm(self) -> np.ndarray:
        """|xi| on the full lattice (FFT order), xi = m / L."""
        return _frequency_norm(self)

    def frequency_vectors(self) -> np.ndarray:
        """Lattice frequencies as an array of shape grid.shape + (n,)."""
        return _frequency_vectors(self)


def _round_if_close(x: float) -> float:
    r = round(x)
    return float(r) if abs(x - r) < 1e-9 else x


def _ceil_log2(x: float) -> int:
    return int(math.ceil(_round_if_close(math.log2(x))))


def _floor_log2(x: float) -> int:
    return int(math.floor(_round_if_close(math.log2(x))))


@lru_cache(maxsize=32)
def _frequency_norm(grid: GridSpec) -> np.ndarray:
    freq = np.fft.fftfreq(grid.N, d=grid.L / grid.N)
    if grid.n == 1:
        out = np.abs(freq)
    else:
        fx, fy = np.meshgrid(freq, freq, indexing="ij")
        out = np.hypot(fx, fy)
    out.flags.writeable = False
    return out


@lru_cache(maxsize=32)
def _frequency_vectors(grid: GridSpec) -> np.ndarray:
    freq = np.fft.fftfreq(grid.N, d=grid.L / grid.N)
    if grid.n == 1:
        out = freq[:, None].copy()
    else:
        fx, fy = np.meshgrid(freq, freq, indexing="ij")
        out = np.stack([fx, fy], axis=-1)
    out.flags.writeable = False
    return out


@lru_cache(maxsize=32)
def _phase(grid: GridSpec) -> np.ndarray:
    """(-1)^(sum m_i) in FFT index order; absorbs the -L/2 sample offset."""
    alt = np.where(np.arange(grid.N) % 2 == 0, 1.0, -1.0)
    if grid.n == 1:
        out = alt
    else:
        out = np.outer(alt, alt)
    out.flags.writeable = False
    return out


def make_grid(n: int, N: int, L: float) -> GridSpec:
    """Validate and build a GridSpec (see GridSpec for the conventions)."""
    return GridSpec(n=n, N=int(N), L=float(L))


class SpectralField:
    """Real field on a GridSpec with a lazily cached Fourier coefficient array.

    Instances are immutable: operators return new fields, and the sample /
    spectrum arrays are marked read-only, so fields can be shared freely
    across threads.
    """

    __slots__ = ("grid", "_samples", "_spectrum")

    def __init__(self, grid: GridSpec, samples=None, spectrum=None):
        if samples is None and spectrum is None:
            raise ValueError("need samples or spectrum")
        self.grid = grid
        self._samples = samples
        self._spectrum = spectrum

    @classmethod
    def from_samples(cls, grid: GridSpec, samples) -> "SpectralField":
        arr = np.asarray(samples, dtype=float)
        if arr.shape != grid.shape:
            raise ValueError(f"sample shape {arr.shape} does not match grid {grid.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("samples must be finite")
        arr = arr.copy()
        arr.flags.writeable = False
        return cls(grid, samples=arr)

    @classmethod
    def from_spectrum(cls, grid: GridSpec, spectrum) -> "SpectralField":
        arr = np.asarray(spectrum, dtype=complex)
        if arr.shape != grid.shape:
            raise ValueError(f"spectrum shape {arr.shape} does not match grid {grid.shape}")
        arr = arr.copy()
        arr.flags.writeable = False
        return cls(grid, spectrum=arr)

    @property
    def samples(self) -> np.ndarray:
        if self._samples is None:
            spec = self._spectrum * _phase(self.grid)
            complex_samples = np.fft.ifftn(spec) * self.grid.N**self.grid.n
            scale = np.max(np.abs(complex_samples))
            imag = np.max(np.abs(complex_samples.imag))
            if scale > 0 and imag > 1e-8 * scale:
                raise ValueError(
                    "spectrum is not Hermitian-symmetric: inverse transform has "
                    f"relative imaginary part {imag / scale:.3e}"
                )
            arr = complex_samples.real.copy()
            arr.flags.writeable = False
            self._samples = arr
        return self._samples

    @property
    def spectrum(self) -> np.ndarray:
        if self._spectrum is None:
            spec = np.fft.fftn(self._samples) * _phase(self.grid) / self.grid.N**self.grid.n
            spec.flags.writeable = False
            self._spectrum = spec
        return self._spectrum

    def with_spectrum(self, spectrum) -> "SpectralField":
        """New field on the same grid from a modified coefficient array."""
        return SpectralField.from_spectrum(self.grid, spectrum)

    def mean(self) -> float:
        return float(self.spectrum.flat[0].real)

    def __add__(self, other):
        self._check_same_grid(other)
        return SpectralField.from_samples(self.grid, self.samples + other.samples)

    def __sub__(self, other):
        self._check_same_grid(other)
        return SpectralField.from_samples(self.grid, self.samples - other.samples)

    def __mul__(self, other):
        if isinstance(other, SpectralField):
            self._check_same_grid(other)
            return SpectralField.from_samples(self.grid, self.samples * other.samples)
        return SpectralField.from_samples(self.grid, self.samples * float(other))

    __rmul__ = __mul__

    def __neg__(self):
        return SpectralField.from_samples(self.grid, -self.samples)

    def _check_same_grid(self, other: "SpectralField"):
        if self.grid != other.grid:
            raise ValueError(f"grid mismatch: {self.grid} vs {other.grid}")


def relative_sup_distance(a: SpectralField, b: SpectralField) -> float:
    """sup |a - b| / sup |b| (0/0 treated as 0)."""
    denom = float(np.max(np.abs(b.samples)))
    num = float(np.max(np.abs(a.samples - b.samples)))
    if denom == 0.0:
        return 0.0 if num == 0.0 else math.inf
    return num / denom
