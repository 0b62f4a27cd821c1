"""Periodic grids, discrete Fourier transforms and weighted Lebesgue norms.

Functions live on the torus ``[-L/2, L/2)^d`` sampled at ``n`` points per
axis (``n`` a power of two).  The transform convention is

    ``fhat(xi) = integral f(x) exp(-i x.xi) dx``

so that translation by ``h`` acts on the spectral side as multiplication by
``exp(i h.xi)``.  Coefficients are stored in numpy's unshifted FFT order;
:meth:`GridSpec.frequencies` gives the matching ``xi`` values.  Under this
convention Parseval reads

    ``sum_x |f(x)|^2 (L/n)^d  ==  sum_k |fhat_k|^2 / L^d``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .weights import Weight, constant_weight

__all__ = [
    "GridSpec",
    "TargetSpace",
    "SampledFunction",
    "SpectralFunction",
    "make_grid",
    "sample",
    "forward",
    "inverse",
    "apply_symbol",
    "lp_norm",
    "weighted_p_quadrature",
    "cell_masses",
    "save_sampled",
    "load_sampled",
    "SCALAR",
    "sequence_space",
    "evaluate_on_frequencies",
    "gaussian",
    "modulated_gaussian",
    "fourier_mode",
    "bump",
    "smoothstep",
    "shifted",
    "dilated",
]


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class GridSpec:
    """Uniform periodic grid on ``[-L/2, L/2)^d``.

    Nodes per axis sit at ``x_k = -L/2 + k L/n``; the frequency lattice is
    ``xi_k = 2 pi k / L`` for ``k in {-n/2, ..., n/2 - 1}``.
    """

    d: int
    n: int
    period: float

    @property
    def dx(self) -> float:
        return self.period / self.n

    @property
    def dxi(self) -> float:
        return 2.0 * np.pi / self.period

    @property
    def nyquist(self) -> float:
        """Largest representable |frequency| per axis, ``pi n / L``."""
        return np.pi * self.n / self.period

    @property
    def shape(self) -> tuple:
        return (self.n,) * self.d

    @property
    def npoints(self) -> int:
        return self.n**self.d

    @property
    def cell_volume(self) -> float:
        return self.dx**self.d

    def axis_coords(self) -> np.ndarray:
        return -0.5 * self.period + self.dx * np.arange(self.n)

    def coords(self) -> tuple:
        """Meshgrid of node coordinates, one array of shape `shape` per axis."""
        ax = self.axis_coords()
        return np.meshgrid(*([ax] * self.d), indexing="ij")

    def axis_freqs(self) -> np.ndarray:
        """Frequencies per axis in unshifted FFT order."""
        return 2.0 * np.pi * np.fft.fftfreq(self.n, d=self.dx)

    def frequencies(self) -> tuple:
        """Meshgrid of frequency coordinates matching the coefficient layout."""
        ax = self.axis_freqs()
        return np.meshgrid(*([ax] * self.d), indexing="ij")

    def frequency_magnitude(self) -> np.ndarray:
        xs = self.frequencies()
        return np.sqrt(sum(x**2 for x in xs))


def make_grid(d: int, n: int, period: float) -> GridSpec:
    """Validate and build a :class:`GridSpec`.

    ``d`` must be 1 or 2, ``n`` a power of two >= 8 and ``period`` positive.
    """
    if d not in (1, 2):
        raise ValueError(f"dimension must be 1 or 2, got {d}")
    if not isinstance(n, (int, np.integer)) or not _is_power_of_two(int(n)) or n < 8:
        raise ValueError(f"points per axis must be a power of two >= 8, got {n}")
    if not period > 0:
        raise ValueError(f"period must be positive, got {period}")
    return GridSpec(int(d), int(n), float(period))


@dataclass(frozen=True)
class TargetSpace:
    """Value space of a sampled function: scalars or a finite sequence space.

    ``kind == "scalar"`` carries one component with norm ``|.|``;
    ``kind == "sequence"`` carries ``dim`` components with the lq norm
    ``(sum |x_i|^q)^{1/q}`` (max for ``q = inf``).
    """

    kind: str = "scalar"
    q: float = 2.0
    dim: int = 1

    def __post_init__(self):
        if self.kind not in ("scalar", "sequence"):
            raise ValueError(f"unknown target space kind {self.kind!r}")
        if self.kind == "scalar" and self.dim != 1:
            raise ValueError("scalar target has exactly one component")
        if self.kind == "sequence":
            if self.q < 1:
                raise ValueError("sequence exponent must satisfy q >= 1")
            if self.dim < 1:
                raise ValueError("sequence dimension must be >= 1")

    @property
    def ncomp(self) -> int:
        return self.dim

    def norm(self, values: np.ndarray) -> np.ndarray:
        """Pointwise X-norm along the trailing component axis."""
        a = np.abs(values)
        if self.kind == "scalar":
            return a[..., 0]
        if np.isinf(self.q):
            return a.max(axis=-1)
        return (a**self.q).sum(axis=-1) ** (1.0 / self.q)


SCALAR = TargetSpace()


def sequence_space(q: float, dim: int) -> TargetSpace:
    return TargetSpace("sequence", float(q), int(dim))


@dataclass(frozen=True)
class SampledFunction:
    """Node values of an X-valued function, shape ``grid.shape + (ncomp,)``."""

    grid: GridSpec
    space: TargetSpace
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        expected = self.grid.shape + (self.space.ncomp,)
        if self.values.shape != expected:
            raise ValueError(
                f"values shape {self.values.shape} does not match {expected}"
            )
        if self.values.dtype != np.complex128:
            object.__setattr__(self, "values", self.values.astype(np.complex128))

    def xnorm(self) -> np.ndarray:
        """Pointwise X-norm, shape ``grid.shape``."""
        return self.space.norm(self.values)

    def __add__(self, other: "SampledFunction") -> "SampledFunction":
        _check_compatible(self, other)
        return SampledFunction(self.grid, self.space, self.values + other.values)

    def __sub__(self, other: "SampledFunction") -> "SampledFunction":
        _check_compatible(self, other)
        return SampledFunction(self.grid, self.space, self.values - other.values)

    def __mul__(self, c) -> "SampledFunction":
        return SampledFunction(self.grid, self.space, self.values * c)

    __rmul__ = __mul__


@dataclass(frozen=True)
class SpectralFunction:
    """Fourier coefficients in unshifted FFT order, shape ``grid.shape + (ncomp,)``."""

    grid: GridSpec
    space: TargetSpace
    coefficients: np.ndarray = field(repr=False)

    def __post_init__(self):
        expected = self.grid.shape + (self.space.ncomp,)
        if self.coefficients.shape != expected:
            raise ValueError(
                f"coefficient shape {self.coefficients.shape} does not match {expected}"
            )


def _check_compatible(f: SampledFunction, g: SampledFunction):
    if f.grid != g.grid or f.space != g.space:
        raise ValueError("functions live on different grids or target spaces")


def _origin_phase(grid: GridSpec) -> np.ndarray:
    # The grid origin is -L/2, not 0; each axis contributes (-1)^k to the DFT.
    k = np.arange(grid.n)
    sign = np.where(k % 2 == 0, 1.0, -1.0)
    out = sign
    for _ in range(grid.d - 1):
        out = np.multiply.outer(out, sign)
    return out[..., np.newaxis]


def forward(f: SampledFunction) -> SpectralFunction:
    """Discrete realization of ``fhat(xi) = integral f exp(-i x.xi) dx``."""
    axes = tuple(range(f.grid.d))
    coeffs = np.fft.fftn(f.values, axes=axes)
    coeffs *= f.grid.cell_volume * _origin_phase(f.grid)
    return SpectralFunction(f.grid, f.space, coeffs)


def inverse(F: SpectralFunction) -> SampledFunction:
    """Inverse of :func:`forward`; Fourier series ``f = L^{-d} sum_k fhat_k e^{i xi_k x}``."""
    axes = tuple(range(F.grid.d))
    vals = np.fft.ifftn(F.coefficients * _origin_phase(F.grid), axes=axes)
    vals /= F.grid.cell_volume
    return SampledFunction(F.grid, F.space, vals)


def apply_symbol(symbol, f: SampledFunction) -> SampledFunction:
    """Apply the Fourier multiplier ``f -> inverse[symbol(xi) * forward(f)]``.

    ``symbol`` is evaluated on the grid's frequency lattice (or given
    directly as an array of lattice values) and acts componentwise on the
    target space.  Non-finite symbol values at needed frequencies are
    rejected.
    """
    if isinstance(symbol, np.ndarray):
        if symbol.shape != f.grid.shape:
            raise ValueError("symbol array shape does not match the frequency lattice")
        m = symbol.astype(complex)
    else:
        m = evaluate_on_frequencies(symbol, f.grid)
    if not np.all(np.isfinite(m)):
        raise ValueError("symbol is non-finite at a grid frequency")
    F = forward(f)
    coeffs = F.coefficients * m[..., np.newaxis]
    return inverse(SpectralFunction(f.grid, f.space, coeffs))


def evaluate_on_frequencies(symbol, grid: GridSpec) -> np.ndarray:
    """Evaluate a symbol on the frequency lattice, shape ``grid.shape``.

    Accepts a callable of the stacked frequency array (shape ``(..., d)`` for
    d = 2, plain array for d = 1) or anything with an ``evaluate`` method.
    """
    if hasattr(symbol, "evaluate"):
        fn = symbol.evaluate
    else:
        fn = symbol
    if grid.d == 1:
        xi = grid.axis_freqs()
        return np.asarray(fn(xi), dtype=complex)
    xi = np.stack(grid.frequencies(), axis=-1)
    return np.asarray(fn(xi), dtype=complex)


# ---------------------------------------------------------------------------
# Sampling of function descriptors


def sample(grid: GridSpec, f: Callable | np.ndarray, space: TargetSpace = SCALAR) -> SampledFunction:
    """Sample a function descriptor at the grid nodes.

    ``f`` may be a callable of the node coordinates (one array per axis,
    d = 1 callables receive a single array) returning either the scalar
    values or an array with a trailing component axis, or a ready-made
    value array.
    """
    if callable(f):
        xs = grid.coords()
        vals = f(*xs) if grid.d > 1 else f(xs[0])
    else:
        vals = f
    vals = np.asarray(vals, dtype=complex)
    if vals.shape == grid.shape:
        vals = vals[..., np.newaxis]
        if space.ncomp != 1:
            vals = np.broadcast_to(vals, grid.shape + (space.ncomp,)).copy()
    if not np.all(np.isfinite(vals)):
        raise ValueError("descriptor is singular (non-finite) at a grid node")
    return SampledFunction(grid, space, vals)


def gaussian(scale: float = 1.0, center=0.0):
    """Descriptor for ``exp(-|scale (x - center)|^2)``."""

    def f(*xs):
        c = np.broadcast_to(np.atleast_1d(center), (len(xs),))
        r2 = sum((scale * (x - ci)) ** 2 for x, ci in zip(xs, c))
        return np.exp(-r2)

    return f


def modulated_gaussian(xi0, scale: float = 1.0, center=0.0):
    """Descriptor for ``exp(-|scale (x-center)|^2) exp(i xi0.x)``."""

    def f(*xs):
        c = np.broadcast_to(np.atleast_1d(center), (len(xs),))
        k = np.broadcast_to(np.atleast_1d(xi0), (len(xs),))
        r2 = sum((scale * (x - ci)) ** 2 for x, ci in zip(xs, c))
        phase = sum(ki * x for x, ki in zip(xs, k))
        return np.exp(-r2) * np.exp(1j * phase)

    return f


def fourier_mode(grid: GridSpec, k) -> Callable:
    """Descriptor for the lattice mode ``exp(i xi_k . x)``.

    ``k`` is an integer index per axis; the frequency is ``2 pi k / L``.
    """
    k = np.atleast_1d(np.asarray(k, dtype=int))
    if k.size != grid.d:
        raise ValueError("mode index dimension mismatch")
    if np.any(k < -grid.n // 2) or np.any(k >= grid.n // 2):
        raise ValueError("mode index outside the frequency lattice")
    xi = 2.0 * np.pi * k / grid.period

    def f(*xs):
        phase = sum(xii * x for x, xii in zip(xs, xi))
        return np.exp(1j * phase)

    return f


def _smoothstep_poly(order: int) -> np.poly1d:
    # C^N transition 0 -> 1 on [0, 1]; order = 2N + 1 is the polynomial degree.
    if order < 1 or order % 2 == 0:
        raise ValueError("smoothstep order must be odd and >= 1")
    N = (order - 1) // 2
    from math import comb

    coeffs = np.zeros(order + 1)
    for k in range(N + 1):
        coeffs[N + 1 + k] = comb(N + k, k) * comb(2 * N + 1, N - k) * (-1) ** k
    return np.poly1d(coeffs[::-1])


def smoothstep(u: np.ndarray, order: int = 7) -> np.ndarray:
    """Polynomial C^((order-1)/2) ramp from 0 at u<=0 to 1 at u>=1."""
    p = _smoothstep_poly(order)
    u = np.asarray(u, dtype=float)
    return np.where(u <= 0, 0.0, np.where(u >= 1, 1.0, p(np.clip(u, 0.0, 1.0))))


def bump(radius: float = 1.0, center=0.0, order: int = 7):
    """Compactly supported radial bump: 1 near center, 0 outside ``radius``.

    Built from a polynomial smoothstep in ``|x - center|``; identically zero
    for ``|x - center| >= radius``.
    """

    def f(*xs):
        c = np.broadcast_to(np.atleast_1d(center), (len(xs),))
        r = np.sqrt(sum((x - ci) ** 2 for x, ci in zip(xs, c))) / radius
        return 1.0 - smoothstep(2.0 * r - 1.0, order=order)

    return f


def shifted(descriptor: Callable, shift) -> Callable:
    """Descriptor for ``x -> f(x - shift)``."""

    def f(*xs):
        s = np.broadcast_to(np.atleast_1d(shift), (len(xs),))
        return descriptor(*[x - si for x, si in zip(xs, s)])

    return f


def dilated(descriptor: Callable, a: float) -> Callable:
    """Descriptor for ``x -> f(a x)``."""

    def f(*xs):
        return descriptor(*[a * x for x in xs])

    return f


# ---------------------------------------------------------------------------
# Weighted L^p quadrature

_CELL_CACHE: dict = {}


def cell_masses(grid: GridSpec, w: Weight) -> np.ndarray:
    """Exact weight mass of each grid cell ``[x_k, x_k + dx)^d``.

    Analytic weight kinds integrate in closed form; custom weights use the
    midpoint rule per cell.  Shape ``grid.shape``.
    """
    key = (grid, w.cache_key())
    if key in _CELL_CACHE:
        return _CELL_CACHE[key]
    edges = np.append(grid.axis_coords(), 0.5 * grid.period)
    masses = w.cell_masses_1d(edges)  # first-axis masses, length n
    if w.kind == "custom":
        out = masses if grid.d == 1 else w.cell_masses_2d(edges)
    else:
        if grid.d == 1:
            out = masses
        else:
            out = np.multiply.outer(masses, np.full(grid.n, grid.dx))
    if w.cache_key() is not None:
        _CELL_CACHE[key] = out
    return out


def lp_norm(f: SampledFunction, p: float, w: Weight | float = 1.0) -> float:
    """Weighted norm ``( sum_cells |f(x_cell)|_X^p  w(cell) )^{1/p}``.

    ``w(cell)`` is the exact cell integral for analytic weight kinds and the
    midpoint rule for custom weights.  Requires ``p in (1, inf)`` and a
    cell-integrable weight.
    """
    if not 1.0 < p < np.inf:
        raise ValueError(f"p must lie in (1, inf), got {p}")
    w = _as_weight(w)
    return weighted_p_quadrature(f.xnorm(), f.grid, p, w)


def weighted_p_quadrature(field: np.ndarray, grid: GridSpec, p: float, w: Weight) -> float:
    """``( sum_cells field(x_cell)^p w(cell) )^{1/p}`` for a nonnegative field."""
    masses = cell_masses(grid, w)
    if not np.all(np.isfinite(masses)):
        raise ValueError(
            "weight is not integrable on a grid cell (singular exponent <= -1)"
        )
    return float((field**p * masses).sum() ** (1.0 / p))


def _as_weight(w) -> Weight:
    if isinstance(w, Weight):
        return w
    return constant_weight(float(w))


# ---------------------------------------------------------------------------
# Flat serialization (header + row-major complex pairs)


def save_sampled(path, f: SampledFunction):
    """Write a sampled function as CSV: a header line then re,im rows."""
    space = f.space
    header = f"{f.grid.d},{f.grid.n},{f.grid.period!r},{space.kind},{space.q!r},{space.dim}"
    flat = f.values.reshape(-1)
    data = np.column_stack([flat.real, flat.imag])
    np.savetxt(path, data, delimiter=",", header=header, comments="# ")


def load_sampled(path) -> SampledFunction:
    with open(path) as fh:
        first = fh.readline()
    if not first.startswith("# "):
        raise ValueError("missing header line")
    d, n, period, kind, q, dim = first[2:].strip().split(",")
    grid = make_grid(int(d), int(n), float(period))
    space = TargetSpace(kind, float(q), int(dim))
    data = np.loadtxt(path, delimiter=",", skiprows=1)
    data = np.atleast_2d(data)
    vals = (data[:, 0] + 1j * data[:, 1]).reshape(grid.shape + (space.ncomp,))
    return SampledFunction(grid, space, vals)
