"""Convolution kernels for difference means.

Every kernel records the evidence that it is an admissible averaging
kernel: a radially decreasing integrable majorant (its integral), the value
``khat0 = integral of K``, and a truncation radius outside of which the
remaining mass is below 1e-10 (exact 0 for compactly supported kernels).
Where the Fourier transform is known in closed form it is attached as a
:class:`~besselspace.symbols.Symbol`; custom sampled kernels get a
trapezoid-rule transform instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.special import erf

from .grid import smoothstep, _smoothstep_poly
from .symbols import (Symbol, callable_symbol, gauss_hat_symbol, sinc_symbol,
                      tensor_symbol)

__all__ = [
    "Kernel",
    "gaussian_kernel",
    "indicator_cube_kernel",
    "modulated_gaussian_kernel",
    "plateau_kernel",
    "step2_kernel",
    "custom_sampled_kernel",
    "parse_kernel",
]


@dataclass(frozen=True)
class Kernel:
    """An integrable averaging kernel with its transform and certificates."""

    name: str
    d: int
    spatial: Callable = field(compare=False)  # (*h arrays per axis) -> values
    transform: Symbol | None = field(compare=False)
    khat0: float
    majorant_integral: float
    quad_radius: float
    compact: bool = False
    bandwidth: float = 2.0
    moment_order: float = np.inf  # declared r with finite int |K| (1+|h|)^r
    marginal_tail: Callable | None = field(default=None, compare=False)

    def __call__(self, *hs) -> np.ndarray:
        return np.asarray(self.spatial(*hs), dtype=float)

    def first_marginal_tail(self, a) -> np.ndarray:
        """``int_{h1 <= a}`` of the kernel (all other axes integrated out)."""
        if self.marginal_tail is None:
            raise ValueError(f"kernel {self.name} has no closed-form marginal tail")
        return np.asarray(self.marginal_tail(np.asarray(a, dtype=float)), dtype=float)


def gaussian_kernel(d: int = 1) -> Kernel:
    """``pi^{-d/2} exp(-|h|^2)``: rapidly decaying with unit integral."""

    def spatial(*hs):
        r2 = sum(np.asarray(h, dtype=float) ** 2 for h in hs)
        return np.pi ** (-d / 2.0) * np.exp(-r2)

    transform = tensor_symbol([gauss_hat_symbol(0.25)] * d) if d > 1 \
        else gauss_hat_symbol(0.25)

    def tail(a):
        return 0.5 * (1.0 + erf(a))

    return Kernel("gauss", d, spatial, transform, khat0=1.0, majorant_integral=1.0,
                  quad_radius=5.5, marginal_tail=tail)


def indicator_cube_kernel(d: int = 1) -> Kernel:
    """``2^{-d}`` times the indicator of the unit cube; transform is sinc^d."""

    def spatial(*hs):
        inside = np.ones_like(np.asarray(hs[0], dtype=float))
        for h in hs:
            inside = inside * (np.abs(np.asarray(h, dtype=float)) <= 1.0)
        return 2.0**-d * inside

    transform = tensor_symbol([sinc_symbol()] * d) if d > 1 else sinc_symbol()

    def tail(a):
        return np.clip(0.5 * (a + 1.0), 0.0, 1.0)

    return Kernel("indicator_cube", d, spatial, transform, khat0=1.0,
                  majorant_integral=float(2.0**-d * (2.0 * np.sqrt(d)) ** d),
                  quad_radius=1.0, compact=True, marginal_tail=tail)


def modulated_gaussian_kernel(d: int = 1, a: float = 2.0) -> Kernel:
    """``pi^{-d/2} exp(-|h|^2) cos(a h_1)``: Schwartz with integral e^{-a^2/4}."""

    def spatial(*hs):
        r2 = sum(np.asarray(h, dtype=float) ** 2 for h in hs)
        return np.pi ** (-d / 2.0) * np.exp(-r2) * np.cos(a * np.asarray(hs[0], dtype=float))

    gh = gauss_hat_symbol(0.25)

    def first_axis_ev(xi):
        return 0.5 * (gh.evaluate(xi - a) + gh.evaluate(xi + a))

    def first_axis_dv(alpha, xi):
        return 0.5 * (gh.derivative(alpha, xi - a) + gh.derivative(alpha, xi + a))

    first = Symbol(1, f"cosgauss({a:g})", first_axis_ev, first_axis_dv,
                   value_at_zero=float(np.exp(-a * a / 4.0)))
    transform = tensor_symbol([first] + [gauss_hat_symbol(0.25)] * (d - 1)) \
        if d > 1 else first

    def tail(t):
        # int_-inf^t pi^(-1/2) e^(-u^2) cos(a u) du, via the complex error function
        from scipy.special import erf as _erf
        z = np.asarray(t, dtype=complex) + 0.5j * a
        val = np.exp(-a * a / 4.0) * 0.5 * (1.0 + _erf(z)).real
        return val

    return Kernel(f"modgauss({a:g})", d, spatial, transform,
                  khat0=float(np.exp(-a * a / 4.0)), majorant_integral=1.0,
                  quad_radius=5.5, bandwidth=2.0 + abs(a), marginal_tail=tail)


def plateau_kernel(order: int = 7) -> Kernel:
    """Even 1d plateau: 1 on [-1,1], smoothstep down to 0 on [-2,2].

    Radially decreasing, so the kernel is its own majorant;
    ``int K = 2 + 2 int_0^1 (1 - S) = 3`` for any symmetric step profile.
    """

    def spatial(h):
        return 1.0 - smoothstep(np.abs(np.asarray(h, dtype=float)) - 1.0, order=order)

    P = _smoothstep_poly(order).integ()  # P(0) = 0, P(1) = 1/2

    def tail(a):
        a = np.asarray(a, dtype=float)
        # piecewise antiderivative of the even profile, left to right
        u = np.clip(-a - 1.0, 0.0, 1.0)        # ramp variable on [-2, -1]
        v = np.clip(a - 1.0, 0.0, 1.0)         # ramp variable on [1, 2]
        left = (1.0 - u) - (0.5 - P(u))        # mass of [-2, min(a, -1)]
        mid = np.clip(a + 1.0, 0.0, 2.0)       # mass of [-1, min(a, 1)]
        right = v - P(v)                       # mass of [1, min(a, 2)]
        return np.where(a <= -2.0, 0.0, left + mid + right)

    total = 3.0

    nodes, wts = np.polynomial.legendre.leggauss(48)
    pieces_h, pieces_w = [], []
    for a, b in ((-2.0, -1.0), (-1.0, 1.0), (1.0, 2.0)):
        pieces_h.append(0.5 * (a + b) + 0.5 * (b - a) * nodes)
        pieces_w.append(0.5 * (b - a) * wts)
    qh = np.concatenate(pieces_h)
    qw = np.concatenate(pieces_w)

    def ev(xi):
        # piecewise Gauss-Legendre transform: the profile is polynomial on
        # each of [-2,-1], [-1,1], [1,2], so the rule is machine-exact
        coeff = qw * spatial(qh)
        xi = np.asarray(xi, dtype=float)
        out = coeff @ np.exp(-1j * np.multiply.outer(qh, xi.ravel()))
        return out.reshape(xi.shape)

    transform = callable_symbol(ev, d=1, key=f"plateauhat({order})",
                                value_at_zero=total)
    return Kernel(f"plateau({order})", 1, spatial, transform, khat0=total,
                  majorant_integral=total, quad_radius=2.0, compact=True,
                  marginal_tail=tail)


def step2_kernel(d: int = 1, order: int = 7) -> Kernel:
    """Boundary-profile kernel: plateau in h1 tensor a unit-mass Gaussian in h'."""
    plat = plateau_kernel(order)
    if d == 1:
        return plat

    def spatial(h1, h2):
        return plat.spatial(h1) * np.pi**-0.5 * np.exp(-np.asarray(h2, dtype=float) ** 2)

    transform = tensor_symbol([plat.transform, gauss_hat_symbol(0.25)])
    return Kernel(f"step2({order})", d, spatial, transform, khat0=plat.khat0,
                  majorant_integral=plat.majorant_integral, quad_radius=5.5,
                  compact=False, marginal_tail=plat.marginal_tail)


def custom_sampled_kernel(h: np.ndarray, values: np.ndarray, name: str = "custom") -> Kernel:
    """One-dimensional kernel from uniform samples on a compact support.

    The transform is the trapezoid-rule Fourier sum of the samples and the
    marginal tail the cumulative trapezoid integral.
    """
    h = np.asarray(h, dtype=float)
    values = np.asarray(values, dtype=float)
    if h.ndim != 1 or h.shape != values.shape or len(h) < 2:
        raise ValueError("need matching 1d sample arrays")
    if not np.allclose(np.diff(h), h[1] - h[0]):
        raise ValueError("samples must be uniformly spaced")
    dh = h[1] - h[0]
    wts = np.full(len(h), dh)
    wts[[0, -1]] = dh / 2.0
    total = float(wts @ values)

    def spatial(x):
        return np.interp(np.asarray(x, dtype=float), h, values, left=0.0, right=0.0)

    def ev(xi):
        xi = np.asarray(xi, dtype=float)
        flat = xi.ravel()
        out = (wts * values) @ np.exp(-1j * np.outer(h, flat))
        return out.reshape(xi.shape)

    cum = np.concatenate([[0.0], np.cumsum(0.5 * (values[1:] + values[:-1]) * dh)])

    def tail(a):
        return np.interp(np.asarray(a, dtype=float), h, cum, left=0.0, right=cum[-1])

    transform = callable_symbol(ev, d=1, key=f"customhat({name})", value_at_zero=total)
    return Kernel(name, 1, spatial, transform, khat0=total,
                  majorant_integral=float(np.abs(values).max() * (h[-1] - h[0])),
                  quad_radius=float(max(abs(h[0]), abs(h[-1]))), compact=True,
                  marginal_tail=tail)


def parse_kernel(record: str, d: int = 1) -> Kernel:
    """Resolve a registry string: ``gauss``, ``indicator_cube``, ``modgauss:a``,
    ``plateau``, ``step2`` or ``custom:<csv-file>``."""
    parts = record.split(":")
    head = parts[0]
    if head == "gauss":
        return gaussian_kernel(d)
    if head == "indicator_cube":
        return indicator_cube_kernel(d)
    if head == "modgauss":
        return modulated_gaussian_kernel(d, float(parts[1]) if len(parts) > 1 else 2.0)
    if head == "plateau":
        return plateau_kernel()
    if head == "step2":
        return step2_kernel(d)
    if head == "custom":
        data = np.loadtxt(parts[1], delimiter=",")
        return custom_sampled_kernel(data[:, 0], data[:, 1],
                                     name=f"custom:{parts[1]}")
    raise ValueError(f"unknown kernel {record!r}")
