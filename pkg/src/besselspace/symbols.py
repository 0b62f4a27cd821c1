"""Fourier symbols and the multiplier condition evaluators.

A :class:`Symbol` evaluates ``xi -> m(xi)`` on arrays and, for the analytic
built-ins, provides exact derivatives of any order.  On top of that sit the
sampled condition evaluators: the homogeneous-derivative (Mihlin-type) norm,
the Tauberian annulus constant, the near-zero/near-infinity dilation
conditions, the dyadic Hölder quantities and an empirical l2-boundedness
estimator.  All sampled suprema are lower bounds of the true ones; sampling
refinement can only increase them.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass, field
from math import comb, factorial
from typing import Callable, Sequence

import numpy as np

from .grid import SampledFunction, apply_symbol
from .rademacher import rademacher_norm, square_function_norm

__all__ = [
    "Symbol",
    "const_symbol",
    "sinc_symbol",
    "gauss_hat_symbol",
    "bessel_symbol",
    "poly_power_symbol",
    "sign_symbol",
    "min_abs_symbol",
    "tensor_symbol",
    "dilate_symbol",
    "lincomb_symbol",
    "callable_symbol",
    "parse_symbol",
    "RadialSampling",
    "ConditionReport",
    "mihlin_norm",
    "tauberian_constant",
    "dilation_conditions",
    "hoelder_conditions",
    "l2_bound_estimate",
]


# ---------------------------------------------------------------------------
# Symbol representation


@dataclass(frozen=True)
class Symbol:
    """A scalar Fourier symbol with optional exact derivatives.

    ``eval_fn`` maps a frequency array (shape ``(...,)`` in d = 1 or
    ``(..., d)`` stacked coordinates in d = 2) to complex values.
    ``deriv_fn(alpha, xi)`` returns the exact mixed partial ``D^alpha m``
    when available; otherwise central finite differences of order <= 2 are
    used with steps proportional to ``|xi|``.
    """

    d: int
    key: str
    eval_fn: Callable = field(compare=False)
    deriv_fn: Callable | None = field(default=None, compare=False)
    continuous_at_zero: bool = True
    value_at_zero: complex = 0.0 + 0.0j

    def evaluate(self, xi) -> np.ndarray:
        return np.asarray(self.eval_fn(np.asarray(xi, dtype=float)), dtype=complex)

    __call__ = evaluate

    def derivative(self, alpha, xi) -> np.ndarray:
        alpha = _as_multiindex(alpha, self.d)
        xi = np.asarray(xi, dtype=float)
        if sum(alpha) == 0:
            return self.evaluate(xi)
        if self.deriv_fn is not None:
            return np.asarray(self.deriv_fn(alpha, xi), dtype=complex)
        return _fd_derivative(self.evaluate, alpha, xi, self.d)

    @property
    def has_exact_derivatives(self) -> bool:
        return self.deriv_fn is not None


def _as_multiindex(alpha, d) -> tuple:
    if np.isscalar(alpha):
        alpha = (int(alpha),)
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != d or any(a < 0 for a in alpha):
        raise ValueError(f"invalid multi-index {alpha} for dimension {d}")
    return alpha


def _fd_derivative(fn, alpha, xi, d, rel_step: float = 1e-5):
    """Central finite differences (4th-order stencils), orders <= 2 per axis."""
    order = sum(alpha)
    if order > 2:
        raise ValueError(
            "finite differences support derivative orders <= 2; "
            "use a built-in symbol with exact derivatives"
        )
    if d == 1:
        h = np.maximum(np.abs(xi), 1e-3) * rel_step
        if alpha[0] == 1:
            return (fn(xi - 2 * h) - 8 * fn(xi - h) + 8 * fn(xi + h) - fn(xi + 2 * h)) / (12 * h)
        h = np.maximum(np.abs(xi), 1.0) * 1e-3
        return (-fn(xi - 2 * h) + 16 * fn(xi - h) - 30 * fn(xi)
                + 16 * fn(xi + h) - fn(xi + 2 * h)) / (12 * h**2)
    # d == 2: apply axis stencils successively
    mag = np.sqrt((np.asarray(xi) ** 2).sum(axis=-1))

    def axis_d1(g, axis):
        def out(x):
            h = np.maximum(mag, 1e-3) * rel_step
            e = np.zeros(d)
            e[axis] = 1.0
            hh = h[..., None] * e
            return (g(x - 2 * hh) - 8 * g(x - hh) + 8 * g(x + hh) - g(x + 2 * hh)) / (12 * h)
        return out

    g = fn
    for axis, k in enumerate(alpha):
        for _ in range(k):
            g = axis_d1(g, axis)
    return g(np.asarray(xi, dtype=float))


# ---------------------------------------------------------------------------
# 1d built-ins with exact derivatives


def const_symbol(c: complex, d: int = 1) -> Symbol:
    def ev(xi):
        shape = xi.shape[:-1] if d > 1 else xi.shape
        return np.full(shape, c, dtype=complex)

    def dv(alpha, xi):
        shape = xi.shape[:-1] if d > 1 else xi.shape
        return np.zeros(shape, dtype=complex)

    return Symbol(d, f"const({c:g})", ev, dv, value_at_zero=c)


def _sinc_deriv(k: int, x: np.ndarray) -> np.ndarray:
    """k-th derivative of sin(x)/x, stable through x = 0."""
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    small = np.abs(x) < 0.5
    xs = x[small]
    # Taylor branch: sinc = sum_m (-1)^m x^(2m) / (2m+1)!
    acc = np.zeros_like(xs)
    for m in range((k + 1) // 2, 16):
        e = 2 * m - k
        coeff = (-1.0) ** m * factorial(2 * m) / (factorial(e) * factorial(2 * m + 1))
        acc += coeff * xs**e
    out[small] = acc
    xl = x[~small]
    # Leibniz on sin(x) * x^(-1)
    acc = np.zeros_like(xl)
    for j in range(k + 1):
        sin_j = np.sin(xl + j * np.pi / 2.0)
        acc += comb(k, j) * sin_j * (-1.0) ** (k - j) * factorial(k - j) * xl ** (-(k - j + 1))
    out[~small] = acc
    return out


def sinc_symbol() -> Symbol:
    """``sin(xi)/xi`` with value 1 at 0; transform of the normalized interval."""
    def ev(xi):
        return _sinc_deriv(0, xi)

    def dv(alpha, xi):
        return _sinc_deriv(alpha[0], xi)

    return Symbol(1, "sinc", ev, dv, value_at_zero=1.0)


def gauss_hat_symbol(a: float = 1.0) -> Symbol:
    """``exp(-a xi^2)``; derivatives via the polynomial recurrence."""
    polys = [np.poly1d([1.0])]

    def _poly(k):
        while len(polys) <= k:
            p = polys[-1]
            polys.append(p.deriv() + np.poly1d([-2.0 * a, 0.0]) * p)
        return polys[k]

    def ev(xi):
        return np.exp(-a * xi**2)

    def dv(alpha, xi):
        return _poly(alpha[0])(xi) * np.exp(-a * xi**2)

    return Symbol(1, f"gausshat({a:g})", ev, dv, value_at_zero=1.0)


def poly_power_symbol(terms: dict, d: int = 1, key: str = "") -> Symbol:
    """Symbols of the form ``sum A xi^a (1 + |xi|^2)^c`` (closed under D).

    ``terms`` maps ``(a_1, ..., a_d, c)`` to the coefficient ``A``.
    """
    terms = {tuple(k): complex(v) for k, v in terms.items()}

    def ev(xi):
        xi = np.asarray(xi, dtype=float)
        comps = (xi,) if d == 1 else tuple(xi[..., i] for i in range(d))
        base = 1.0 + sum(c**2 for c in comps)
        out = 0.0
        for kk, A in terms.items():
            mon = np.ones_like(base)
            for i in range(d):
                if kk[i]:
                    mon = mon * comps[i] ** kk[i]
            out = out + A * mon * base ** kk[-1]
        return out

    def _diff(ts, axis):
        out: dict = {}
        for kk, A in ts.items():
            a, c = kk[axis], kk[-1]
            if a:
                k1 = list(kk)
                k1[axis] -= 1
                out[tuple(k1)] = out.get(tuple(k1), 0.0) + A * a
            if c:
                k2 = list(kk)
                k2[axis] += 1
                k2[-1] -= 1
                out[tuple(k2)] = out.get(tuple(k2), 0.0) + 2.0 * A * c
        return out

    def dv(alpha, xi):
        ts = terms
        for axis, k in enumerate(alpha):
            for _ in range(k):
                ts = _diff(ts, axis)
        return poly_power_symbol(ts, d=d).evaluate(xi) if ts else (
            np.zeros(xi.shape[:-1] if d > 1 else xi.shape, dtype=complex))

    v0 = sum(A for kk, A in terms.items() if all(a == 0 for a in kk[:-1]))
    return Symbol(d, key or f"polypower({sorted(terms.items())!r},{d})", ev, dv,
                  value_at_zero=v0)


def bessel_symbol(s: float, d: int = 1) -> Symbol:
    """``(1 + |xi|^2)^{s/2}``, the smoothing/roughening symbol of order -s."""
    return poly_power_symbol({(0,) * d + (s / 2.0,): 1.0}, d=d, key=f"bessel({s:g},{d})")


def sign_symbol() -> Symbol:
    def ev(xi):
        return np.where(xi >= 0, 1.0, -1.0).astype(complex)

    def dv(alpha, xi):
        return np.zeros_like(np.asarray(xi, dtype=float), dtype=complex)

    return Symbol(1, "sign", ev, dv, continuous_at_zero=False, value_at_zero=1.0)


def min_abs_symbol() -> Symbol:
    """``min(1, |xi|)``; Lipschitz test symbol for the Hölder quantities."""
    def ev(xi):
        return np.minimum(1.0, np.abs(xi)).astype(complex)

    def dv(alpha, xi):
        if alpha[0] > 1:
            return np.zeros_like(xi, dtype=complex)
        return np.where(np.abs(xi) < 1.0, np.sign(xi), 0.0).astype(complex)

    return Symbol(1, "minabs", ev, dv, value_at_zero=0.0)


def callable_symbol(fn: Callable, d: int = 1, key: str = "",
                    continuous_at_zero: bool = True, value_at_zero=None) -> Symbol:
    v0 = fn(np.zeros(d) if d > 1 else 0.0) if value_at_zero is None else value_at_zero
    return Symbol(d, key or f"callable@{id(fn):x}", fn,
                  continuous_at_zero=continuous_at_zero, value_at_zero=complex(v0))


# ---------------------------------------------------------------------------
# Combinators


def tensor_symbol(factors: Sequence[Symbol], key: str = "") -> Symbol:
    """Product symbol ``m(xi) = prod_i m_i(xi_i)`` over 1d factors."""
    d = len(factors)
    if any(f.d != 1 for f in factors):
        raise ValueError("tensor factors must be one-dimensional")
    if d == 1:
        return factors[0]

    def ev(xi):
        out = factors[0].evaluate(xi[..., 0])
        for i in range(1, d):
            out = out * factors[i].evaluate(xi[..., i])
        return out

    def dv(alpha, xi):
        out = factors[0].derivative((alpha[0],), xi[..., 0])
        for i in range(1, d):
            out = out * factors[i].derivative((alpha[i],), xi[..., i])
        return out

    v0 = np.prod([f.value_at_zero for f in factors])
    dfn = dv if all(f.has_exact_derivatives for f in factors) else None
    return Symbol(d, key or "tensor(" + ",".join(f.key for f in factors) + ")",
                  ev, dfn, all(f.continuous_at_zero for f in factors), v0)


def dilate_symbol(m: Symbol, lam: float, key: str = "") -> Symbol:
    """``xi -> m(lam xi)``; derivatives pick up ``lam^|alpha|``."""

    def ev(xi):
        return m.evaluate(lam * np.asarray(xi, dtype=float))

    def dv(alpha, xi):
        return lam ** sum(alpha) * m.derivative(alpha, lam * np.asarray(xi, dtype=float))

    return Symbol(m.d, key or f"dilate({m.key},{lam:g})", ev,
                  dv if m.has_exact_derivatives else None,
                  m.continuous_at_zero, m.value_at_zero)


def lincomb_symbol(coeffs: Sequence[complex], symbols: Sequence[Symbol], key: str = "") -> Symbol:
    if len(coeffs) != len(symbols) or not symbols:
        raise ValueError("need one coefficient per symbol")
    d = symbols[0].d
    if any(s.d != d for s in symbols):
        raise ValueError("mixed dimensions in linear combination")

    def ev(xi):
        out = coeffs[0] * symbols[0].evaluate(xi)
        for c, s in zip(coeffs[1:], symbols[1:]):
            out = out + c * s.evaluate(xi)
        return out

    def dv(alpha, xi):
        out = coeffs[0] * symbols[0].derivative(alpha, xi)
        for c, s in zip(coeffs[1:], symbols[1:]):
            out = out + c * s.derivative(alpha, xi)
        return out

    v0 = sum(c * s.value_at_zero for c, s in zip(coeffs, symbols))
    dfn = dv if all(s.has_exact_derivatives for s in symbols) else None
    return Symbol(d, key or "lincomb(" + ",".join(
        f"{c:g}*{s.key}" for c, s in zip(coeffs, symbols)) + ")",
        ev, dfn, all(s.continuous_at_zero for s in symbols), v0)


def parse_symbol(name: str, d: int = 1) -> Symbol:
    """Resolve a registry string like ``sinc``, ``gauss:2``, ``bessel:0.5``,
    ``const:1`` or ``indicator_cube`` into a Symbol."""
    parts = name.replace("(", ":").replace(")", "").split(":")
    head, args = parts[0], [float(v) for v in parts[1:] if v != ""]
    if head == "sinc":
        return sinc_symbol()
    if head == "gauss":
        return gauss_hat_symbol(args[0] if args else 1.0)
    if head == "bessel":
        return bessel_symbol(args[0], d=d)
    if head == "const":
        return const_symbol(args[0] if args else 1.0, d=d)
    if head == "sign":
        return sign_symbol()
    if head == "minabs":
        return min_abs_symbol()
    if head in ("indicator_cube", "indicator_cube_d1"):
        dd = 1 if head.endswith("d1") else d
        return tensor_symbol([sinc_symbol()] * dd, key=f"indicator_cube_d{dd}") \
            if dd > 1 else sinc_symbol()
    raise ValueError(f"unknown symbol {name!r}")


# ---------------------------------------------------------------------------
# Sampling grids


@dataclass(frozen=True)
class RadialSampling:
    """Log2-uniform radii with optional angular resolution for d = 2."""

    rmin: float = 2.0**-12
    rmax: float = 2.0**12
    per_octave: int = 16
    angles: int = 32

    def radii(self) -> np.ndarray:
        lo, hi = np.log2(self.rmin), np.log2(self.rmax)
        count = int(round((hi - lo) * self.per_octave)) + 1
        return 2.0 ** np.linspace(lo, hi, count)

    def points(self, d: int, radii=None) -> np.ndarray:
        """Sample points, shape (npts,) for d = 1 and (npts, 2) for d = 2."""
        r = self.radii() if radii is None else np.asarray(radii)
        if d == 1:
            return np.concatenate([-r[::-1], r])
        th = 2.0 * np.pi * np.arange(self.angles) / self.angles
        pts = r[:, None, None] * np.stack([np.cos(th), np.sin(th)], axis=-1)
        return pts.reshape(-1, 2)


def _magnitude(pts, d):
    return np.abs(pts) if d == 1 else np.sqrt((pts**2).sum(axis=-1))


def _multiindices(d, max_order, min_order=0):
    if d == 1:
        return [(k,) for k in range(min_order, max_order + 1)]
    return [(a, b) for a in range(max_order + 1) for b in range(max_order + 1)
            if min_order <= a + b <= max_order]


# ---------------------------------------------------------------------------
# Condition evaluators


@dataclass
class ConditionReport:
    """Sampled multiplier-condition quantities with their radius curves.

    Each quantity is a sampled supremum, hence a lower bound of the true
    one; ``flags[name]`` is False when the corresponding radius curve keeps
    growing toward the boundary of the sampled range (numerical evidence of
    divergence).
    """

    quantities: dict
    curves: dict = field(default_factory=dict)
    flags: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "quantities": {k: float(v) for k, v in self.quantities.items()},
            "flags": {k: bool(v) for k, v in self.flags.items()},
            "meta": self.meta,
            "curves": {
                k: {"radii": list(map(float, r)), "values": list(map(float, v))}
                for k, (r, v) in self.curves.items()
            },
        }


def mihlin_norm(m: Symbol, N: int | None = None,
                sampling: RadialSampling = RadialSampling()) -> float:
    """Sampled ``sup_{|alpha|<=N} sup_{xi != 0} |xi|^|alpha| |D^alpha m(xi)|``.

    ``N`` defaults to ``d + 2``.  A lower bound of the true norm; exact
    derivatives are used for built-ins, finite differences otherwise.
    """
    N = m.d + 2 if N is None else N
    pts = sampling.points(m.d)
    mag = _magnitude(pts, m.d)
    best = 0.0
    for alpha in _multiindices(m.d, N):
        vals = np.abs(m.derivative(alpha, pts))
        best = max(best, float((mag ** sum(alpha) * vals).max()))
    return best


def tauberian_constant(m: Symbol, eps: float, radial: int = 512, angles: int = 64) -> float:
    """``min |m|`` over a dense sample of the annulus ``eps/2 < |xi| < 2 eps``.

    A positive return value certifies the annulus lower bound with that
    constant; 0 means the condition fails on the sample.
    """
    if not eps > 0:
        raise ValueError("annulus radius must be positive")
    r = np.linspace(eps / 2.0, 2.0 * eps, radial)
    if m.d == 1:
        pts = np.concatenate([-r[::-1], r])
    else:
        th = 2.0 * np.pi * np.arange(angles) / angles
        pts = (r[:, None, None] * np.stack([np.cos(th), np.sin(th)], axis=-1)).reshape(-1, 2)
    return float(np.abs(m.evaluate(pts)).min())


def _tail_flag(radii: np.ndarray, values: np.ndarray, toward: str) -> bool:
    """True when the curve stays bounded toward the given end of the range."""
    good = values > 0
    if good.sum() < 8:
        return True
    lr = np.log2(radii[good])
    lv = np.log2(values[good])
    q = len(lr) // 4
    sl_lo, sl_hi = (0, q) if toward == "zero" else (len(lr) - q, len(lr))
    slope = np.polyfit(lr[sl_lo:sl_hi], lv[sl_lo:sl_hi], 1)[0]
    return bool(slope > -0.01) if toward == "zero" else bool(slope < 0.01)


def dilation_conditions(M: Symbol, delta0: float, delta_inf: float,
                        N: int | None = None, rmax: float = 2.0**12,
                        per_octave: int = 16) -> ConditionReport:
    """Near-zero and near-infinity decay constants for the dilation family.

    Computes the sampled suprema

        c0   = sup_{0<|xi|<=1} |xi|^-delta0 |M(xi) - M(0)|
               or  sup_{1<=|alpha|<=N} |xi|^(|alpha|-delta0) |D^alpha M|,
        cinf = sup_{|alpha|<=N} sup_{1<=|xi|<=rmax} |xi|^(|alpha|+delta_inf) |D^alpha M|,

    with per-radius curves; a finite pair is numerical evidence that dyadic
    dilations of M form a well-behaved multiplier family.
    """
    if not (delta0 > 0 and delta_inf > 0):
        raise ValueError("decay exponents must be positive")
    if not M.continuous_at_zero:
        raise ValueError("M must be continuous at 0 (M(0) is needed)")
    N = M.d + 2 if N is None else N
    M0 = M.value_at_zero

    inner = RadialSampling(rmin=2.0**-12, rmax=1.0, per_octave=per_octave)
    r_in = inner.radii()
    pts_in = inner.points(M.d, r_in)
    mag_in = _magnitude(pts_in, M.d)
    curve0 = mag_in**-delta0 * np.abs(M.evaluate(pts_in) - M0)
    for alpha in _multiindices(M.d, N, min_order=1):
        vals = np.abs(M.derivative(alpha, pts_in))
        curve0 = np.maximum(curve0, mag_in ** (sum(alpha) - delta0) * vals)
    c0_radii, c0_curve = _radial_max(mag_in, curve0, r_in)

    outer = RadialSampling(rmin=1.0, rmax=rmax, per_octave=per_octave)
    r_out = outer.radii()
    pts_out = outer.points(M.d, r_out)
    mag_out = _magnitude(pts_out, M.d)
    curve_inf = np.zeros_like(mag_out)
    for alpha in _multiindices(M.d, N):
        vals = np.abs(M.derivative(alpha, pts_out))
        curve_inf = np.maximum(curve_inf, mag_out ** (sum(alpha) + delta_inf) * vals)
    ci_radii, ci_curve = _radial_max(mag_out, curve_inf, r_out)

    return ConditionReport(
        quantities={"c0": float(c0_curve.max()), "c_inf": float(ci_curve.max())},
        curves={"c0": (c0_radii, c0_curve), "c_inf": (ci_radii, ci_curve)},
        flags={"c0": _tail_flag(c0_radii, c0_curve, "zero"),
               "c_inf": _tail_flag(ci_radii, ci_curve, "infinity")},
        meta={"delta0": delta0, "delta_inf": delta_inf, "N": N, "rmax": rmax},
    )


def _radial_max(mag, values, radii):
    """Collapse point samples to a per-radius maximum curve."""
    if mag.shape == radii.shape and np.allclose(mag, radii):
        return radii, values
    out = np.zeros_like(radii)
    per = len(mag) // len(radii)
    if per * len(radii) == len(mag):
        out = values.reshape(len(radii), per).max(axis=1)
        return radii, out
    for i, r in enumerate(radii):  # pragma: no cover - irregular layouts
        out[i] = values[np.isclose(mag, r)].max()
    return radii, out


def _holder_interval_seminorm(M: Symbol, gamma: float, a: float, b: float,
                              npts: int) -> float:
    x = np.linspace(a, b, npts)
    v = M.evaluate(x)
    dx = np.abs(x[:, None] - x[None, :])
    dv = np.abs(v[:, None] - v[None, :])
    mask = dx > 0
    return float((dv[mask] / dx[mask] ** gamma).max())


def hoelder_conditions(M: Symbol, gamma: float, delta0: float, delta_inf: float,
                       theta: float, k_range: tuple = (-12, 12),
                       npts: int = 64) -> ConditionReport:
    """Dyadic Hölder seminorm and the one-dimensional decay conditions.

    Computes (a) the seminorm ``sup_k 2^{k gamma} [M]_{C^gamma(I_k)}`` over
    the dyadic intervals ``I_{k,±} = ±[2^{k-2}, 2^{k+2}]`` by sampled
    pairwise quotients, and (b) the constants

        c0   = sup_{0<|xi|<=1} |xi|^-delta0 |M - M(0)|
               or  sup_{|xi|<=1} |xi|^(1-delta0) |M'|,
        cinf = sup_{|xi|>=1} |xi|^max(delta_inf, (gamma+delta_inf)(1-theta)/(1-gamma)) |M|
               or  sup_{|xi|>=1} |xi|^((gamma+delta_inf) theta/gamma) |M'|.
    """
    if M.d != 1:
        raise ValueError("Hölder conditions are one-dimensional")
    if not 0.0 < gamma < 1.0:
        raise ValueError("Hölder exponent must lie in (0, 1)")
    if not 0.0 <= theta <= 1.0:
        raise ValueError("theta must lie in [0, 1]")

    ks = np.arange(k_range[0], k_range[1] + 1)
    k_curve = np.empty(len(ks))
    for i, k in enumerate(ks):
        a, b = 2.0 ** (k - 2.0), 2.0 ** (k + 2.0)
        sem = max(_holder_interval_seminorm(M, gamma, a, b, npts),
                  _holder_interval_seminorm(M, gamma, -b, -a, npts))
        k_curve[i] = 2.0 ** (k * gamma) * sem
    holder = float(k_curve.max())

    inner = RadialSampling(rmin=2.0**-12, rmax=1.0)
    r_in = inner.radii()
    x_in = np.concatenate([-r_in[::-1], r_in])
    m_in = np.abs(M.evaluate(x_in) - M.value_at_zero)
    dm_in = np.abs(M.derivative((1,), x_in))
    c0_vals = np.maximum(np.abs(x_in) ** -delta0 * m_in,
                         np.abs(x_in) ** (1.0 - delta0) * dm_in)
    # fold the two signs onto one radius axis
    c0_curve = np.maximum(c0_vals[:len(r_in)][::-1], c0_vals[len(r_in):])

    e_m = max(delta_inf, (gamma + delta_inf) * (1.0 - theta) / (1.0 - gamma))
    e_dm = (gamma + delta_inf) * theta / gamma
    outer = RadialSampling(rmin=1.0, rmax=2.0**12)
    r_out = outer.radii()
    x_out = np.concatenate([-r_out[::-1], r_out])
    ci_vals = np.maximum(np.abs(x_out) ** e_m * np.abs(M.evaluate(x_out)),
                         np.abs(x_out) ** e_dm * np.abs(M.derivative((1,), x_out)))
    ci_curve = np.maximum(ci_vals[:len(r_out)][::-1], ci_vals[len(r_out):])

    rk = 2.0**ks.astype(float)
    return ConditionReport(
        quantities={"holder_seminorm": holder,
                    "c0": float(c0_curve.max()), "c_inf": float(ci_curve.max())},
        curves={"holder_seminorm": (rk, k_curve),
                "c0": (r_in, c0_curve), "c_inf": (r_out, ci_curve)},
        flags={"holder_seminorm": _tail_flag(rk, k_curve, "infinity")
               and _tail_flag(rk, k_curve, "zero"),
               "c0": _tail_flag(r_in, c0_curve, "zero"),
               "c_inf": _tail_flag(r_out, ci_curve, "infinity")},
        meta={"gamma": gamma, "delta0": delta0, "delta_inf": delta_inf,
              "theta": theta, "k_range": list(k_range)},
    )


# ---------------------------------------------------------------------------
# Empirical l2-boundedness (lower bound for the randomized bound)


def _stable_hash(text: str) -> int:
    return zlib.crc32(text.encode("utf-8"))


def _random_band_limited(grid, space, seed_seq) -> SampledFunction:
    from .grid import SpectralFunction, inverse

    gen = np.random.Generator(np.random.Philox(seed_seq))
    shape = grid.shape + (space.ncomp,)
    coeffs = gen.standard_normal(shape) + 1j * gen.standard_normal(shape)
    return inverse(SpectralFunction(grid, space, coeffs))


def l2_bound_estimate(symbols: Sequence[Symbol], p: float, w, grid,
                      test_families: int = 8, trials: int = 256, seed: int = 0,
                      space=None, mode: str = "square") -> float:
    """Empirical lower bound for the l2-bound of the multiplier family.

    Draws random band-limited test functions (Gaussian spectra on the full
    frequency lattice) and maximizes the square-function ratio

        || (sum_j |T_{m_j} f_j|^2)^(1/2) ||_p / || (sum_j |f_j|^2)^(1/2) ||_p

    over singleton families (one per distinct symbol) and full-family draws.
    Repeated symbols are deduplicated (checking distinct members suffices)
    and test functions are keyed by the symbol, so the estimate is invariant
    under permuting or duplicating the symbol list.  ``mode="rademacher"``
    replaces the square functions by seeded Rademacher-sum estimates with
    ``trials`` trials.
    """
    from .grid import SCALAR

    space = SCALAR if space is None else space
    unique: dict = {}
    for s in symbols:
        unique.setdefault(s.key, s)
    if not unique:
        raise ValueError("need at least one symbol")
    items = sorted(unique.items())

    def norm_of(family, fam_seed):
        if mode == "square":
            return square_function_norm(family, None, p, w)
        return rademacher_norm(family, None, p, w, trials=trials,
                               seed=fam_seed).value

    best = 0.0
    for fam in range(test_families):
        fs = {}
        for key, sym in items:
            ss = np.random.SeedSequence(entropy=seed, spawn_key=(fam, _stable_hash(key)))
            fs[key] = _random_band_limited(grid, space, ss)
        # singletons: the family may consist of a single operator
        for key, sym in items:
            f = fs[key]
            den = norm_of([f], seed + 1)
            if den == 0.0:
                continue
            best = max(best, norm_of([apply_symbol(sym, f)], seed + 1) / den)
        if len(items) > 1:
            den = norm_of(list(fs.values()), seed + 2)
            if den == 0.0:
                continue
            num = norm_of([apply_symbol(sym, fs[key]) for key, sym in items], seed + 2)
            best = max(best, num / den)
    return float(best)
