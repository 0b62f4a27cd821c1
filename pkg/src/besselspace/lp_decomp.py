"""Dyadic frequency decompositions and the smoothness norms built on them.

A band system is generated by one radial cutoff profile that equals 1 up to
radius ``A`` and 0 beyond ``B``; band ``n >= 1`` is the difference of two
dyadic dilates of the cutoff, so the bands telescope exactly and band ``n``
is supported in the annulus ``2^(n-1) A <= |xi| <= 2^n B``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BudgetError
from .grid import (SampledFunction, apply_symbol, forward, lp_norm, smoothstep,
                   weighted_p_quadrature, _as_weight)
from .rademacher import sup_partial
from .reports import NormReport
from .symbols import Symbol, bessel_symbol, callable_symbol

__all__ = [
    "PhiSequence",
    "make_phi",
    "admissible_bands",
    "lp_block",
    "bessel_potential",
    "bessel_norm",
    "triebel_norm",
    "randomized_lp_norm",
]


@dataclass(frozen=True)
class PhiSequence:
    """Dyadic band system generated by a radial smoothstep cutoff.

    ``band_symbol(0)`` is the cutoff itself; for ``n >= 1`` the band is
    ``cutoff(2^-n xi) - cutoff(2^-n+1 xi)``.  Summing bands 0..N telescopes
    to ``cutoff(2^-N xi)`` exactly.
    """

    A: float
    B: float
    n_max: int
    order: int = 7

    def cutoff(self, r: np.ndarray) -> np.ndarray:
        u = (np.asarray(r, dtype=float) - self.A) / (self.B - self.A)
        return 1.0 - smoothstep(u, order=self.order)

    def _mag(self, xi, d):
        xi = np.asarray(xi, dtype=float)
        return np.abs(xi) if d == 1 else np.sqrt((xi**2).sum(axis=-1))

    def band_symbol(self, n: int, d: int = 1) -> Symbol:
        if n < 0 or n > self.n_max:
            raise ValueError(f"band index {n} outside 0..{self.n_max}")

        if n == 0:
            def ev(xi):
                return self.cutoff(self._mag(xi, d)).astype(complex)
            v0 = 1.0
        else:
            def ev(xi):
                r = self._mag(xi, d)
                return (self.cutoff(2.0**-n * r) - self.cutoff(2.0 ** (-n + 1) * r)
                        ).astype(complex)
            v0 = 0.0
        return callable_symbol(ev, d=d, key=f"band({self.A:g},{self.B:g},{self.order},{n})",
                               value_at_zero=v0)

    def support(self, n: int) -> tuple:
        """Annulus (r_lo, r_hi) carrying band ``n``."""
        if n == 0:
            return (0.0, self.B)
        return (2.0 ** (n - 1) * self.A, 2.0**n * self.B)


def make_phi(A: float = 1.0, B: float = 1.5, n_max: int = 12, order: int = 7) -> PhiSequence:
    """Build a band system; requires ``0 < A < B`` and an odd profile order."""
    if not 0 < A < B:
        raise ValueError("band radii must satisfy 0 < A < B")
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    return PhiSequence(float(A), float(B), int(n_max), int(order))


def admissible_bands(grid, phi: PhiSequence) -> list:
    """Band indices whose support stays below the grid Nyquist frequency."""
    out = []
    for n in range(phi.n_max + 1):
        if 2.0**n * phi.B <= grid.nyquist:
            out.append(n)
    return out


def lp_block(f: SampledFunction, phi: PhiSequence, n: int) -> SampledFunction:
    """The dyadic block: convolution of ``f`` with band ``n``."""
    if 2.0**n * phi.B > f.grid.nyquist:
        raise BudgetError(
            f"band {n} reaches |xi| = {2.0 ** n * phi.B:g} beyond the grid "
            f"Nyquist frequency {f.grid.nyquist:g}"
        )
    return apply_symbol(phi.band_symbol(n, d=f.grid.d), f)


def bessel_potential(f: SampledFunction, s: float) -> SampledFunction:
    """Apply ``(1 + |xi|^2)^{s/2}`` on the spectral side.

    ``s = 0`` is the identity and returns ``f`` unchanged, so the order-0
    norm coincides bit-exactly with the plain Lebesgue norm.
    """
    if s == 0.0:
        return f
    return apply_symbol(bessel_symbol(s, d=f.grid.d), f)


def bessel_norm(f: SampledFunction, s: float, p: float, w=1.0) -> NormReport:
    """Smoothness-s norm: weighted L^p norm of the order-s potential of f."""
    value = lp_norm(bessel_potential(f, s), p, _as_weight(w))
    return NormReport(value, "quadrature",
                      params={"s": s, "p": p, "grid": (f.grid.d, f.grid.n, f.grid.period)})


def triebel_norm(f: SampledFunction, s: float, p: float, q: float, w=1.0,
                 phi: PhiSequence | None = None) -> NormReport:
    """``|| ( sum_n (2^{sn} |S_n f(x)|_X)^q )^{1/q} ||_{L^p(w)}``.

    The band sum runs over all bands admissible on the grid (``q = inf``
    takes the pointwise maximum).
    """
    if q < 1:
        raise ValueError("q must satisfy q >= 1")
    phi = make_phi() if phi is None else phi
    bands = admissible_bands(f.grid, phi)
    if not bands:
        raise BudgetError("no admissible band below the Nyquist frequency")
    stack = np.stack([2.0 ** (s * n) * lp_block(f, phi, n).xnorm() for n in bands])
    if np.isinf(q):
        field = stack.max(axis=0)
    else:
        field = (stack**q).sum(axis=0) ** (1.0 / q)
    value = weighted_p_quadrature(field, f.grid, p, _as_weight(w))
    return NormReport(value, "quadrature",
                      params={"s": s, "p": p, "q": q, "bands": bands,
                              "phi": (phi.A, phi.B, phi.n_max, phi.order)})


def randomized_lp_norm(f: SampledFunction, s: float, p: float, w=1.0,
                       phi: PhiSequence | None = None, N_max: int | None = None,
                       trials: int = 1024, seed: int = 0,
                       mode: str = "rademacher") -> NormReport:
    """Running supremum of ``|| sum_{n<=N} eps_n 2^{ns} S_n f ||`` over N.

    The supremum is truncated at the largest admissible band (or ``N_max``);
    the per-N curve is attached so saturation is auditable.
    """
    phi = make_phi() if phi is None else phi
    bands = admissible_bands(f.grid, phi)
    if N_max is not None:
        bands = [n for n in bands if n <= N_max]
    if not bands:
        raise BudgetError("no admissible band below the Nyquist frequency")
    family = [lp_block(f, phi, n) for n in bands]
    coeffs = [2.0 ** (s * n) for n in bands]
    sup = sup_partial(family, coeffs, p, _as_weight(w), mode=mode,
                      trials=trials, seed=seed)
    return NormReport(sup.value, "monte-carlo" if mode == "rademacher" else "exact-spectral",
                      params={"s": s, "p": p, "bands": bands, "trials": trials,
                              "phi": (phi.A, phi.B, phi.n_max, phi.order),
                              "mode": mode},
                      curve=sup.curve,
                      std_error=None if sup.std_errors is None else float(sup.std_errors[-1]),
                      seed=seed)
