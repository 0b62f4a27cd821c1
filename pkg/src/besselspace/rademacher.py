"""Seeded Monte Carlo engine for Rademacher-sum norms and square functions.

Estimates ``(E || sum_j eps_j c_j g_j ||_{L^p(w;X)}^p)^{1/p}`` by sampling
random sign vectors.  Signs are counter-style: trial ``t`` of master seed
``s`` uses a Philox stream keyed by ``(s, t)``, so trials are independent,
embarrassingly parallel and bit-reproducible; the trial reduction runs in a
fixed index order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import SampledFunction, cell_masses, _as_weight, _check_compatible

__all__ = [
    "sign_draw",
    "RademacherEstimate",
    "rademacher_norm",
    "square_function_norm",
    "SupCurve",
    "sup_partial",
]

_TRIAL_BLOCK = 128


def sign_draw(seed: int, trial_index: int, count: int) -> np.ndarray:
    """Deterministic ±1 signs for one trial, shape ``(count,)``.

    The draw is a pure function of ``(seed, trial_index)``; marginally the
    signs are independent fair coin flips.
    """
    key = np.array([seed, trial_index], dtype=np.uint64)
    gen = np.random.Generator(np.random.Philox(key=key))
    return gen.integers(0, 2, size=count) * 2 - 1


@dataclass(frozen=True)
class RademacherEstimate:
    """Monte Carlo estimate of a Rademacher-sum norm.

    ``std_error`` is the standard error of the p-th moment estimate (the
    mean of ``norm^p`` across trials, before the 1/p root); ``pth_moment``
    is that mean itself.
    """

    value: float
    trials: int
    std_error: float
    seed: int
    pth_moment: float

    def moment_interval(self, k: float = 3.0) -> tuple:
        """k-sigma interval for the p-th moment."""
        return (self.pth_moment - k * self.std_error,
                self.pth_moment + k * self.std_error)


def _stack_family(family, coeffs):
    if len(family) == 0:
        raise ValueError("family must be nonempty")
    first = family[0]
    for g in family[1:]:
        _check_compatible(first, g)
    coeffs = np.ones(len(family)) if coeffs is None else np.asarray(coeffs, dtype=complex)
    if coeffs.shape != (len(family),):
        raise ValueError("one coefficient per family member required")
    stacked = np.stack([g.values for g in family])  # (J, *shape, ncomp)
    return first, stacked, coeffs


def _trial_moments(first, stacked, coeffs, p, masses, trials, seed) -> np.ndarray:
    """Per-trial values of ``||sum_j s_j c_j g_j||^p``, fixed order."""
    J = stacked.shape[0]
    scaled = stacked * coeffs.reshape((J,) + (1,) * (stacked.ndim - 1))
    flat = scaled.reshape(J, -1)
    out = np.empty(trials)
    spatial = first.grid.shape
    ncomp = first.space.ncomp
    for start in range(0, trials, _TRIAL_BLOCK):
        block = range(start, min(start + _TRIAL_BLOCK, trials))
        signs = np.stack([sign_draw(seed, t, J) for t in block]).astype(float)
        combo = signs @ flat  # (B, npoints*ncomp)
        combo = combo.reshape((len(signs),) + spatial + (ncomp,))
        field = first.space.norm(combo)
        out[list(block)] = (field**p * masses).sum(axis=tuple(range(1, field.ndim)))
    return out


def rademacher_norm(family, coeffs=None, p: float = 2.0, w=1.0,
                    trials: int = 1024, seed: int = 0) -> RademacherEstimate:
    """Estimate ``|| sum_j eps_j c_j g_j ||`` in the p-th moment sense.

    Returns ``(mean_t || sum_j s_j(t) c_j g_j ||_{L^p(w;X)}^p)^{1/p}``
    together with the Monte Carlo standard error of the p-th moment.  For
    ``p = 2`` and scalar targets the exact value is
    ``(sum_j |c_j|^2 ||g_j||^2)^{1/2}`` by sign orthogonality.
    """
    if trials < 1:
        raise ValueError("at least one trial required")
    if not 1.0 < p < np.inf:
        raise ValueError(f"p must lie in (1, inf), got {p}")
    first, stacked, coeffs = _stack_family(family, coeffs)
    masses = cell_masses(first.grid, _as_weight(w))
    moments = _trial_moments(first, stacked, coeffs, p, masses, trials, seed)
    mean = float(moments.mean())
    if trials > 1:
        se = float(moments.std(ddof=1) / np.sqrt(trials))
    else:
        se = 0.0
    return RademacherEstimate(mean ** (1.0 / p), trials, se, seed, mean)


def square_function_norm(family, coeffs=None, p: float = 2.0, w=1.0) -> float:
    """``|| (sum_j |c_j g_j|^2)^{1/2} ||_{L^p(w;X)}``.

    The square sum is taken pointwise per grid node and per component of
    the target space.
    """
    if not 1.0 < p < np.inf:
        raise ValueError(f"p must lie in (1, inf), got {p}")
    first, stacked, coeffs = _stack_family(family, coeffs)
    scaled = stacked * coeffs.reshape((len(family),) + (1,) * (stacked.ndim - 1))
    sq = np.sqrt((np.abs(scaled) ** 2).sum(axis=0))  # (*shape, ncomp), real
    field = first.space.norm(sq)
    masses = cell_masses(first.grid, _as_weight(w))
    return float((field**p * masses).sum() ** (1.0 / p))


@dataclass(frozen=True)
class SupCurve:
    """Running supremum over family prefixes with the full per-J curve."""

    value: float
    curve: np.ndarray  # curve[J-1] = norm of the prefix {1..J}
    std_errors: np.ndarray | None = None


def sup_partial(family, coeffs=None, p: float = 2.0, w=1.0,
                mode: str = "square", trials: int = 1024, seed: int = 0) -> SupCurve:
    """Norm of each prefix ``{g_1..g_J}`` and the running maximum.

    ``mode`` selects the estimator: ``"rademacher"`` (Monte Carlo; one sign
    stream shared by all prefixes) or ``"square"`` (exact square function).
    """
    if mode not in ("rademacher", "square"):
        raise ValueError(f"unknown mode {mode!r}")
    first, stacked, coeffs = _stack_family(family, coeffs)
    J = stacked.shape[0]
    masses = cell_masses(first.grid, _as_weight(w))
    curve = np.empty(J)
    errors = None
    if mode == "square":
        running = np.zeros_like(np.abs(stacked[0]))
        for j in range(J):
            running = running + np.abs(coeffs[j] * stacked[j]) ** 2
            field = first.space.norm(np.sqrt(running))
            curve[j] = (field**p * masses).sum() ** (1.0 / p)
    else:
        errors = np.empty(J)
        scaled = stacked * coeffs.reshape((J,) + (1,) * (stacked.ndim - 1))
        signs = np.stack([sign_draw(seed, t, J) for t in range(trials)]).astype(float)
        running = np.zeros((trials,) + stacked.shape[1:], dtype=complex)
        for j in range(J):
            running = running + signs[:, j].reshape((trials,) + (1,) * (scaled.ndim - 1)) * scaled[j]
            field = first.space.norm(running)
            moments = (field**p * masses).sum(axis=tuple(range(1, field.ndim)))
            curve[j] = moments.mean() ** (1.0 / p)
            errors[j] = moments.std(ddof=1) / np.sqrt(trials) if trials > 1 else 0.0
    return SupCurve(float(curve.max()), curve, errors)
