"""Shared result record for norm estimators."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["NormReport"]


@dataclass
class NormReport:
    """A computed norm value plus full estimator provenance.

    ``kind`` is one of ``"exact-spectral"``, ``"quadrature"`` or
    ``"monte-carlo"``; ``params`` records everything needed to reproduce the
    value (grid, weights, truncations, trials, seed).  ``curve`` carries the
    per-level values of running-supremum estimators.
    """

    value: float
    kind: str
    params: dict = field(default_factory=dict)
    curve: np.ndarray | None = None
    std_error: float | None = None
    seed: int | None = None
    extras: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "value": float(self.value),
            "kind": self.kind,
            "params": _plain(self.params),
            "extras": _plain(self.extras),
        }
        if self.curve is not None:
            out["curve"] = [float(v) for v in np.asarray(self.curve)]
        if self.std_error is not None:
            out["std_error"] = float(self.std_error)
        if self.seed is not None:
            out["seed"] = int(self.seed)
        return out


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    return obj if obj is None or isinstance(obj, str) else str(obj)
