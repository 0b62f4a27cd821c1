"""Weights, exact cube masses, A_p characteristics and dyadic-cube conditions.

All analytic weight kinds used here depend on the first coordinate only and
reduce to the canonical form ``c |x1|^alpha`` for ``|x1| <= 1`` and
``c |x1|^beta`` for ``|x1| > 1``.  Cube masses for these kinds are computed
from the closed-form antiderivative ``int |t|^g dt = sign(t) |t|^{g+1}/(g+1)``
(log for ``g = -1``); a divergent integral is reported as ``inf`` rather
than raised, so the dyadic scans can turn it into a "diverging" verdict.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "Weight",
    "constant_weight",
    "power_weight",
    "piecewise_power_weight",
    "modified_multiplier_weight",
    "bar_weight",
    "custom_weight",
    "Cube",
    "DyadicCube",
    "cube_mass",
    "ap_characteristic_estimate",
    "origin_cube_family",
    "ConditionScan",
    "embedding_condition",
    "inclusion_condition",
    "parse_weight",
    "weight_record",
]

_ANALYTIC_KINDS = ("constant", "power", "vab", "modified", "bar")


@dataclass(frozen=True)
class Weight:
    """A positive weight on R^d.

    Analytic kinds carry the canonical triple ``(c, alpha, beta)`` of the
    first-coordinate piecewise power they reduce to; ``custom`` carries a
    pointwise evaluator instead.
    """

    kind: str
    c: float = 1.0
    alpha: float = 0.0
    beta: float = 0.0
    evaluator: Callable | None = field(default=None, compare=False)
    label: str = ""

    @property
    def analytic(self) -> bool:
        return self.kind != "custom"

    def cache_key(self):
        if not self.analytic:
            return None
        return (self.kind, self.c, self.alpha, self.beta)

    def __call__(self, *xs) -> np.ndarray:
        """Pointwise values; first argument is the x1 coordinate array."""
        if self.kind == "custom":
            return np.asarray(self.evaluator(*xs), dtype=float)
        t = np.abs(np.asarray(xs[0], dtype=float))
        with np.errstate(divide="ignore"):
            inner = t**self.alpha
            outer = t**self.beta
        return self.c * np.where(t <= 1.0, inner, outer)

    # -- exact first-coordinate primitive ---------------------------------

    def _primitive(self, t: np.ndarray) -> np.ndarray:
        """Antiderivative of the 1d profile on t >= 0, normalized so that
        the limit at 0+ is 0 when alpha > -1 and -inf otherwise."""
        t = np.asarray(t, dtype=float)
        a, b = self.alpha, self.beta
        with np.errstate(divide="ignore", invalid="ignore"):
            if a == -1.0:
                inner = np.log(t, where=t > 0, out=np.full_like(t, -np.inf))
                at_one = 0.0
            else:
                inner = t ** (a + 1.0) / (a + 1.0)
                if a < -1.0:
                    inner = np.where(t == 0.0, -np.inf, inner)
                at_one = 1.0 / (a + 1.0)
            if b == -1.0:
                outer = at_one + np.log(np.maximum(t, 1.0))
            else:
                outer = at_one + (np.maximum(t, 1.0) ** (b + 1.0) - 1.0) / (b + 1.0)
        return self.c * np.where(t <= 1.0, inner, outer)

    def mass_1d(self, a, b) -> np.ndarray:
        """Exact ``int_a^b`` of the first-coordinate profile, elementwise.

        Returns ``inf`` where the integral diverges (exponent <= -1 against
        an interval touching 0).
        """
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        P = self._primitive
        with np.errstate(invalid="ignore"):  # inf - inf is masked below
            pos = P(np.maximum(b, 0.0)) - P(np.maximum(a, 0.0))
            neg = P(np.maximum(-a, 0.0)) - P(np.maximum(-b, 0.0))
        if self.alpha > -1.0:
            return pos + neg
        # Divergent at 0: only cells strictly away from 0 are finite.
        away_pos = a > 0
        away_neg = b < 0
        out = np.where(away_pos, pos, np.where(away_neg, neg, np.inf))
        zero_width = a == b
        return np.where(zero_width, 0.0, out)

    def cell_masses_1d(self, edges: np.ndarray) -> np.ndarray:
        if self.kind == "custom":
            mids = 0.5 * (edges[:-1] + edges[1:])
            return np.asarray(self.evaluator(mids), dtype=float) * np.diff(edges)
        return self.mass_1d(edges[:-1], edges[1:])

    def cell_masses_2d(self, edges: np.ndarray) -> np.ndarray:
        mids = 0.5 * (edges[:-1] + edges[1:])
        dx = np.diff(edges)
        x1, x2 = np.meshgrid(mids, mids, indexing="ij")
        vals = np.asarray(self.evaluator(x1, x2), dtype=float)
        return vals * np.multiply.outer(dx, dx)

    def dual(self, p: float) -> "Weight":
        """The conjugate weight ``w^{-1/(p-1)}`` entering the A_p product."""
        e = -1.0 / (p - 1.0)
        if self.kind == "custom":
            ev = self.evaluator
            return custom_weight(lambda *xs: np.asarray(ev(*xs)) ** e,
                                 label=f"({self.label or 'custom'})^{e:g}")
        return Weight("vab", self.c**e, self.alpha * e, self.beta * e)

    def dilated(self, lam: float) -> "Weight":
        """The weight ``x -> w(lam x)``."""
        if self.kind == "constant":
            return self
        if self.kind == "power" or self.alpha == self.beta:
            return Weight("power", self.c * lam**self.alpha, self.alpha, self.alpha)
        if self.kind == "custom":
            ev = self.evaluator
            return custom_weight(lambda *xs: ev(*(lam * x for x in xs)),
                                 label=f"dilated({self.label or 'custom'},{lam:g})")
        # Piecewise kinds lose the canonical breakpoint at |x1| = 1.
        w = self
        return custom_weight(lambda *xs: w(lam * np.asarray(xs[0]), *xs[1:]),
                             label=f"dilated({weight_record(w)},{lam:g})")


def constant_weight(c: float = 1.0) -> Weight:
    if not c > 0:
        raise ValueError("weight must be positive")
    return Weight("constant", float(c))


def power_weight(gamma: float) -> Weight:
    """``w(x) = |x1|^gamma``; locally integrable only for gamma > -1."""
    if gamma <= -1.0:
        raise ValueError("power weight needs gamma > -1 for local integrability")
    return Weight("power", 1.0, float(gamma), float(gamma))


def piecewise_power_weight(alpha: float, beta: float) -> Weight:
    """``|x1|^alpha`` for ``|x1| <= 1`` and ``|x1|^beta`` for ``|x1| > 1``."""
    if alpha <= -1.0 or beta <= -1.0:
        raise ValueError("piecewise power weight needs alpha, beta > -1")
    return Weight("vab", 1.0, float(alpha), float(beta))


def modified_multiplier_weight(base: Weight, s: float, p: float) -> Weight:
    """``|x1|^{-sp} w`` for ``|x1| <= 1`` and ``w`` for ``|x1| > 1``."""
    if not base.analytic:
        raise ValueError("modified weight needs an analytic base")
    return Weight("modified", base.c, base.alpha - s * p, base.beta)


def bar_weight(base: Weight, s: float, p: float) -> Weight:
    """``|x1|^{-sp} w`` everywhere."""
    if not base.analytic:
        raise ValueError("bar weight needs an analytic base")
    return Weight("bar", base.c, base.alpha - s * p, base.beta - s * p)


def custom_weight(evaluator: Callable, label: str = "") -> Weight:
    return Weight("custom", evaluator=evaluator, label=label)


# ---------------------------------------------------------------------------
# Cubes


@dataclass(frozen=True)
class Cube:
    """Axis-aligned box given by per-axis bounds."""

    lo: tuple
    hi: tuple

    @property
    def d(self) -> int:
        return len(self.lo)

    @property
    def volume(self) -> float:
        return float(np.prod(np.asarray(self.hi) - np.asarray(self.lo)))


def cube(lo, hi) -> Cube:
    lo = tuple(float(v) for v in np.atleast_1d(lo))
    hi = tuple(float(v) for v in np.atleast_1d(hi))
    if len(lo) != len(hi) or any(h <= l for l, h in zip(lo, hi)):
        raise ValueError("cube needs lo < hi per axis")
    return Cube(lo, hi)


@dataclass(frozen=True)
class DyadicCube:
    """``Q[2^-nu m, 2^(-nu-1)]``: side ``2^-nu``, centered at ``2^-nu m``."""

    nu: int
    m: tuple

    def __post_init__(self):
        if self.nu < 0:
            raise ValueError("scale index nu must be >= 0")
        object.__setattr__(self, "m", tuple(int(v) for v in np.atleast_1d(self.m)))

    def bounds(self) -> Cube:
        c = np.asarray(self.m, dtype=float) * 2.0**-self.nu
        h = 2.0 ** -(self.nu + 1)
        return Cube(tuple(c - h), tuple(c + h))


def _as_cube(Q) -> Cube:
    return Q.bounds() if isinstance(Q, DyadicCube) else Q


def cube_mass(w: Weight, Q, refinement: int = 32) -> float:
    """``w(Q) = int_Q w(x) dx``.

    Exact (closed-form antiderivative) for analytic kinds, with ``inf``
    returned when the exponent is <= -1 on a cube touching ``{x1 = 0}``.
    Custom weights use a midpoint rule on ``refinement`` subcells per axis.
    """
    Q = _as_cube(Q)
    if w.analytic:
        first = float(w.mass_1d(Q.lo[0], Q.hi[0]))
        rest = float(np.prod([Q.hi[i] - Q.lo[i] for i in range(1, Q.d)]))
        return first * rest
    edges = [np.linspace(Q.lo[i], Q.hi[i], refinement + 1) for i in range(Q.d)]
    mids = [0.5 * (e[:-1] + e[1:]) for e in edges]
    vols = [np.diff(e) for e in edges]
    grids = np.meshgrid(*mids, indexing="ij")
    vals = np.asarray(w.evaluator(*grids), dtype=float)
    vol = vols[0]
    for v in vols[1:]:
        vol = np.multiply.outer(vol, v)
    return float((vals * vol).sum())


# ---------------------------------------------------------------------------
# A_p characteristic


def origin_cube_family(radii: Sequence[float], d: int = 1) -> list:
    """Origin-centered cubes ``[-r, r]^d`` for each radius."""
    return [cube([-r] * d, [r] * d) for r in radii]


def ap_characteristic_estimate(w: Weight, p: float, cubes: Sequence) -> float:
    """Sampled lower bound of ``[w]_{A_p}``.

    Maximum over the family of ``(avg_Q w) (avg_Q w^{-1/(p-1)})^{p-1}``;
    always >= 1, and ``inf`` when either the weight or its conjugate fails
    to be integrable on some cube (evidence that ``w`` is not in ``A_p``).
    """
    if not 1.0 < p < np.inf:
        raise ValueError(f"p must lie in (1, inf), got {p}")
    if w.kind == "constant":
        # (avg c)(avg c^{-1/(p-1)})^{p-1} = c * c^{-1} identically
        return 1.0
    dual = w.dual(p)
    best = 1.0
    for Q in cubes:
        Qc = _as_cube(Q)
        vol = Qc.volume
        mw = cube_mass(w, Qc)
        md = cube_mass(dual, Qc)
        if not np.isfinite(mw) or not np.isfinite(md):
            return np.inf
        best = max(best, (mw / vol) * (md / vol) ** (p - 1.0))
    return best


# ---------------------------------------------------------------------------
# Dyadic-cube conditions

#: log2 slope above which a per-scale curve counts as geometric growth
#: (rate 1.05 per level).
DIVERGENCE_SLOPE = 0.07


@dataclass(frozen=True)
class ConditionScan:
    """Result of a dyadic-cube supremum scan."""

    sup: float
    per_nu: np.ndarray
    verdict: str  # "bounded" | "diverging"


def _scan_verdict(per_nu: np.ndarray) -> str:
    if not np.all(np.isfinite(per_nu)):
        return "diverging"
    if np.any(per_nu <= 0):
        return "bounded"
    half = len(per_nu) // 2
    tail = np.log2(per_nu[half:])
    nu = np.arange(half, len(per_nu), dtype=float)
    if len(tail) < 2:
        return "bounded"
    slope = np.polyfit(nu, tail, 1)[0]
    return "diverging" if slope > DIVERGENCE_SLOPE else "bounded"


def _m_window(d: int, m_range: int, first_coord_zero: bool):
    if d == 1:
        return [(0,)] if first_coord_zero else [(m,) for m in range(-m_range, m_range + 1)]
    other = range(-m_range, m_range + 1)
    first = (0,) if first_coord_zero else tuple(range(-m_range, m_range + 1))
    return [(m1, m2) for m1 in first for m2 in other]


def embedding_condition(
    w0: Weight, p0: float, s0: float,
    w1: Weight, p1: float, s1: float,
    nu_max: int = 20, m_range: int = 8, d: int = 1,
) -> ConditionScan:
    """Scan ``2^{-nu(s0-s1)} w0(Q)^{-1/p0} w1(Q)^{1/p1}`` over dyadic cubes.

    Finiteness of this supremum characterizes the corresponding dyadic
    embedding between the weighted smoothness spaces; the verdict applies
    the geometric-growth test along the scale index.
    """
    if not s0 > s1:
        raise ValueError("requires s0 > s1")
    if not 0 < p0 <= p1:
        raise ValueError("requires 0 < p0 <= p1")
    window = _m_window(d, m_range, first_coord_zero=False)
    per_nu = np.empty(nu_max + 1)
    for nu in range(nu_max + 1):
        best = 0.0
        for m in window:
            Q = DyadicCube(nu, m).bounds()
            m0 = cube_mass(w0, Q)
            m1 = cube_mass(w1, Q)
            if not np.isfinite(m1):
                best = np.inf
                break
            if m0 <= 0 or not np.isfinite(m0):
                continue
            val = 2.0 ** (-nu * (s0 - s1)) * m0 ** (-1.0 / p0) * m1 ** (1.0 / p1)
            best = max(best, val)
        per_nu[nu] = best
    return ConditionScan(float(per_nu.max()), per_nu, _scan_verdict(per_nu))


def inclusion_condition(
    w: Weight, s: float, p: float,
    nu_max: int = 20, m_range: int = 8, d: int = 1,
) -> ConditionScan:
    """Scan ``2^{-nu s p} w(Q)^{-1} int_Q |x1|^{-sp} w dx`` over cubes with m1 = 0.

    A finite supremum certifies the inclusion of the smoothness space into
    the ``|x1|^{-sp}``-reweighted Lebesgue space; cubes with ``m1 != 0``
    contribute at most a constant and are not scanned.
    """
    if not s > 0:
        raise ValueError("requires s > 0")
    if not 1.0 < p < np.inf:
        raise ValueError(f"p must lie in (1, inf), got {p}")
    wbar = bar_weight(w, s, p) if w.analytic else custom_weight(
        lambda *xs: np.abs(xs[0]) ** (-s * p) * w(*xs)
    )
    window = _m_window(d, m_range, first_coord_zero=True)
    per_nu = np.empty(nu_max + 1)
    for nu in range(nu_max + 1):
        best = 0.0
        for m in window:
            Q = DyadicCube(nu, m).bounds()
            num = cube_mass(wbar, Q)
            den = cube_mass(w, Q)
            if not np.isfinite(num):
                best = np.inf
                break
            if den <= 0 or not np.isfinite(den):
                continue
            best = max(best, 2.0 ** (-nu * s * p) * num / den)
        per_nu[nu] = best
    return ConditionScan(float(per_nu.max()), per_nu, _scan_verdict(per_nu))


# ---------------------------------------------------------------------------
# Structured-text records


def weight_record(w: Weight) -> str:
    """Small text record (kind + exponents) used by the CLI."""
    if w.kind == "constant":
        return f"const:{w.c:g}"
    if w.kind == "power":
        return f"power:{w.alpha:g}"
    if w.kind == "vab":
        return f"vab:{w.alpha:g}:{w.beta:g}"
    if w.kind in ("modified", "bar"):
        return f"{w.kind}:{w.c:g}:{w.alpha:g}:{w.beta:g}"
    raise ValueError("custom weights have no text record")


def parse_weight(record: str) -> Weight:
    """Inverse of :func:`weight_record`; also accepts ``bar:<base>:<s>:<p>``."""
    parts = record.split(":")
    kind = parts[0]
    try:
        if kind == "const":
            return constant_weight(float(parts[1]))
        if kind == "power":
            return power_weight(float(parts[1]))
        if kind == "vab":
            return piecewise_power_weight(float(parts[1]), float(parts[2]))
        if kind in ("modified", "bar") and len(parts) == 4:
            return Weight(kind, float(parts[1]), float(parts[2]), float(parts[3]))
        if kind in ("modified", "bar"):
            base = parse_weight(":".join(parts[1:-2]))
            s, p = float(parts[-2]), float(parts[-1])
            make = modified_multiplier_weight if kind == "modified" else bar_weight
            return make(base, s, p)
    except (IndexError, ValueError) as exc:
        raise ValueError(f"cannot parse weight record {record!r}: {exc}") from None
    raise ValueError(f"unknown weight record {record!r}")
