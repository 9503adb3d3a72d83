"""Closed-form bounds on r(l) for G(n,3,1) and their regime bookkeeping.

Every evaluator returns :class:`BoundEstimate` objects whose value is an exact
``Fraction`` whenever the inputs allow it. ``validity`` separates inequalities
that hold at the given finite n from leading-order asymptotic forms, which
carry no finite-n guarantee. The unknown o(1) slack in the dense-regime lower
bounds is exposed as ``h_param`` (default 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Union

from .combinat import binomial, c_fraction

Number = Union[int, float, Fraction]

LOWER = "lower"
UPPER = "upper"
ASYMPTOTIC_EQUALITY = "asymptotic-equality"
EXACT = "exact-finite-n"
ASYMPTOTIC = "asymptotic-reference"

SOURCES = ("T1.1", "T1.2", "T1.3-low", "T1.3-up", "T1.4", "T2",
           "T3.1", "T3.2", "T3.3", "T3.4", "F1", "F2")

# Dense-regime brackets are defined as 0 up to this n.
SMALL_N_CUTOFF = 10


@dataclass(frozen=True)
class BoundEstimate:
    value: Number
    direction: str
    validity: str
    source: str
    h_param: float = 0.0

    def __post_init__(self):
        if self.source not in SOURCES:
            raise ValueError(f"unknown source {self.source!r}")

    def __float__(self) -> float:
        return float(self.value)

    @property
    def exact(self) -> bool:
        return isinstance(self.value, (int, Fraction))

    def as_dict(self) -> dict:
        return {
            "source": self.source,
            "direction": self.direction,
            "validity": self.validity,
            "value": float(self.value),
            "exact_value": str(self.value) if self.exact else None,
            "h_param": self.h_param,
        }


def _q(x: Number) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _alpha(n: int, alpha: Optional[int]) -> int:
    return n if alpha is None else alpha


# --- brackets -----------------------------------------------------------------
#
# Each dense-regime bound has the form n^5/8 * bracket(c). With ``n=None`` the
# 1/n corrections are dropped, leaving the leading-order polynomial in c.

def bracket(source: str, c: Number, n: Optional[int] = None, h: Number = 0) -> Fraction:
    c = _q(c)
    k = Fraction(0) if n is None else Fraction(1, n)
    g = 1 + _q(h)
    if source == "T3.2":
        return 1 - 2 * c + c**2 / 3 * g - 10 * k + 20 * c * k - Fraction(10, 3) * c**2 * k * g
    if source == "T3.3":
        return 1 - 2 * c + Fraction(2, 9) * c**2 * g - 10 * k + 20 * c * k - Fraction(20, 9) * c**2 * k * g
    if source == "T3.4":
        return 1 - 2 * c - 10 * k + 20 * c * k
    if source == "F1":
        return 1 - 2 * c + c**2
    if source == "F2":
        return Fraction(1, 3) - Fraction(2, 3) * c + Fraction(1, 3) * c**2
    if source == "T1.4":
        # n^5 (1/8 - c/4 + c^2/72) written as n^5/8 * bracket
        return 1 - 2 * c + c**2 / 9
    raise ValueError(f"no bracket form for {source!r}")


def _n5_over_8(n: int) -> Fraction:
    return Fraction(n**5, 8)


# --- evaluators ---------------------------------------------------------------

def eval_T1(point: int, n: int, l: int, alpha: Optional[int] = None) -> list[BoundEstimate]:
    a = _alpha(n, alpha)
    sq = Fraction(l * l)
    if point in (1, 2):
        return [BoundEstimate(sq / (2 * a), ASYMPTOTIC_EQUALITY, ASYMPTOTIC, f"T1.{point}")]
    if point == 3:
        return [
            BoundEstimate(sq / a, LOWER, ASYMPTOTIC, "T1.3-low"),
            BoundEstimate(5 * sq / a, UPPER, ASYMPTOTIC, "T1.3-up"),
        ]
    if point == 4:
        c = c_fraction(n, l)
        return [BoundEstimate(_n5_over_8(n) * bracket("T1.4", c), LOWER, ASYMPTOTIC, "T1.4")]
    raise ValueError(f"point must be 1..4, got {point}")


def eval_T2(n: int, l: int) -> BoundEstimate:
    """Lower form 3 l^2 / (2n) for the regime n^2 = o(l)."""
    return BoundEstimate(Fraction(3 * l * l, 2 * n), LOWER, ASYMPTOTIC, "T2")


def eval_T3(point: int, n: int, l: int, h_param: float = 0.0,
            alpha: Optional[int] = None) -> BoundEstimate:
    if point == 1:
        return BoundEstimate(Fraction(9 * l * l, 2 * _alpha(n, alpha)), UPPER, ASYMPTOTIC, "T3.1", h_param)
    if point not in (2, 3, 4):
        raise ValueError(f"point must be 1..4, got {point}")
    source = f"T3.{point}"
    validity = EXACT if point == 4 else ASYMPTOTIC
    h = 0.0 if point == 4 else h_param
    if n <= SMALL_N_CUTOFF:
        return BoundEstimate(Fraction(0), LOWER, validity, source, h)
    c = c_fraction(n, l)
    return BoundEstimate(_n5_over_8(n) * bracket(source, c, n, h), LOWER, validity, source, h)


def envelope_identity_holds(n: int, c: Number) -> bool:
    """9 l^2/(2n) with l = (1-c) n^3/6 equals n^5/8 (1-2c+c^2), exactly."""
    c = _q(c)
    l = (1 - c) * Fraction(n**3, 6)
    return 9 * l * l / (2 * n) == _n5_over_8(n) * bracket("F1", c)


def eval_envelope(n: int, l: int) -> tuple[BoundEstimate, BoundEstimate]:
    c = c_fraction(n, l)
    if not envelope_identity_holds(n, c):  # pragma: no cover - algebraic identity
        raise ArithmeticError("upper envelope identity failed")
    scale = _n5_over_8(n)
    upper = BoundEstimate(scale * bracket("F1", c), UPPER, ASYMPTOTIC, "F1")
    lower = BoundEstimate(scale * bracket("F2", c), LOWER, ASYMPTOTIC, "F2")
    return upper, lower


def all_estimates(n: int, l: int, h_param: float = 0.0, alpha: Optional[int] = None) -> list[BoundEstimate]:
    """Every evaluator at (n, l), in source order."""
    out: list[BoundEstimate] = []
    for point in (1, 3, 4):
        out.extend(eval_T1(point, n, l, alpha))
    out.append(eval_T2(n, l))
    out.append(eval_T3(1, n, l, h_param, alpha))
    for point in (2, 3, 4):
        out.append(eval_T3(point, n, l, h_param))
    out.extend(eval_envelope(n, l))
    return out


# --- crossover ----------------------------------------------------------------

@dataclass(frozen=True)
class CrossoverResult:
    interpretation: str
    threshold: Optional[float]
    n: Optional[int] = None
    c: Optional[float] = None
    holds: Optional[bool] = None
    residual: Optional[float] = None
    interval: Optional[tuple[float, float]] = None

    def as_dict(self) -> dict:
        out = {"interpretation": self.interpretation, "threshold": self.threshold}
        for key in ("n", "c", "holds", "residual", "interval"):
            value = getattr(self, key)
            if value is not None:
                out[key] = list(value) if key == "interval" else value
        return out


def normalized_threshold() -> float:
    """Root of c^2 + 18c - 9 = 0 in (0,1): the T3.3 leading bracket over 8
    equals the T2 form c^2/24 there."""
    return 3 * math.sqrt(10) - 9


def t34_normalized_threshold() -> float:
    """Root of c^2 + 6c - 3 = 0: the T3.4 leading bracket (1-2c)/8 against c^2/24."""
    return math.sqrt(12) - 3


def literal_polynomial(n: int) -> tuple[Fraction, Fraction, Fraction]:
    """Coefficients (a0, a1, a2) of LHS - RHS for the printed comparison
    n^5/8 (1 - 2c - 10/n + 20c/n) >= 3 (c C(n,3))^2 / 2."""
    s = _n5_over_8(n)
    cn3 = binomial(n, 3) if n <= 1000 else math.comb(n, 3)
    return s * (1 - Fraction(10, n)), s * (-2 + Fraction(20, n)), -Fraction(3 * cn3 * cn3, 2)


def literal_holds(n: int, c: Number) -> bool:
    a0, a1, a2 = literal_polynomial(n)
    c = _q(c)
    return a0 + a1 * c + a2 * c * c >= 0


def literal_interval(n: int) -> Optional[tuple[float, float]]:
    """Sub-interval of [0,1] where the printed comparison holds, or None."""
    a0, a1, a2 = (float(x) for x in literal_polynomial(n))
    disc = a1 * a1 - 4 * a2 * a0
    if disc < 0:
        return None
    sq = math.sqrt(disc)
    # a2 < 0: concave, non-negative between the roots
    r1, r2 = sorted(((-a1 + sq) / (2 * a2), (-a1 - sq) / (2 * a2)))
    lo, hi = max(r1, 0.0), min(r2, 1.0)
    return (lo, hi) if lo <= hi else None


def crossover(interpretation: str = "normalized", n: Optional[int] = None,
              c: Optional[Number] = None) -> CrossoverResult:
    if interpretation in ("normalized", "per-n-normalized"):
        cs = normalized_threshold()
        return CrossoverResult("normalized", cs, residual=cs * cs + 18 * cs - 9)
    if interpretation == "t34-normalized":
        cs = t34_normalized_threshold()
        return CrossoverResult("t34-normalized", cs, residual=cs * cs + 6 * cs - 3)
    if interpretation == "literal":
        if n is None:
            raise ValueError("literal interpretation needs n")
        interval = literal_interval(n)
        holds = literal_holds(n, c) if c is not None else None
        return CrossoverResult("literal", interval[1] if interval else None, n=n,
                               c=None if c is None else float(c), holds=holds, interval=interval)
    raise ValueError(f"unknown interpretation {interpretation!r}")


# --- regimes ------------------------------------------------------------------

REGIMES = ("trivial-zero", "sub-quadratic", "quadratic", "between-quadratic-and-cubic",
           "cubic-minus-gap", "cubic-minus-linear")


def _default_gap(n: int) -> float:
    return n**1.5


@dataclass(frozen=True)
class RegimeThresholds:
    """Constants the asymptotic statements quantify over; caller-tunable.

    alpha: independence number (None -> n - 2, the size of a pair-star).
    quad_low, quad_high: the quadratic band quad_low n^2 <= l <= quad_high n^2.
    cubic: lower edge cubic * n^3 of the dense regimes.
    gap: g(n), distance of l below C(n,3) for the gap regime.
    linear: width constant of the top band C(n,3) - linear * n <= l.
    """

    alpha: Optional[int] = None
    quad_low: Number = 1
    quad_high: Number = 1
    cubic: Number = Fraction(1, 8)
    gap: Callable[[int], Number] = field(default=_default_gap)
    linear: Number = 1


@dataclass(frozen=True)
class RegimeTag:
    regimes: tuple[str, ...]

    @property
    def ambiguous(self) -> bool:
        return len(self.regimes) > 1

    @property
    def regime(self) -> str:
        if not self.regimes:
            return "unclassified"
        return "+".join(self.regimes)


def classify_regime(n: int, l: int, constants: RegimeThresholds = RegimeThresholds()) -> RegimeTag:
    total = binomial(n, 3)
    if not 0 <= l <= total:
        raise ValueError(f"l={l} outside 0..{total}")
    alpha = n - 2 if constants.alpha is None else constants.alpha
    q_lo = constants.quad_low * n * n
    q_hi = constants.quad_high * n * n
    cub = constants.cubic * n**3
    tags = []
    if l <= alpha:
        tags.append("trivial-zero")
    else:
        if l < q_lo:
            tags.append("sub-quadratic")
        if q_lo <= l <= q_hi:
            tags.append("quadratic")
        if q_hi < l < cub:
            tags.append("between-quadratic-and-cubic")
        if cub <= l <= total - constants.gap(n):
            tags.append("cubic-minus-gap")
        if total - constants.linear * n <= l:
            tags.append("cubic-minus-linear")
    return RegimeTag(tuple(tags))
