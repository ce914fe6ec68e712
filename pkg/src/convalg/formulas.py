"""Builtin formula weights on the real line and the circle.

These are the named weights the classifiers handle rigorously: growth
certificates are attached per family, never inferred from samples.  Builtins:

    poly2            w(t) = 1 + t^2                   (line, even)
    exp-abs          w(t) = e^|t|                     (line, even)
    poly2-exp        w(t) = (1+t^2) e^|t|             (line, even)
    poly2-exp-log    w(t) = (1+t^2) e^(|t|/log(e+|t|)) (line, even)
    poly2-exp-signed w(t) = (1+t^2) e^t               (line, a character twist)
    circle-quarter   w(t) = t^(1/4)  on [0,1)         (circle)
    circle-inv-sqrt  u(t) = t^(-1/2) on (0,1)         (circle; quarter's algebra base)
    const-one        w(t) = 1
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from . import groups as G
from .weights import WeightFn

Number = Union[Fraction, float, int]

BUILTIN_NAMES = (
    "poly2",
    "exp-abs",
    "poly2-exp",
    "poly2-exp-log",
    "poly2-exp-signed",
    "circle-quarter",
    "circle-inv-sqrt",
    "const-one",
)

_CIRCLE = {"circle-quarter", "circle-inv-sqrt"}


@dataclass(frozen=True)
class GrowthInfo:
    """Certified growth of log+ w along rays, by formula family.

    kind "poly": log+ w(t) <= log_const + degree * log+ |t| for all t.
    kind "exp": log w(t) >= rate * |t| (log_damped divides by log(e+|t|)).
    kind "exp-signed": log w(t) >= t (one-sided); bounded polynomially for t<=0.
    kind "const": w is bounded; log+ w <= log_const.
    """

    kind: str
    log_const: float = 0.0
    degree: int = 0
    rate: float = 0.0
    log_damped: bool = False


@dataclass(frozen=True)
class FormulaWeight(WeightFn):
    """Named closed-form weight; evaluation is float, growth facts are exact."""

    name: str
    scale: float = 1.0

    construction = "formula"
    exact = False

    def __post_init__(self) -> None:
        if self.name not in BUILTIN_NAMES:
            raise ValueError(f"unknown builtin weight {self.name!r}")

    @property
    def domain(self) -> str:
        return "circle" if self.name in _CIRCLE else "real"

    @property
    def descriptor(self) -> G.GroupDescriptor:
        return G.CircleGroup() if self.domain == "circle" else G.RealGroup(1)

    def raw_eval(self, t) -> float:
        x = as_number(t)
        if self.domain == "circle":
            x = float(Fraction(x) % 1) if isinstance(x, Fraction) else x % 1.0
        a = abs(float(x))
        if self.name == "poly2":
            return 1.0 + a * a
        if self.name == "exp-abs":
            return math.exp(a)
        if self.name == "poly2-exp":
            return (1.0 + a * a) * math.exp(a)
        if self.name == "poly2-exp-log":
            return (1.0 + a * a) * math.exp(a / math.log(math.e + a))
        if self.name == "poly2-exp-signed":
            return (1.0 + a * a) * math.exp(float(x))
        if self.name == "circle-quarter":
            return float(x) ** 0.25
        if self.name == "circle-inv-sqrt":
            if x == 0:
                raise ZeroDivisionError("t^(-1/2) is undefined at 0")
            return float(x) ** -0.5
        if self.name == "const-one":
            return 1.0
        raise AssertionError(self.name)

    def log_eval(self, t) -> float:
        """log w(t), evaluated in log space (no overflow for the exp families)."""
        x = as_number(t)
        a = abs(float(x))
        s = math.log(self.scale) if self.scale != 1.0 else 0.0
        if self.name == "poly2":
            return s + math.log1p(a * a)
        if self.name == "exp-abs":
            return s + a
        if self.name == "poly2-exp":
            return s + math.log1p(a * a) + a
        if self.name == "poly2-exp-log":
            return s + math.log1p(a * a) + a / math.log(math.e + a)
        if self.name == "poly2-exp-signed":
            return s + math.log1p(a * a) + float(x)
        if self.name == "circle-quarter":
            xa = float(Fraction(x) % 1) if isinstance(x, Fraction) else float(x) % 1.0
            if xa == 0:
                raise ZeroDivisionError("log w undefined at 0")
            return s + 0.25 * math.log(xa)
        if self.name == "circle-inv-sqrt":
            xa = float(Fraction(x) % 1) if isinstance(x, Fraction) else float(x) % 1.0
            return s - 0.5 * math.log(xa)
        if self.name == "const-one":
            return s
        raise AssertionError(self.name)

    def exact_log(self, t) -> Optional[Fraction]:
        """Exact rational log w(t) where the formula admits one (e^|t| only)."""
        if self.name == "exp-abs" and self.scale == 1.0:
            x = as_number(t)
            if isinstance(x, (Fraction, int)):
                return abs(Fraction(x))
        return None

    def growth(self) -> GrowthInfo:
        if self.name == "poly2":
            return GrowthInfo(kind="poly", log_const=math.log(2.0) + 1e-12, degree=2)
        if self.name == "exp-abs":
            return GrowthInfo(kind="exp", rate=1.0)
        if self.name == "poly2-exp":
            return GrowthInfo(kind="exp", rate=1.0)
        if self.name == "poly2-exp-log":
            return GrowthInfo(kind="exp", rate=1.0, log_damped=True)
        if self.name == "poly2-exp-signed":
            return GrowthInfo(kind="exp-signed", log_const=math.log(2.0) + 1e-12,
                              degree=2, rate=1.0)
        if self.name == "const-one":
            return GrowthInfo(kind="const", log_const=0.0)
        # circle weights are bounded above by 1 on [0,1)
        if self.name == "circle-quarter":
            return GrowthInfo(kind="const", log_const=0.0)
        return GrowthInfo(kind="unknown")

    def submult_exact(self, s, t) -> Optional[bool]:
        """Exact verdict of w(s+t) <= w(s) w(t) where the family allows it.

        exp-abs holds identically (triangle inequality).  poly2 reduces to the
        exact rational comparison 2st <= (st)^2, which fails for 0 < st < 2.
        poly2-exp compares the rational polynomial ratio against e raised to
        the rational slack |s| + |t| - |s+t| via a refining enclosure.
        circle-quarter is raised to the 4th power, an exact comparison.
        """
        if self.name == "exp-abs":
            return True
        a, b = as_number(s), as_number(t)
        if not isinstance(a, (Fraction, int)) or not isinstance(b, (Fraction, int)):
            return None
        a, b = Fraction(a), Fraction(b)
        if self.name == "poly2":
            return 1 + (a + b) ** 2 <= (1 + a * a) * (1 + b * b)
        if self.name == "poly2-exp":
            ratio = (1 + (a + b) ** 2) / ((1 + a * a) * (1 + b * b))
            slack = abs(a) + abs(b) - abs(a + b)
            if ratio <= 1:
                return True
            from .rational import exp_enclosure
            terms = 40
            while terms <= 640:
                lo, hi = exp_enclosure(slack, terms)
                if ratio <= lo:
                    return True
                if ratio > hi:
                    return False
                terms *= 2
            return None
        if self.name == "circle-quarter":
            return (a + b) % 1 <= (a % 1) * (b % 1)
        return None

    def global_min(self) -> Optional[float]:
        """Certified infimum over the domain, from the formula."""
        if self.name in ("poly2", "exp-abs", "poly2-exp", "poly2-exp-log", "const-one"):
            return 1.0 * self.scale
        if self.name == "circle-quarter":
            return 0.0
        if self.name == "circle-inv-sqrt":
            return 1.0 * self.scale
        return None  # poly2-exp-signed decays as t -> -inf

    def zero_points(self) -> tuple:
        """Points where positivity fails (excluded under a.e. semantics)."""
        if self.name == "circle-quarter":
            return (Fraction(0),)
        return ()

    @property
    def even(self) -> bool:
        return self.name in ("poly2", "exp-abs", "poly2-exp", "poly2-exp-log", "const-one")

    def point_add(self, s, t):
        a, b = as_number(s), as_number(t)
        if self.domain == "circle":
            return (Fraction(a) + Fraction(b)) % 1
        if isinstance(a, Fraction) and isinstance(b, Fraction):
            return a + b
        return float(a) + float(b)

    def point_neg(self, s):
        a = as_number(s)
        if self.domain == "circle":
            return (-Fraction(a)) % 1
        return -a


def as_number(t) -> Number:
    """Accept raw numbers or single-coordinate group points."""
    if isinstance(t, (Fraction, float, int)):
        return t
    if isinstance(t, (G.CirclePoint, G.RationalPoint)):
        return t.value
    if isinstance(t, G.RealPoint) and len(t.coords) == 1:
        return t.coords[0]
    if isinstance(t, G.PrueferPoint):
        return t.value()
    raise TypeError(f"cannot interpret {type(t).__name__} as a number")


def builtin_weight(name: str) -> FormulaWeight:
    return FormulaWeight(name=name)


def algebra_base(w: FormulaWeight, p) -> FormulaWeight:
    """The auxiliary weight u = w^(-q) whose subconvolutivity makes L_p^w an
    algebra; provided for the quarter-power circle weight at p=2."""
    if w.name == "circle-quarter" and Fraction(p) == 2:
        return builtin_weight("circle-inv-sqrt")
    raise ValueError("algebra base only provided for circle-quarter at p=2")
