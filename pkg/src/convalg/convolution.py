"""Truncated self-convolution with certified tail bounds.

For a discrete exact weight u the engine encloses

    (u*u)(x) = sum_y u(y) u(x-y)

by an exact partial sum over a finite truncation set plus a tail bound read
off the construction's closed form.  Tails never come from extrapolation:

* layer weights: for y outside the cutoff subgroup both factors sit in the
  same shell, so the omitted mass is exactly sum_{j>N} |U_j| phi_j^2, which
  the geometric default families sum in closed form (the enclosure's upper
  end is then the exact value);
* rationals: a layer tail 8 C2 sigma(floor|q|) sum_{j>N} t_j phi_j^2 plus a
  range tail from grouping the remote points into unit intervals, each
  carrying at most the full per-interval mass, with an integral-comparison
  cap on the remaining sigma series;
* direct sums: the sum factorizes over coordinate patterns into per-summand
  self-convolutions, evaluated recursively with their own tails;
* Euclidean factors: the closed-form self-convolution of 1/(1+t^2).

Partial sums are embarrassingly parallel over window points: the engine is
pure and weights are immutable, so concurrent calls are safe.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Optional

from . import groups as G
from .certificates import TruncationSpec
from .intervals import Interval
from .rational import even_floor, sigma
from .weights import (
    DirectSumWeight,
    EuclideanWeight,
    LayerWeight,
    ProductWeight,
    RationalsLayerWeight,
    WeightFn,
)


class TailUnavailableError(ValueError):
    """No closed-form tail is available for this weight's provenance."""


DEFAULT_LAYER_CUTOFF = 8
DEFAULT_BALL_CUTOFF = 12
_RANGE_SERIES_TERMS = 32


def conv_exact(u: WeightFn, x) -> Optional[Fraction]:
    """Closed-form value of (u*u)(x) where the provenance admits one."""
    if isinstance(u, LayerWeight):
        if not u.tails_exact:
            return None
        n = G.layer_of(x)
        phi = u.phi
        total = Fraction(0)
        # y in a lower shell forces x-y into the shell of x, and vice versa
        for j in range(1, n):
            total += 2 * u.group.shell_size(j) * phi.term(j) * phi.term(n)
        prev = 0 if n == 1 else u.group.layer_size(n - 1)
        total += (u.group.shell_size(n) - prev) * phi.term(n) ** 2
        total += u.sq_tail(n)
        return u.scale * u.scale * total
    if isinstance(u, DirectSumWeight):
        def exact_fn(j: int, uj: WeightFn, xj) -> Interval:
            value = conv_exact(uj, xj)
            if value is None:
                raise TailUnavailableError("summand without a closed form")
            return Interval.point(value)

        try:
            iv = _conv_sum(u, x, TruncationSpec(), conv_fn=exact_fn)
        except TailUnavailableError:
            return None
        return iv.lo
    return None


def conv_at(u: WeightFn, x, trunc: TruncationSpec, *,
            memo: Optional[dict] = None, require_tail: bool = True) -> Interval:
    """Enclosure of (u*u)(x): exact partial sum plus provenance tail bound.

    With require_tail=False a weight without certifiable tails yields an
    unbounded enclosure [partial, None] instead of raising; the partial sum
    is still an exact lower bound, enough to disprove an inequality.
    """
    if isinstance(u, LayerWeight):
        iv = _conv_layer(u, x, trunc, require_tail)
    elif isinstance(u, RationalsLayerWeight):
        iv = _conv_rationals(u, x, trunc, memo if memo is not None else {}, require_tail)
    elif isinstance(u, DirectSumWeight):
        iv = _conv_sum(u, x, trunc)
    elif isinstance(u, EuclideanWeight):
        iv = Interval.point(euclidean_conv_value(u, x))
    elif isinstance(u, ProductWeight):
        left = conv_at(u.real_factor, x.real_part, trunc)
        right = conv_at(u.discrete_factor, x.discrete_part, trunc, memo=memo,
                        require_tail=require_tail)
        iv = left.mul_nonneg(right).scale_nonneg(u.scale * u.scale)
    else:
        raise TailUnavailableError(
            f"self-convolution needs a discrete exact or Euclidean weight, got {type(u).__name__}")
    if require_tail and iv.hi is None:
        raise TailUnavailableError("no closed-form tail available for this provenance")
    return iv


def euclidean_conv_value(u: EuclideanWeight, x) -> float:
    """(u*u)(x) = prod_i 2 pi / (4 + x_i^2), scaled."""
    value = 1.0
    for c in x.coords:
        value *= 2.0 * math.pi / (4.0 + c * c)
    return u.scale * u.scale * value


# --------------------------------------------------------------------------
# Layer weights
# --------------------------------------------------------------------------

def _conv_layer(u: LayerWeight, x, trunc: TruncationSpec, require_tail: bool) -> Interval:
    cutoff = trunc.layer if trunc.layer is not None else DEFAULT_LAYER_CUTOFF
    if G.layer_of(x) > cutoff:
        raise ValueError("truncation cutoff must reach the layer of x")
    phi = u.phi
    values = {n: phi.term(n) for n in range(1, cutoff + 1)}
    partial = Fraction(0)
    for y in u.group.subgroup_elements(cutoff):
        partial += values[G.layer_of(y)] * values[G.layer_of(G.sub(x, y))]
    partial *= u.scale * u.scale
    try:
        tail = u.scale * u.scale * u.sq_tail(cutoff)
    except ValueError:
        if require_tail:
            raise TailUnavailableError("no closed-form tail available for this provenance")
        return Interval(partial, None)
    return Interval(partial, partial + tail)


# --------------------------------------------------------------------------
# Rationals
# --------------------------------------------------------------------------

def _rationals_eval(u: RationalsLayerWeight, value: Fraction, memo: dict) -> Fraction:
    cached = memo.get(value)
    if cached is None:
        den = value.denominator
        n = 1
        while u.group.chain_value(n) % den != 0:
            n += 1
        cached = u.scale * u.phi.term(n) * sigma(even_floor(value))
        memo[value] = cached
    return cached


def _sigma_range_series(ball: int, shift: int) -> Fraction:
    """Upper bound on sum_{k >= ball} sigma(k) sigma(max(1, k - shift))."""
    total = Fraction(0)
    for k in range(ball, ball + _RANGE_SERIES_TERMS):
        total += sigma(k) * sigma(max(1, k - shift))
    edge = ball + _RANGE_SERIES_TERMS - shift - 1
    if edge < 1:
        raise ValueError("range cutoff too small for the tail comparison")
    total += Fraction(1, 3 * edge ** 3)
    return total


def _conv_rationals(u: RationalsLayerWeight, x, trunc: TruncationSpec,
                    memo: dict, require_tail: bool) -> Interval:
    cutoff = trunc.layer if trunc.layer is not None else 5
    ball = trunc.ball if trunc.ball is not None else DEFAULT_BALL_CUTOFF
    q = x.value
    reach = even_floor(q) + 1
    if G.layer_of(x) > cutoff or ball < reach + 2:
        raise ValueError("truncation cutoffs must reach the window point")
    t_cut = u.group.chain_value(cutoff)
    partial = Fraction(0)
    for k in range(-ball * t_cut, ball * t_cut + 1):
        r = Fraction(k, t_cut)
        partial += _rationals_eval(u, r, memo) * _rationals_eval(u, q - r, memo)
    if not u.phi.certified:
        if require_tail:
            raise TailUnavailableError("no closed-form tail available for this provenance")
        return Interval(partial, None)
    scale_sq = u.scale * u.scale
    layer_tail = scale_sq * u.sub_constant * sigma(even_floor(q)) * u.sq_tail(cutoff)
    range_tail = (2 * scale_sq * u.mass_up_to(cutoff) * u.phi.term(1)
                  * _sigma_range_series(ball, reach))
    return Interval(partial, partial + layer_tail + range_tail)


# --------------------------------------------------------------------------
# Direct sums
# --------------------------------------------------------------------------

def _nonneg(iv: Interval) -> Interval:
    return Interval(max(iv.lo, Fraction(0)), iv.hi)


def _safe_layer(x) -> int:
    try:
        return G.layer_of(x)
    except G.LayerError:
        return 1


def _conv_sum(u: DirectSumWeight, x, trunc: TruncationSpec, conv_fn=None) -> Interval:
    """Exact pattern decomposition of the direct-sum self-convolution.

    Splitting x' by which coordinates vanish, equal x_j, or differ from both
    reduces the sum to finitely many patterns weighted by subset coefficients;
    each pattern multiplies per-summand quantities: point values, the pinned
    self-convolutions S_j = (u_j*u_j)(x_j) - 2 u_j(0) u_j(x_j), and the
    off-support loop sums Z_j = (u_j*u_j)(0) - u_j(0)^2.
    """
    count = len(u.summands)
    cutoffs = trunc.per_summand if trunc.per_summand is not None else (DEFAULT_LAYER_CUTOFF,) * count
    if len(cutoffs) != count:
        raise ValueError("per-summand cutoffs must match the summand count")
    if conv_fn is None:
        def conv_fn(j: int, uj: WeightFn, xj) -> Interval:
            sub = TruncationSpec(layer=max(cutoffs[j - 1], _safe_layer(xj)))
            return conv_at(uj, xj, sub)

    support = sorted(x.support())
    comp = [j for j in range(1, count + 1) if j not in x.support()]

    point_term: dict[int, Fraction] = {}
    pinned: dict[int, Interval] = {}
    for j in support:
        uj = u.summands[j - 1]
        u0 = uj.eval(uj.descriptor.identity())
        ux = uj.eval(x.coord(j))
        conv_j = conv_fn(j, uj, x.coord(j))
        point_term[j] = u.alphas.value(j) * ux
        pinned[j] = _nonneg(Interval(conv_j.lo - 2 * u0 * ux, conv_j.hi - 2 * u0 * ux)
                            ).scale_nonneg(u.alphas.value(j) ** 2)
    loops: dict[int, Interval] = {}
    for j in comp:
        uj = u.summands[j - 1]
        u0 = uj.eval(uj.descriptor.identity())
        conv0 = conv_fn(j, uj, uj.descriptor.identity())
        loops[j] = _nonneg(Interval(conv0.lo - u0 * u0, conv0.hi - u0 * u0)
                           ).scale_nonneg(u.alphas.value(j) ** 2)

    total = Interval.point(Fraction(0))
    for pattern in itertools.product("ABC", repeat=len(support)):
        v_base = frozenset(j for j, c in zip(support, pattern) if c in "BC")
        w_base = frozenset(j for j, c in zip(support, pattern) if c in "AC")
        for mask in range(2 ** len(comp)):
            extra = frozenset(comp[i] for i in range(len(comp)) if mask >> i & 1)
            coeff = u.coeffs.value(v_base | extra) * u.coeffs.value(w_base | extra)
            term = Interval.point(coeff)
            for j, c in zip(support, pattern):
                if c in "AB":
                    term = term.scale_nonneg(point_term[j])
                else:
                    term = term.mul_nonneg(pinned[j])
            for j in extra:
                term = term.mul_nonneg(loops[j])
            total = total.add(term)
    return total.scale_nonneg(u.scale * u.scale)
