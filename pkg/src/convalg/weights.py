"""Construction of the subconvolutive weight functions and their rescalings.

All constructions produce an auxiliary weight u that is positive, even, and
(after an explicit rescale) subconvolutive: u * u <= u pointwise.  The induced
algebra weight is w = u^(-1/q) with 1/p + 1/q = 1.  Four families are built:

* layer weights on groups exhausted by nested finite subgroups (the p-power
  torsion circles): constant value phi_n on the n-th shell;
* weights on the additive rationals: phi_n modulated by the reciprocal-square
  kernel sigma of the even integer part;
* weights on finite-support direct sums, assembled from per-summand weights
  through small coefficients alpha_j and subset coefficients a_s;
* the rational-decay weight 1/((1+x_1^2)...(1+x_d^2)) on R^d and its product
  with a discrete factor.

Exact constructions evaluate to rationals; the Euclidean family is float.
Weights are immutable; evaluation is pure and safe to run concurrently.
"""

from __future__ import annotations

import dataclasses
import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Union

from . import groups as G
from .rational import even_floor, exp_enclosure, sigma
from .sequences import sigma_subconvolutive_constant

Scalar = Union[Fraction, float]

TWO_PI = 2.0 * math.pi


# --------------------------------------------------------------------------
# Shell-value sequences
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class PhiSequence:
    """Closed-form positive nonincreasing shell values phi_n (1-based).

    mass_ratio certifies (phi_{n+1} w_{n+1}) <= mass_ratio * (phi_n w_n) for
    the declared chain weights w_n (subgroup sizes, or t_n on the rationals),
    so the total mass has a geometric tail.  sq_ratio certifies the same for
    the shell-weighted squares driving convolution tails.  geometric_tails
    marks families whose sq tails are exactly geometric from the second shell
    on, making truncation tails exact rather than upper bounds.
    """

    name: str
    term_fn: Callable[[int], Fraction]
    mass_ratio: Fraction
    sq_ratio: Fraction
    exact_mass: Optional[Fraction]
    geometric_tails: bool
    certified: bool = True

    def term(self, n: int) -> Fraction:
        if n < 1:
            raise ValueError("shell indices are 1-based")
        return Fraction(self.term_fn(n))


def pruefer_default_phi(p: int) -> PhiSequence:
    """phi_n = (2p)^-n: mass terms phi_n p^n = 2^-n sum to exactly 1, and the
    shell-weighted squares are exactly geometric with ratio 1/(4p)."""
    return PhiSequence(
        name="geometric",
        term_fn=lambda n: Fraction(1, (2 * p) ** n),
        mass_ratio=Fraction(1, 2),
        sq_ratio=Fraction(1, 4 * p),
        exact_mass=Fraction(1),
        geometric_tails=True,
    )


def rationals_default_phi() -> PhiSequence:
    """phi_n = 1/(n! 2^n) against t_n = n!: mass terms are exactly 2^-n, and
    t_n phi_n^2 = 1/(n! 4^n) contracts by 1/(4(n+1)) <= 1/8 per step."""
    return PhiSequence(
        name="factorial",
        term_fn=lambda n: Fraction(1, math.factorial(n) * 2 ** n),
        mass_ratio=Fraction(1, 2),
        sq_ratio=Fraction(1, 8),
        exact_mass=Fraction(1),
        geometric_tails=False,
    )


def broken_increasing_phi() -> PhiSequence:
    """Deliberately invalid shell values (increasing, infinite mass); used as
    the negative control. Marked uncertified: tails are unavailable."""
    return PhiSequence(
        name="broken-demo",
        term_fn=lambda n: Fraction(2 ** n),
        mass_ratio=Fraction(4),
        sq_ratio=Fraction(16),
        exact_mass=None,
        geometric_tails=False,
        certified=False,
    )


PHI_REGISTRY: dict[str, Callable[..., PhiSequence]] = {
    "geometric": pruefer_default_phi,
    "factorial": lambda p=None: rationals_default_phi(),
    "broken-demo": lambda p=None: broken_increasing_phi(),
}


# --------------------------------------------------------------------------
# Direct-sum coefficients
# --------------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def _coeff_value(eps1: Fraction, support: frozenset) -> Fraction:
    if not support:
        return eps1
    return eps1 / sum(math.factorial(j) for j in support)


@dataclass(frozen=True)
class SubsetCoeffs:
    """Subset coefficients a_s = eps1 / sum_{j in s} j!, a_empty = eps1.

    Monotone under unions by construction; the split-sum budget
    sum_{v subset s} a_v a_{s\\v} / a_s <= 1/4 holds for every finite s once
    eps1 * e^2 <= 1/8, which `certify` checks with a rational enclosure of e^2.
    """

    eps1: Fraction = Fraction(1, 60)

    def value(self, support: frozenset) -> Fraction:
        return _coeff_value(self.eps1, frozenset(support))

    def certify(self) -> None:
        if not 0 < self.eps1 <= 1:
            raise ValueError("eps1 must lie in (0, 1]")
        _, e2_hi = exp_enclosure(Fraction(2))
        if self.eps1 * e2_hi > Fraction(1, 8):
            raise ValueError("eps1 too large: the split-sum budget 1/4 is not certified")

    def split_sum(self, support: frozenset) -> Fraction:
        """Exact sum_{v subset s} a_v a_{s\\v} / a_s (for enumeration checks)."""
        s = frozenset(support)
        total = Fraction(0)
        members = sorted(s)
        for mask in range(2 ** len(members)):
            v = frozenset(members[i] for i in range(len(members)) if mask >> i & 1)
            total += self.value(v) * self.value(s - v)
        return total / self.value(s)


def default_coeffs(eps1: Fraction = Fraction(1, 60)) -> SubsetCoeffs:
    coeffs = SubsetCoeffs(eps1)
    coeffs.certify()
    return coeffs


@dataclass(frozen=True)
class AlphaSequence:
    """Per-summand damping factors alpha_j in (0, 1), small enough that both
    prod (1 + alpha_j) < 2 and prod (1 + alpha_j^2 (u_j*u_j)(0)) < 2."""

    values: tuple[Fraction, ...]
    rule: str = "3^-j"

    def value(self, j: int) -> Fraction:
        return self.values[j - 1]

    def certify(self, summand_zero_values: tuple[Fraction, ...]) -> None:
        if len(self.values) != len(summand_zero_values):
            raise ValueError("alpha count must match summand count")
        prod_plain = Fraction(1)
        prod_conv = Fraction(1)
        for a, u0 in zip(self.values, summand_zero_values):
            if not 0 < a < 1:
                raise ValueError("alpha_j must lie in (0, 1)")
            prod_plain *= 1 + a
            # (u_j*u_j)(0) <= u_j(0) for subconvolutive summands
            prod_conv *= 1 + a * a * u0
        if prod_plain >= 2 or prod_conv >= 2:
            raise ValueError("alpha sequence too large for the product budgets")


def default_alphas(summands: tuple["WeightFn", ...]) -> AlphaSequence:
    """alpha_j = 3^-j / max(1, u_j(0))."""
    values = []
    for j, u in enumerate(summands, start=1):
        u0 = u.eval(u.descriptor.identity())
        values.append(Fraction(1, 3 ** j) / max(Fraction(1), Fraction(u0)))
    return AlphaSequence(tuple(values))


# --------------------------------------------------------------------------
# Weight functions
# --------------------------------------------------------------------------

class WeightFn:
    """Positive even evaluator on one group, with provenance-backed bounds.

    Subclasses are frozen dataclasses; `scale` is a multiplicative
    normalization applied on top of the raw construction.  `b_bound` is a
    certified constant B with u*u <= B*u (None when unavailable), so a weight
    carries a subconvolutivity certificate exactly when b_bound <= 1.
    """

    construction: str = "abstract"
    exact: bool = True

    descriptor: G.GroupDescriptor
    scale: Scalar

    def raw_eval(self, x) -> Scalar:
        raise NotImplementedError

    def eval(self, x) -> Scalar:
        return self.scale * self.raw_eval(x)

    def __call__(self, x) -> Scalar:
        return self.eval(x)

    def raw_b_bound(self) -> Optional[Scalar]:
        return None

    @property
    def b_bound(self) -> Optional[Scalar]:
        raw = self.raw_b_bound()
        return None if raw is None else raw * self.scale

    @property
    def has_b_certificate(self) -> bool:
        b = self.b_bound
        return b is not None and b <= 1

    def rescaled(self, factor: Scalar) -> "WeightFn":
        return dataclasses.replace(self, scale=self.scale * factor)

    def max_value(self) -> Optional[Scalar]:
        return None

    def decay_certificate(self, x) -> Optional[tuple[Scalar, int]]:
        """(C, d) with 1/u(nx) <= C n^d for all n >= 1, from provenance."""
        return None

    def point_add(self, s, t):
        return G.add(s, t)

    def point_neg(self, s):
        return G.neg(s)


@dataclass(frozen=True)
class LayerWeight(WeightFn):
    """u = phi_n on the n-th shell of a nested-finite-subgroup chain."""

    group: G.PrueferGroup
    phi: PhiSequence
    scale: Fraction = Fraction(1)

    construction = "pruefer-layer"

    @property
    def descriptor(self) -> G.GroupDescriptor:
        return self.group

    def raw_eval(self, x) -> Fraction:
        return self.phi.term(G.layer_of(x))

    def mass(self) -> Fraction:
        """Total (or certified upper bound) of sum phi_n |G_n|."""
        if self.phi.exact_mass is not None:
            return self.phi.exact_mass
        if not self.phi.certified or self.phi.mass_ratio >= 1:
            raise ValueError("mass bound not certifiable from the closed form")
        partial = Fraction(0)
        k = 8
        for n in range(1, k + 1):
            partial += self.phi.term(n) * self.group.layer_size(n)
        last = self.phi.term(k) * self.group.layer_size(k)
        return partial + last * self.phi.mass_ratio / (1 - self.phi.mass_ratio)

    def raw_b_bound(self) -> Optional[Fraction]:
        try:
            return 2 * self.mass()
        except ValueError:
            return None

    def sq_term(self, n: int) -> Fraction:
        """Shell-weighted square |U_n| phi_n^2 (the self-convolution kernel at 0)."""
        return self.group.shell_size(n) * self.phi.term(n) ** 2

    def sq_tail(self, cutoff: int) -> Fraction:
        """sum_{j > cutoff} |U_j| phi_j^2 -- exact for geometric families."""
        if not self.phi.certified or self.phi.sq_ratio >= 1:
            raise ValueError("no closed-form tail available for this shell sequence")
        return self.sq_term(cutoff + 1) / (1 - self.phi.sq_ratio)

    @property
    def tails_exact(self) -> bool:
        return self.phi.geometric_tails

    def max_value(self) -> Fraction:
        return self.scale * self.phi.term(1)

    def decay_certificate(self, x) -> tuple[Fraction, int]:
        # the orbit {nx} stays inside the layer of x, where phi is smallest
        return (Fraction(1) / (self.scale * self.phi.term(G.layer_of(x))), 0)


@dataclass(frozen=True)
class RationalsLayerWeight(WeightFn):
    """u(q) = phi_n sigma(floor|q|) on the n-th shell of the rationals chain."""

    group: G.RationalsGroup
    phi: PhiSequence
    c2: Fraction
    scale: Fraction = Fraction(1)

    construction = "rationals-layer"

    @property
    def descriptor(self) -> G.GroupDescriptor:
        return self.group

    def raw_eval(self, x) -> Fraction:
        return self.phi.term(G.layer_of(x)) * sigma(even_floor(x.value))

    def mass(self) -> Fraction:
        if self.phi.exact_mass is not None:
            return self.phi.exact_mass
        if not self.phi.certified or self.phi.mass_ratio >= 1:
            raise ValueError("mass bound not certifiable from the closed form")
        partial = Fraction(0)
        k = 8
        for n in range(1, k + 1):
            partial += self.phi.term(n) * self.group.chain_value(n)
        last = self.phi.term(k) * self.group.chain_value(k)
        return partial + last * self.phi.mass_ratio / (1 - self.phi.mass_ratio)

    @property
    def sub_constant(self) -> Fraction:
        """C = 8 * C2: shell sums of sigma(.)sigma(q-.) are below C t_j sigma(floor|q|)."""
        return 8 * self.c2

    def raw_b_bound(self) -> Optional[Fraction]:
        try:
            return 2 * self.sub_constant * self.mass()
        except ValueError:
            return None

    def sq_term(self, n: int) -> Fraction:
        """t_n phi_n^2, the shell factor of the convolution layer tail."""
        return self.group.chain_value(n) * self.phi.term(n) ** 2

    def sq_tail(self, cutoff: int) -> Fraction:
        if not self.phi.certified or self.phi.sq_ratio >= 1:
            raise ValueError("no closed-form tail available for this shell sequence")
        return self.sq_term(cutoff + 1) / (1 - self.phi.sq_ratio)

    def mass_up_to(self, cutoff: int) -> Fraction:
        """sum_{j <= cutoff} (t_j - t_{j-1}) phi_j, the per-unit-interval mass."""
        total = Fraction(0)
        prev = 0
        for j in range(1, cutoff + 1):
            t = self.group.chain_value(j)
            total += (t - prev) * self.phi.term(j)
            prev = t
        return total

    def max_value(self) -> Fraction:
        return self.scale * self.phi.term(1)

    def decay_certificate(self, x) -> tuple[Fraction, int]:
        m = G.layer_of(x)
        mx = max(Fraction(1), abs(x.value))
        return (mx * mx / (self.scale * self.phi.term(m)), 2)


@dataclass(frozen=True)
class DirectSumWeight(WeightFn):
    """u(x) = a_{s(x)} prod_{j in s(x)} alpha_j u_j(x_j) on a finite direct sum."""

    group: G.SumGroup
    summands: tuple[WeightFn, ...]
    alphas: AlphaSequence
    coeffs: SubsetCoeffs
    scale: Fraction = Fraction(1)

    construction = "direct-sum"

    @property
    def descriptor(self) -> G.GroupDescriptor:
        return self.group

    def raw_eval(self, x) -> Fraction:
        value = self.coeffs.value(x.support())
        for j, pt in x.coords:
            value *= self.alphas.value(j) * self.summands[j - 1].eval(pt)
        return value

    def raw_b_bound(self) -> Fraction:
        # certified by the constructor checks on summands, alphas and coeffs
        return Fraction(1)

    def max_value(self) -> Fraction:
        bound = self.coeffs.eps1
        for j, u in enumerate(self.summands, start=1):
            factor = self.alphas.value(j) * u.max_value()
            if factor > 1:
                bound *= factor
        return self.scale * bound

    def decay_certificate(self, x) -> Optional[tuple[Fraction, int]]:
        c = Fraction(1) / (self.scale * self.coeffs.value(x.support()))
        d = 0
        for j, pt in x.coords:
            cert = self.summands[j - 1].decay_certificate(pt)
            if cert is None:
                return None
            cj, dj = cert
            c *= max(Fraction(1), Fraction(cj) / self.alphas.value(j))
            d += dj
        return (c, d)


@dataclass(frozen=True)
class EuclideanWeight(WeightFn):
    """u(x) = 1/((1+x_1^2)...(1+x_d^2)) on R^d (float evaluator).

    The raw form satisfies u*u <= (2 pi)^d u (d=1 closed form: the
    self-convolution is 2 pi/(4+t^2)); the normalization constant is recorded
    here and applied by scale_for_b or by product constructions.
    """

    group: G.RealGroup
    scale: float = 1.0

    construction = "euclidean"
    exact = False

    @property
    def descriptor(self) -> G.GroupDescriptor:
        return self.group

    def raw_eval(self, x) -> float:
        value = 1.0
        for c in x.coords:
            value /= 1.0 + c * c
        return value

    def raw_b_bound(self) -> float:
        return TWO_PI ** self.group.dim

    def max_value(self) -> float:
        return self.scale

    def decay_certificate(self, x) -> tuple[float, int]:
        c = 1.0 / self.scale
        for coord in x.coords:
            c *= 1.0 + coord * coord
        return (c, 2 * self.group.dim)


@dataclass(frozen=True)
class ProductWeight(WeightFn):
    """u(r, h) = u_R(r) u_H(h) on R^d x H (float evaluator)."""

    group: G.ProductGroup
    real_factor: WeightFn
    discrete_factor: WeightFn
    scale: float = 1.0

    construction = "product"
    exact = False

    @property
    def descriptor(self) -> G.GroupDescriptor:
        return self.group

    def raw_eval(self, x) -> float:
        return float(self.real_factor.eval(x.real_part)) * float(self.discrete_factor.eval(x.discrete_part))

    def raw_b_bound(self) -> Optional[float]:
        br = self.real_factor.b_bound
        bh = self.discrete_factor.b_bound
        if br is None or bh is None:
            return None
        return float(br) * float(bh)

    def max_value(self) -> Optional[float]:
        mr = self.real_factor.max_value()
        mh = self.discrete_factor.max_value()
        if mr is None or mh is None:
            return None
        return self.scale * float(mr) * float(mh)

    def decay_certificate(self, x) -> Optional[tuple[float, int]]:
        cr = self.real_factor.decay_certificate(x.real_part)
        ch = self.discrete_factor.decay_certificate(x.discrete_part)
        if cr is None or ch is None:
            return None
        return (float(cr[0]) * float(ch[0]) / self.scale, cr[1] + ch[1])


@dataclass(frozen=True)
class AlgebraWeight(WeightFn):
    """w = u^(-1/q) for a subconvolutive u; the weight of the L_p algebra.

    Evaluation is float (the root is irrational in general), but order
    comparisons against products reduce exactly to the base weight:
    w(s+t) <= w(s) w(t) iff u(s+t) >= u(s) u(t).
    """

    base: WeightFn
    p: Fraction
    scale: float = 1.0

    construction = "algebra"
    exact = False

    @property
    def descriptor(self) -> G.GroupDescriptor:
        return self.base.descriptor

    @property
    def q(self) -> Fraction:
        return self.p / (self.p - 1)

    def raw_eval(self, x) -> float:
        return float(self.base.eval(x)) ** float(-1 / self.q)

    def submult_exact(self, s, t) -> Optional[bool]:
        if not self.base.exact:
            return None
        u = self.base
        return u.eval(G.add(s, t)) >= u.eval(s) * u.eval(t)

    def global_lower_bound(self) -> Optional[float]:
        """Certified positive lower bound (max u)^(-1/q) from provenance."""
        m = self.base.max_value()
        if m is None:
            return None
        return float(m) ** float(-1 / self.q) * self.scale


# --------------------------------------------------------------------------
# Construction operations
# --------------------------------------------------------------------------

def _validate_phi(phi: PhiSequence, first: int = 10) -> None:
    prev = None
    for n in range(1, first + 1):
        t = phi.term(n)
        if t <= 0:
            raise ValueError("shell values must be positive")
        if prev is not None and t > prev:
            raise ValueError("shell values must be nonincreasing")
        prev = t


def nested_finite_weight(group: G.PrueferGroup, phi: PhiSequence, *,
                         unchecked: bool = False) -> LayerWeight:
    """Layer weight on a nested-finite-subgroup chain.

    Validates positivity/monotonicity of the shell values and that the mass
    sum phi_n |G_n| has a certified geometric tail.  `unchecked=True` skips
    validation (negative-control weights only); such weights carry no tail
    bounds and can never certify "holds".
    """
    if unchecked:
        return LayerWeight(group=group, phi=phi)
    _validate_phi(phi)
    if not phi.certified or phi.mass_ratio >= 1:
        raise ValueError("mass bound not certifiable from the closed form")
    w = LayerWeight(group=group, phi=phi)
    w.mass()
    return w


def pruefer_weight(p: int) -> LayerWeight:
    """Default layer weight on the p-power torsion circle: phi_n = (2p)^-n,
    so the mass is exactly 1 and u*u <= 2u after which u/2 is subconvolutive."""
    return nested_finite_weight(G.PrueferGroup(p), pruefer_default_phi(p))


@functools.lru_cache(maxsize=None)
def _cached_c2() -> Fraction:
    return Fraction(sigma_subconvolutive_constant().hi)


def rationals_weight(group: G.RationalsGroup | None = None,
                     phi: PhiSequence | None = None, *,
                     c2: Fraction | None = None,
                     unchecked: bool = False) -> RationalsLayerWeight:
    """Weight on the additive rationals: u(q) = phi_n sigma(floor|q|) on shell n.

    Records the subconvolutivity constant C2 of the sigma kernel, which enters
    the certified bound u*u <= 2*(8*C2)*mass * u.
    """
    group = group or G.RationalsGroup()
    phi = phi or rationals_default_phi()
    if not unchecked:
        _validate_phi(phi)
        if not phi.certified or phi.mass_ratio >= 1:
            raise ValueError("mass bound not certifiable from the closed form")
    c2 = c2 if c2 is not None else _cached_c2()
    w = RationalsLayerWeight(group=group, phi=phi, c2=c2)
    if not unchecked:
        w.mass()
    return w


def direct_sum_weight(summands: tuple[WeightFn, ...] | list[WeightFn],
                      alphas: AlphaSequence | None = None,
                      coeffs: SubsetCoeffs | None = None) -> DirectSumWeight:
    """Assemble a subconvolutive weight on the direct sum of the summand groups.

    Every summand must carry a subconvolutivity certificate (b_bound <= 1);
    the proof of u*u <= u consumes it per coordinate.  The default alpha and
    subset coefficients are certified against their product/split budgets.
    """
    summands = tuple(summands)
    if not all(isinstance(u.descriptor, G.GroupDescriptor) for u in summands):
        raise ValueError("summands must be weights on group descriptors")
    for j, u in enumerate(summands, start=1):
        if not u.has_b_certificate:
            raise ValueError(f"summand {j} lacks a subconvolutivity certificate "
                             "(rescale it with scale_for_b first)")
    group = G.SumGroup(tuple(u.descriptor for u in summands))
    alphas = alphas or default_alphas(summands)
    coeffs = coeffs or default_coeffs()
    zeros = tuple(Fraction(u.eval(u.descriptor.identity())) for u in summands)
    alphas.certify(zeros)
    coeffs.certify()
    return DirectSumWeight(group=group, summands=summands, alphas=alphas, coeffs=coeffs)


def euclidean_weight(d: int) -> EuclideanWeight:
    if d < 1:
        raise ValueError("dimension must be >= 1")
    return EuclideanWeight(group=G.RealGroup(d))


def product_weight(real_factor: WeightFn, discrete_factor: WeightFn, *,
                   normalize: bool = True) -> ProductWeight:
    """u(r,h) = u_R(r) u_H(h).  The compact open subgroup of the discrete
    factor is modeled as already quotiented out: u_H lives on the quotient.

    With normalize=True (default) the Euclidean factor is rescaled by its
    recorded constant so the product carries a subconvolutivity certificate.
    """
    if not isinstance(real_factor.descriptor, G.RealGroup):
        raise ValueError("first factor must live on R^d")
    if isinstance(discrete_factor.descriptor, (G.RealGroup, G.ProductGroup)):
        raise ValueError("second factor must be discrete")
    if not discrete_factor.has_b_certificate:
        raise ValueError("discrete factor lacks a subconvolutivity certificate")
    rf = real_factor
    if normalize and rf.b_bound is not None and rf.b_bound > 1:
        rf = rf.rescaled(1.0 / float(rf.b_bound))
    group = G.ProductGroup(real_factor.descriptor, discrete_factor.descriptor)
    return ProductWeight(group=group, real_factor=rf, discrete_factor=discrete_factor)


def algebra_weight(u: WeightFn, p) -> AlgebraWeight:
    """w = u^(-1/q) with 1/p + 1/q = 1; requires p > 1 and subconvolutive u."""
    p = Fraction(p)
    if p <= 1:
        raise ValueError("exponent p must be > 1")
    if not u.has_b_certificate:
        raise ValueError("base weight lacks a subconvolutivity certificate")
    return AlgebraWeight(base=u, p=p)


def scale_for_b(u: WeightFn, bound) -> WeightFn:
    """Divide by a certified bound: if u*u <= bound*u then u' = u/bound
    satisfies u'*u' = (u*u)/bound^2 <= u/bound = u' exactly."""
    if isinstance(bound, Fraction) or isinstance(bound, int):
        factor = Fraction(1) / Fraction(bound)
    else:
        factor = 1.0 / float(bound)
    return u.rescaled(factor)
