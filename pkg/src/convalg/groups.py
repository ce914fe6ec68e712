"""Exact element arithmetic for the abelian groups the weights live on.

Variants: the p-power torsion circles Z(p^infinity) given as fractions k/p^n
mod 1, the additive rationals with a declared chain of subgroups (1/t_n)Z,
finite-support direct sums, the unit circle [0,1) under fractional addition,
real coordinate vectors, and real x discrete product pairs.

Discrete variants are exact (arbitrary-precision rationals, canonical form
enforced at construction); real coordinates are floats.  All points are
immutable and hashable, so they can be shared freely across workers and used
as cache keys.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Union

from .rational import even_floor  # noqa: F401  (re-exported group op)


class GroupMismatchError(ValueError):
    """Operands belong to different group descriptors."""


class LayerError(ValueError):
    """The group variant has no declared subgroup chain."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# --------------------------------------------------------------------------
# Descriptors
# --------------------------------------------------------------------------

class GroupDescriptor:
    """Base for the tagged group descriptors. Subclasses are frozen dataclasses."""

    variant: str = "abstract"

    def identity(self):
        raise NotImplementedError


def _factorial_chain(n: int) -> int:
    return math.factorial(n)


# Named subgroup chains t_1 | t_2 | ... for the rationals.  Only named chains
# serialize; callers may register additional ones.
CHAIN_REGISTRY: dict[str, Callable[[int], int]] = {"factorial": _factorial_chain}


def register_chain(name: str, fn: Callable[[int], int]) -> None:
    """Register a chain n -> t_n. Validated on first terms: strictly increasing
    divisibility chain with t_1 >= 1."""
    prev = None
    for n in range(1, 13):
        t = fn(n)
        if t < 1 or (prev is not None and (t <= prev or t % prev != 0)):
            raise ValueError(f"chain {name!r} is not an increasing divisibility chain")
        prev = t
    CHAIN_REGISTRY[name] = fn


@dataclass(frozen=True)
class PrueferGroup(GroupDescriptor):
    """All fractions k/p^n modulo 1, the union of cyclic subgroups of order p^n."""

    p: int
    variant = "pruefer"

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")

    def identity(self) -> "PrueferPoint":
        return PrueferPoint(self, 0, 0)

    def element(self, k: int, n: int) -> "PrueferPoint":
        return PrueferPoint(self, k, n)

    def layer_size(self, n: int) -> int:
        """Size of the n-th subgroup in the chain, p^n."""
        return self.p ** n

    def shell_size(self, n: int) -> int:
        """Number of elements whose layer is exactly n (the identity sits in layer 1)."""
        if n < 1:
            raise ValueError("layers are 1-based")
        if n == 1:
            return self.p
        return self.p ** n - self.p ** (n - 1)

    def subgroup_elements(self, n: int) -> list["PrueferPoint"]:
        """All p^n elements of the n-th subgroup, in canonical order."""
        return [PrueferPoint(self, k, n) for k in range(self.p ** n)]


@dataclass(frozen=True)
class RationalsGroup(GroupDescriptor):
    """The additive rationals, exhausted by the subgroups (1/t_n)Z."""

    chain: str = "factorial"
    variant = "rationals"

    def __post_init__(self) -> None:
        if self.chain not in CHAIN_REGISTRY:
            raise ValueError(f"unknown chain {self.chain!r}")

    def chain_value(self, n: int) -> int:
        return CHAIN_REGISTRY[self.chain](n)

    def identity(self) -> "RationalPoint":
        return RationalPoint(self, Fraction(0))

    def element(self, value) -> "RationalPoint":
        return RationalPoint(self, Fraction(value))

    def ball_elements(self, layer: int, radius: int) -> list["RationalPoint"]:
        """Points of the layer-th subgroup with |x| <= radius, sorted."""
        t = self.chain_value(layer)
        return [RationalPoint(self, Fraction(k, t)) for k in range(-radius * t, radius * t + 1)]


@dataclass(frozen=True)
class CircleGroup(GroupDescriptor):
    """The unit circle with parameter in [0,1); addition is the fractional part."""

    variant = "circle"

    def identity(self) -> "CirclePoint":
        return CirclePoint(self, Fraction(0))

    def element(self, value) -> "CirclePoint":
        return CirclePoint(self, Fraction(value))


@dataclass(frozen=True)
class SumGroup(GroupDescriptor):
    """Finite-support direct sum of the listed summand groups (1-based index)."""

    summands: tuple[GroupDescriptor, ...]
    variant = "sum"

    def identity(self) -> "SumPoint":
        return SumPoint(self, ())

    def point(self, coords: dict) -> "SumPoint":
        return SumPoint(self, tuple(sorted(coords.items())))

    def summand(self, j: int) -> GroupDescriptor:
        if not 1 <= j <= len(self.summands):
            raise ValueError(f"summand index {j} out of range")
        return self.summands[j - 1]


@dataclass(frozen=True)
class RealGroup(GroupDescriptor):
    """R^d under addition, float coordinates."""

    dim: int
    variant = "real"

    def __post_init__(self) -> None:
        if self.dim < 0:
            raise ValueError("dimension must be >= 0")

    def identity(self) -> "RealPoint":
        return RealPoint(self, (0.0,) * self.dim)

    def element(self, coords: Iterable[float]) -> "RealPoint":
        return RealPoint(self, tuple(float(c) for c in coords))


@dataclass(frozen=True)
class ProductGroup(GroupDescriptor):
    """R^d x H for a discrete factor H."""

    real: RealGroup
    discrete: GroupDescriptor
    variant = "product"

    def identity(self) -> "ProductPoint":
        return ProductPoint(self, self.real.identity(), self.discrete.identity())

    def point(self, real_part: "RealPoint", discrete_part) -> "ProductPoint":
        return ProductPoint(self, real_part, discrete_part)


# --------------------------------------------------------------------------
# Points
# --------------------------------------------------------------------------

class GroupPoint:
    """Base class for group elements; concrete points are frozen dataclasses."""

    group: GroupDescriptor

    def __add__(self, other):
        return add(self, other)

    def __neg__(self):
        return neg(self)


@dataclass(frozen=True)
class PrueferPoint(GroupPoint):
    """k/p^n mod 1 in canonical form: 0 <= k < p^n, p does not divide k unless k=0."""

    group: PrueferGroup
    num: int
    exp: int

    def __post_init__(self) -> None:
        p = self.group.p
        k, n = self.num, self.exp
        if n < 0:
            raise ValueError("exponent must be >= 0")
        k %= p ** n
        while n > 0 and k % p == 0:
            k //= p
            n -= 1
        if k == 0:
            n = 0
        object.__setattr__(self, "num", k)
        object.__setattr__(self, "exp", n)

    def value(self) -> Fraction:
        return Fraction(self.num, self.group.p ** self.exp)

    def is_identity(self) -> bool:
        return self.num == 0


@dataclass(frozen=True)
class RationalPoint(GroupPoint):
    group: RationalsGroup
    value: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", Fraction(self.value))

    def is_identity(self) -> bool:
        return self.value == 0


@dataclass(frozen=True)
class CirclePoint(GroupPoint):
    group: CircleGroup
    value: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", Fraction(self.value) % 1)

    def is_identity(self) -> bool:
        return self.value == 0


@dataclass(frozen=True)
class SumPoint(GroupPoint):
    """Finite-support element; coords is a sorted tuple of (index, point) with
    no identity coordinates."""

    group: SumGroup
    coords: tuple[tuple[int, GroupPoint], ...]

    def __post_init__(self) -> None:
        cleaned = []
        seen = set()
        for j, pt in sorted(self.coords):
            if j in seen:
                raise ValueError(f"duplicate coordinate index {j}")
            seen.add(j)
            expected = self.group.summand(j)
            if pt.group != expected:
                raise GroupMismatchError(f"coordinate {j} belongs to {pt.group}, expected {expected}")
            if not _is_identity(pt):
                cleaned.append((j, pt))
        object.__setattr__(self, "coords", tuple(cleaned))

    def support(self) -> frozenset[int]:
        return frozenset(j for j, _ in self.coords)

    def coord(self, j: int) -> GroupPoint:
        for jj, pt in self.coords:
            if jj == j:
                return pt
        return self.group.summand(j).identity()

    def is_identity(self) -> bool:
        return not self.coords


@dataclass(frozen=True)
class RealPoint(GroupPoint):
    group: RealGroup
    coords: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.coords) != self.group.dim:
            raise ValueError("coordinate count does not match dimension")
        object.__setattr__(self, "coords", tuple(float(c) for c in self.coords))

    def is_identity(self) -> bool:
        return all(c == 0.0 for c in self.coords)


@dataclass(frozen=True)
class ProductPoint(GroupPoint):
    group: ProductGroup
    real_part: RealPoint
    discrete_part: GroupPoint

    def __post_init__(self) -> None:
        if self.real_part.group != self.group.real:
            raise GroupMismatchError("real part from wrong group")
        if self.discrete_part.group != self.group.discrete:
            raise GroupMismatchError("discrete part from wrong group")

    def is_identity(self) -> bool:
        return self.real_part.is_identity() and _is_identity(self.discrete_part)


def _is_identity(pt: GroupPoint) -> bool:
    return pt.is_identity()  # type: ignore[attr-defined]


# --------------------------------------------------------------------------
# Group operations
# --------------------------------------------------------------------------

def _require_same_group(x: GroupPoint, y: GroupPoint) -> None:
    if x.group != y.group:
        raise GroupMismatchError(f"points from different groups: {x.group} vs {y.group}")


def add(x: GroupPoint, y: GroupPoint) -> GroupPoint:
    """Group law per variant; results are in canonical form."""
    _require_same_group(x, y)
    if isinstance(x, PrueferPoint):
        p = x.group.p
        n = max(x.exp, y.exp)
        k = x.num * p ** (n - x.exp) + y.num * p ** (n - y.exp)
        return PrueferPoint(x.group, k, n)
    if isinstance(x, RationalPoint):
        return RationalPoint(x.group, x.value + y.value)
    if isinstance(x, CirclePoint):
        return CirclePoint(x.group, x.value + y.value)
    if isinstance(x, SumPoint):
        merged = dict(x.coords)
        for j, pt in y.coords:
            if j in merged:
                merged[j] = add(merged[j], pt)
            else:
                merged[j] = pt
        return SumPoint(x.group, tuple(merged.items()))
    if isinstance(x, RealPoint):
        return RealPoint(x.group, tuple(a + b for a, b in zip(x.coords, y.coords)))
    if isinstance(x, ProductPoint):
        return ProductPoint(x.group, add(x.real_part, y.real_part), add(x.discrete_part, y.discrete_part))
    raise TypeError(f"unsupported point type {type(x)}")


def neg(x: GroupPoint) -> GroupPoint:
    if isinstance(x, PrueferPoint):
        return PrueferPoint(x.group, -x.num, x.exp)
    if isinstance(x, RationalPoint):
        return RationalPoint(x.group, -x.value)
    if isinstance(x, CirclePoint):
        return CirclePoint(x.group, -x.value)
    if isinstance(x, SumPoint):
        return SumPoint(x.group, tuple((j, neg(pt)) for j, pt in x.coords))
    if isinstance(x, RealPoint):
        return RealPoint(x.group, tuple(-c for c in x.coords))
    if isinstance(x, ProductPoint):
        return ProductPoint(x.group, neg(x.real_part), neg(x.discrete_part))
    raise TypeError(f"unsupported point type {type(x)}")


def sub(x: GroupPoint, y: GroupPoint) -> GroupPoint:
    return add(x, neg(y))


def nmul(n: int, x: GroupPoint) -> GroupPoint:
    """n-fold sum n.x; nmul(0, x) is the identity."""
    if n < 0:
        return neg(nmul(-n, x))
    if isinstance(x, PrueferPoint):
        return PrueferPoint(x.group, n * x.num, x.exp)
    if isinstance(x, RationalPoint):
        return RationalPoint(x.group, n * x.value)
    if isinstance(x, CirclePoint):
        return CirclePoint(x.group, n * x.value)
    if isinstance(x, SumPoint):
        return SumPoint(x.group, tuple((j, nmul(n, pt)) for j, pt in x.coords))
    if isinstance(x, RealPoint):
        return RealPoint(x.group, tuple(n * c for c in x.coords))
    if isinstance(x, ProductPoint):
        return ProductPoint(x.group, nmul(n, x.real_part), nmul(n, x.discrete_part))
    raise TypeError(f"unsupported point type {type(x)}")


def layer_of(x: GroupPoint) -> int:
    """Index of the first chain subgroup containing x (identity sits in layer 1)."""
    if isinstance(x, PrueferPoint):
        return max(x.exp, 1)
    if isinstance(x, RationalPoint):
        den = x.value.denominator
        n = 1
        while x.group.chain_value(n) % den != 0:
            n += 1
        return n
    raise LayerError(f"no subgroup chain declared for variant {x.group.variant!r}")


def sort_key(x: GroupPoint):
    """Deterministic total order within one group, for reproducible windows."""
    if isinstance(x, PrueferPoint):
        v = x.value()
        return (v.numerator, v.denominator)
    if isinstance(x, (RationalPoint, CirclePoint)):
        return (x.value.numerator, x.value.denominator)
    if isinstance(x, SumPoint):
        return tuple((j, sort_key(pt)) for j, pt in x.coords)
    if isinstance(x, RealPoint):
        return x.coords
    if isinstance(x, ProductPoint):
        return (sort_key(x.real_part), sort_key(x.discrete_part))
    raise TypeError(f"unsupported point type {type(x)}")


PointLike = Union[GroupPoint, Fraction]
