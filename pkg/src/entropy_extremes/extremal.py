"""The two extremal families of n-ary distributions and their profiles.

``v_n(p)`` has one large mass ``1 - (n-1)p`` and ``n-1`` masses ``p``.
``w_n(p)`` has ``floor(1/p)`` masses ``p``, one remainder mass and zeros.
At a fixed Shannon entropy ``v_n`` carries the largest and ``w_n`` the
smallest alpha-norm, for every order.

The profile functions are closed forms; the inverses are bisections (see
:mod:`entropy_extremes.kernels`).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import kernels
from .errors import (DimensionTooSmall, EntropyOutOfRange, NormOutOfRange,
                     ParamOutOfRange, ShannonOrderUnsupported)
from .simplex import Order, ProbVec, norm_range, rearrange_decreasing

TOL_INV = 1e-12
DOMAIN_SLACK = 1e-15
REMAINDER_DUST = 2.5e-16


class Family(str, Enum):
    V = "V"
    W = "W"


@dataclass(frozen=True)
class ExtremalFamily:
    kind: Family
    n: int

    def __post_init__(self):
        object.__setattr__(self, "kind", Family(self.kind))
        if self.n < 2:
            raise DimensionTooSmall(f"n must be >= 2, got {self.n}")

    def construction_domain(self) -> tuple[float, float]:
        if self.kind is Family.V:
            return 0.0, 1.0 / (self.n - 1)
        return 1.0 / self.n, 1.0

    def inversion_domain(self) -> tuple[float, float]:
        if self.kind is Family.V:
            return 0.0, 1.0 / self.n
        return 1.0 / self.n, 1.0


def V(n: int) -> ExtremalFamily:
    return ExtremalFamily(Family.V, n)


def W(n: int) -> ExtremalFamily:
    return ExtremalFamily(Family.W, n)


def _check_param(fam: ExtremalFamily, p: float) -> float:
    lo, hi = fam.construction_domain()
    if not (lo - DOMAIN_SLACK <= p <= hi + DOMAIN_SLACK):
        raise ParamOutOfRange(
            f"{fam.kind.value}_{fam.n} parameter {p!r} outside [{lo!r}, {hi!r}]")
    return min(max(float(p), lo), hi)


def v_dist(n: int, p: float) -> ProbVec:
    p = _check_param(V(n), p)
    return ProbVec([1.0 - (n - 1) * p] + [p] * (n - 1))


def w_dist(n: int, p: float) -> ProbVec:
    p = _check_param(W(n), p)
    x = 1.0 / p
    k = round(x) if abs(x - round(x)) <= 1e-12 else math.floor(x)
    out = np.zeros(n)
    out[:k] = p
    rem = 1.0 - k * p
    if k < n and rem > REMAINDER_DUST:
        out[k] = rem
    return ProbVec(out)


def family_dist(fam: ExtremalFamily, p: float) -> ProbVec:
    return v_dist(fam.n, p) if fam.kind is Family.V else w_dist(fam.n, p)


def entropy_profile(fam: ExtremalFamily, p: float) -> float:
    """Shannon entropy of the family member at ``p`` (closed form)."""
    p = _check_param(fam, p)
    f = kernels.h_v if fam.kind is Family.V else kernels.h_w
    return float(f(fam.n, np.array([p]))[0])


def norm_profile(fam: ExtremalFamily, p: float, alpha) -> float:
    order = Order.of(alpha)
    p = _check_param(fam, p)
    if order.is_shannon:
        return 1.0
    f = kernels.norm_v if fam.kind is Family.V else kernels.norm_w
    return float(f(fam.n, np.array([p]), order.value)[0])


def inverse_entropy(fam: ExtremalFamily, h: float) -> float:
    """The parameter in the inversion domain whose family member has Shannon
    entropy ``h``. For V that domain is ``[0, 1/n]``, for W ``[1/n, 1]``."""
    top = math.log(fam.n)
    if not (-TOL_INV <= h <= top + TOL_INV):
        raise EntropyOutOfRange(f"entropy {h!r} outside [0, ln {fam.n}]")
    f = kernels.inv_h_v if fam.kind is Family.V else kernels.inv_h_w
    return float(f(fam.n, np.array([min(max(h, 0.0), top)]))[0])


def _clamp_norm(n: int, target: float, order: Order) -> float:
    lo, hi = norm_range(n, order)
    slack = TOL_INV * max(1.0, hi)
    if not (lo - slack <= target <= hi + slack):
        raise NormOutOfRange(f"norm {target!r} outside [{lo!r}, {hi!r}] for n={n}")
    return min(max(target, lo), hi)


def inverse_norm(fam: ExtremalFamily, target: float, alpha) -> float:
    order = Order.of(alpha)
    if order.is_shannon:
        raise ShannonOrderUnsupported(
            "the 1-norm of every distribution is 1 and cannot be inverted")
    t = _clamp_norm(fam.n, target, order)
    f = kernels.inv_norm_v if fam.kind is Family.V else kernels.inv_norm_w
    return float(f(fam.n, np.array([t]), order.value)[0])


@dataclass(frozen=True)
class ExtremalProfile:
    family: ExtremalFamily
    param: float
    entropy: float
    dist: ProbVec = field(repr=False)

    @classmethod
    def at(cls, fam: ExtremalFamily, p: float) -> "ExtremalProfile":
        dist = family_dist(fam, p)
        return cls(fam, float(p), entropy_profile(fam, p), rearrange_decreasing(dist))

    @classmethod
    def at_entropy(cls, fam: ExtremalFamily, h: float) -> "ExtremalProfile":
        return cls.at(fam, inverse_entropy(fam, h))
