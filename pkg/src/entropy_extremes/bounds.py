"""Tight bounds at fixed Shannon entropy (and at fixed alpha-norm).

Given ``p``, the members ``v_n`` and ``w_n`` with the same Shannon entropy
bracket every alpha-norm of ``p``::

    ||w_bar(p)||_a  <=  ||p||_a  <=  ||v_bar(p)||_a

Any measure that is a strictly monotone function of one alpha-norm inherits
the bracket, with the ends swapped when the function is decreasing.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import kernels
from .errors import (DomainViolation, InvalidOrder, NonPositiveArgument,
                     ShannonOrderUnsupported)
from .extremal import (V, W, inverse_entropy, inverse_norm, norm_profile,
                       entropy_profile, v_dist, w_dist)
from .simplex import (Order, ProbVec, alpha_norm, renyi_entropy,
                      shannon_entropy)


@dataclass(frozen=True)
class BoundReport:
    measure_name: str
    value: float
    lower: float
    upper: float
    attaining_lower: ProbVec
    attaining_upper: ProbVec

    def holds(self, slack: float = 1e-9) -> bool:
        return self.lower - slack <= self.value <= self.upper + slack

    def to_dict(self) -> dict:
        return {
            "measure": self.measure_name,
            "value": self.value,
            "lower": self.lower,
            "upper": self.upper,
            "attaining_lower": self.attaining_lower.tolist(),
            "attaining_upper": self.attaining_upper.tolist(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


class Measure(str, Enum):
    RENYI = "renyi"
    TSALLIS = "tsallis"
    TYPE_BETA = "type-beta"
    GAMMA = "gamma"
    R_NORM = "r-norm"
    ALPHA_NORM = "alpha-norm"
    INDEX_OF_COINCIDENCE = "index-of-coincidence"


# measures that are entropies in nats (the rest are dimensionless)
NAT_MEASURES = {Measure.RENYI}


@dataclass(frozen=True)
class MeasureSpec:
    """A norm-determined measure ``f_t(||p||_ord)``.

    The gamma-entropy of order ``t`` reads the ``1/t``-norm; every other
    measure reads the ``t``-norm. The index of coincidence is the squared
    2-norm and only accepts order 2.
    """

    name: Measure
    order: Order

    def __post_init__(self):
        object.__setattr__(self, "name", Measure(self.name))
        object.__setattr__(self, "order", Order.of(self.order))
        o = self.order
        if self.name is Measure.ALPHA_NORM:
            return
        if self.name is Measure.INDEX_OF_COINCIDENCE:
            if not (o.is_finite and o.alpha == 2.0):
                raise InvalidOrder("index of coincidence is defined at order 2 only")
            return
        if not o.is_finite:
            raise InvalidOrder(f"{self.name.value} needs a finite order t > 0, t != 1")

    @property
    def norm_order(self) -> Order:
        if self.name is Measure.GAMMA:
            return Order.finite(1.0 / self.order.alpha)
        return self.order

    @property
    def increasing(self) -> bool:
        """Direction of ``f_t`` as a function of the norm."""
        if self.name in (Measure.ALPHA_NORM, Measure.INDEX_OF_COINCIDENCE):
            return True
        below_one = self.order.alpha < 1.0
        if self.name is Measure.GAMMA:
            return not below_one
        return below_one

    def transform(self, x):
        """Apply ``f_t``; accepts scalars or arrays."""
        name = self.name
        if name is Measure.ALPHA_NORM:
            return x
        if name is Measure.INDEX_OF_COINCIDENCE:
            return x * x
        t = self.order.alpha
        if name is Measure.RENYI:
            return t / (1.0 - t) * np.log(x)
        if name is Measure.TSALLIS:
            return np.expm1(t * np.log(x)) / (1.0 - t)
        if name is Measure.TYPE_BETA:
            return np.expm1(t * np.log(x)) / (2.0 ** (1.0 - t) - 1.0)
        if name is Measure.GAMMA:
            return (1.0 - x) / (1.0 - 2.0 ** (t - 1.0))
        return t / (t - 1.0) * (1.0 - x)  # R_NORM

    def label(self) -> str:
        return f"{self.name.value}({self.order})"


def _f(spec: MeasureSpec, x: float) -> float:
    return float(spec.transform(x))


def alpha_log(alpha: float, x: float) -> float:
    """The deformed logarithm ``(x**(1-a) - 1)/(1-a)``; ``ln x`` at a = 1."""
    if x <= 0:
        raise NonPositiveArgument(f"alpha-logarithm needs x > 0, got {x!r}")
    if alpha == 1.0:
        return math.log(x)
    return math.expm1((1.0 - alpha) * math.log(x)) / (1.0 - alpha)


def alpha_log_ratio_gap(alpha: float, beta: float, x: float, y: float) -> float:
    """``ln_b(x)/ln_b(y) - ln_a(x)/ln_a(y)`` for a < b and 1 <= x <= y, y != 1.

    Never negative; zero exactly when x is 1 or y.
    """
    if not alpha < beta:
        raise DomainViolation(f"need alpha < beta, got {alpha!r}, {beta!r}")
    if not (1.0 <= x <= y) or y == 1.0:
        raise DomainViolation(f"need 1 <= x <= y with y != 1, got x={x!r}, y={y!r}")
    return alpha_log(beta, x) / alpha_log(beta, y) - alpha_log(alpha, x) / alpha_log(alpha, y)


def _require_norm_order(alpha) -> Order:
    order = Order.of(alpha)
    if order.is_shannon:
        raise ShannonOrderUnsupported(
            "order 1 is excluded: every distribution has unit 1-norm")
    return order


def norm_bounds_at_entropy(p: ProbVec, alpha) -> BoundReport:
    order = _require_norm_order(alpha)
    n = p.n
    h = shannon_entropy(p)
    pv = inverse_entropy(V(n), h)
    upper, d_upper = norm_profile(V(n), pv, order), v_dist(n, pv)
    if n == 2:
        # w_2(1 - p) is v_2(p); reuse it rather than lose bits in 1 - p
        return BoundReport("alpha-norm", alpha_norm(p, order), upper, upper, d_upper, d_upper)
    pw = inverse_entropy(W(n), h)
    return BoundReport(
        "alpha-norm",
        alpha_norm(p, order),
        norm_profile(W(n), pw, order),
        upper,
        w_dist(n, pw),
        d_upper,
    )


def entropy_bounds_at_norm(p: ProbVec, alpha) -> BoundReport:
    """Shannon-entropy bracket among distributions sharing ``||p||_alpha``.

    Below order 1 the v-family gives the lower end; above order 1 the roles
    flip.
    """
    order = _require_norm_order(alpha)
    if order.is_infinity:
        raise InvalidOrder("entropy bounds at fixed norm need a finite order")
    n = p.n
    t = alpha_norm(p, order)
    pv = inverse_norm(V(n), t, order)
    hv, dv = entropy_profile(V(n), pv), v_dist(n, pv)
    if n == 2:
        hw, dw = hv, dv
    else:
        pw = inverse_norm(W(n), t, order)
        hw, dw = entropy_profile(W(n), pw), w_dist(n, pw)
    if order.alpha < 1.0:
        return BoundReport("shannon-entropy", shannon_entropy(p), hv, hw, dv, dw)
    return BoundReport("shannon-entropy", shannon_entropy(p), hw, hv, dw, dv)


def measure_value(p: ProbVec, spec: MeasureSpec) -> float:
    return _f(spec, alpha_norm(p, spec.norm_order))


def measure_bounds_at_entropy(p: ProbVec, spec: MeasureSpec) -> BoundReport:
    nb = norm_bounds_at_entropy(p, spec.norm_order)
    value = _f(spec, nb.value)
    lo, hi = _f(spec, nb.lower), _f(spec, nb.upper)
    if spec.increasing:
        return BoundReport(spec.label(), value, lo, hi, nb.attaining_lower, nb.attaining_upper)
    return BoundReport(spec.label(), value, hi, lo, nb.attaining_upper, nb.attaining_lower)


def renyi_divergence_from_uniform(p: ProbVec, alpha) -> float:
    """``D_alpha(p || u_n) = ln n - H_alpha(p)``, clipped at zero."""
    return max(0.0, math.log(p.n) - renyi_entropy(p, alpha))


def renyi_divergence_bounds(p: ProbVec, alpha) -> BoundReport:
    order = _require_norm_order(alpha)
    if not order.is_finite:
        raise InvalidOrder("Renyi divergence bounds need a finite order")
    mb = measure_bounds_at_entropy(p, MeasureSpec(Measure.RENYI, order))
    ln_n = math.log(p.n)
    return BoundReport(
        f"renyi-divergence({order})",
        max(0.0, ln_n - mb.value),
        max(0.0, ln_n - mb.upper),
        max(0.0, ln_n - mb.lower),
        mb.attaining_upper,
        mb.attaining_lower,
    )


# Batched forms used by the verification harness. Inputs are rows of an
# (m, n) array; outputs are length-m arrays.

def extremal_params_batch(n: int, h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Parameters ``(p_v, p_w)`` of the family members with entropies ``h``;
    they do not depend on the order, so callers sweeping orders reuse them."""
    h = np.clip(h, 0.0, math.log(n))
    return kernels.inv_h_v(n, h), kernels.inv_h_w(n, h)


def norm_bounds_batch(n: int, h: np.ndarray, alpha, params=None) -> tuple[np.ndarray, np.ndarray]:
    order = _require_norm_order(alpha)
    pv, pw = params if params is not None else extremal_params_batch(n, h)
    upper = kernels.norm_v(n, pv, order.value)
    if n == 2:
        return upper, upper.copy()
    return kernels.norm_w(n, pw, order.value), upper


def entropy_bounds_batch(n: int, t: np.ndarray, alpha) -> tuple[np.ndarray, np.ndarray]:
    order = _require_norm_order(alpha)
    if not order.is_finite:
        raise InvalidOrder("entropy bounds at fixed norm need a finite order")
    lo, hi = sorted((1.0, n ** (1.0 / order.alpha - 1.0)))
    t = np.clip(t, lo, hi)
    hv = kernels.h_v(n, kernels.inv_norm_v(n, t, order.alpha))
    hw = hv.copy() if n == 2 else kernels.h_w(n, kernels.inv_norm_w(n, t, order.alpha))
    return (hv, hw) if order.alpha < 1.0 else (hw, hv)
