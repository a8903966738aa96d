"""Probability vectors, entropy orders and the base information measures.

All quantities are in nats. A :class:`ProbVec` is immutable; construction
validates and normalizes the input so that the entries sum to one.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionTooSmall, InvalidOrder, NotADistribution

TOL_SUM = 1e-12
SUM_SLACK = 1e-9
NEG_DUST = 1e-12
TINY = 1e-300
# residuals at rounding level are left alone so that e.g. u_6 stays exactly uniform
EXACT_SLACK = 1e-15
LARGE_ALPHA = 1e6


class ProbVec:
    """An n-ary probability vector (n >= 2).

    Negative dust down to ``-1e-12`` is clamped to zero, entries below
    ``1e-300`` are treated as exact zeros, and the residual of the sum is
    folded into the largest entry.
    """

    __slots__ = ("_p", "_sorted")

    def __init__(self, values: Iterable[float]):
        p = np.array(list(values) if not isinstance(values, np.ndarray) else values,
                     dtype=float).ravel()
        if p.size < 2:
            raise DimensionTooSmall(f"need at least 2 entries, got {p.size}")
        if not np.all(np.isfinite(p)):
            raise NotADistribution("entries must be finite")
        if p.min() < -NEG_DUST:
            raise NotADistribution(f"negative entry {p.min():.3g}")
        total = math.fsum(p)
        if abs(total - 1.0) > SUM_SLACK:
            raise NotADistribution(f"entries sum to {total!r}, not 1")
        p[p < TINY] = 0.0
        residual = 1.0 - math.fsum(p)
        if abs(residual) > EXACT_SLACK:
            p[int(np.argmax(p))] += residual
        np.clip(p, 0.0, 1.0, out=p)
        p.flags.writeable = False
        self._p = p
        # stable sort on the negated entries keeps ties in index order
        s = p[np.argsort(-p, kind="stable")]
        s.flags.writeable = False
        self._sorted = s

    @property
    def entries(self) -> np.ndarray:
        return self._p

    @property
    def n(self) -> int:
        return self._p.size

    def sorted_entries(self) -> np.ndarray:
        return self._sorted

    def __len__(self) -> int:
        return self._p.size

    def __iter__(self):
        return iter(self._p.tolist())

    def __getitem__(self, i):
        return self._p[i]

    def __array__(self, dtype=None, copy=None):
        return self._p.astype(dtype) if dtype is not None else self._p.copy()

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProbVec):
            return NotImplemented
        return self._p.shape == other._p.shape and bool(np.all(self._p == other._p))

    def __hash__(self) -> int:
        return hash(self._p.tobytes())

    def __repr__(self) -> str:
        return f"ProbVec(n={self.n}, {self._p.tolist()})"

    def tolist(self) -> list[float]:
        return self._p.tolist()

    def to_json(self) -> str:
        return json.dumps(self._p.tolist())

    def to_csv_row(self) -> str:
        return ",".join(repr(float(x)) for x in self._p)

    @classmethod
    def from_json(cls, text: str) -> "ProbVec":
        data = json.loads(text)
        if not isinstance(data, list):
            raise NotADistribution("expected a JSON array of numbers")
        return cls(data)

    @classmethod
    def from_csv_row(cls, text: str) -> "ProbVec":
        rows = [r for r in csv.reader(io.StringIO(text.strip())) if r]
        if len(rows) != 1:
            raise NotADistribution(f"expected one CSV row, got {len(rows)}")
        return cls(float(x) for x in rows[0])


def make_probvec(values: Sequence[float]) -> ProbVec:
    return ProbVec(values)


def parse_probvec(text: str) -> ProbVec:
    """Parse a JSON array (``[0.5, 0.5]``) or a single CSV row (``0.5,0.5``)."""
    text = text.strip()
    if text.startswith("["):
        return ProbVec.from_json(text)
    return ProbVec.from_csv_row(text)


def uniform(n: int) -> ProbVec:
    if n < 2:
        raise DimensionTooSmall(f"n must be >= 2, got {n}")
    return ProbVec(np.full(n, 1.0 / n))


def deterministic(n: int) -> ProbVec:
    if n < 2:
        raise DimensionTooSmall(f"n must be >= 2, got {n}")
    d = np.zeros(n)
    d[0] = 1.0
    return ProbVec(d)


def rearrange_decreasing(p: ProbVec) -> ProbVec:
    return ProbVec(p.sorted_entries())


@dataclass(frozen=True)
class Order:
    """Order of an entropy or norm: finite ``alpha`` (> 0, != 1), Shannon, or
    infinity. Build with :meth:`finite`, :data:`SHANNON`, :data:`INFINITY` or
    coerce user input with :meth:`of`."""

    kind: str
    alpha: float | None = None

    def __post_init__(self):
        if self.kind == "finite":
            a = self.alpha
            if a is None or not math.isfinite(a) or a <= 0:
                raise InvalidOrder(f"finite order must be a positive real, got {a!r}")
            if a == 1.0:
                raise InvalidOrder("order 1 is the Shannon case; use simplex.SHANNON")
        elif self.kind in ("shannon", "infinity"):
            if self.alpha is not None:
                raise InvalidOrder(f"{self.kind} order carries no alpha")
        else:
            raise InvalidOrder(f"unknown order kind {self.kind!r}")

    @classmethod
    def finite(cls, alpha: float) -> "Order":
        return cls("finite", float(alpha))

    @classmethod
    def of(cls, value) -> "Order":
        if isinstance(value, Order):
            return value
        if isinstance(value, str):
            v = value.strip().lower()
            if v in ("inf", "infinity", "+inf"):
                return INFINITY
            if v in ("shannon",):
                return SHANNON
            try:
                value = float(v)
            except ValueError:
                raise InvalidOrder(f"cannot parse order {value!r}") from None
        value = float(value)
        if value == 1.0:
            return SHANNON
        if math.isinf(value) and value > 0:
            return INFINITY
        return cls.finite(value)

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    @property
    def is_shannon(self) -> bool:
        return self.kind == "shannon"

    @property
    def is_infinity(self) -> bool:
        return self.kind == "infinity"

    @property
    def value(self) -> float:
        """Numeric order for kernels: alpha, 1.0 or ``inf``."""
        if self.kind == "finite":
            return self.alpha
        return 1.0 if self.kind == "shannon" else math.inf

    def __str__(self) -> str:
        if self.kind == "finite":
            return repr(self.alpha)
        return "1" if self.kind == "shannon" else "inf"


SHANNON = Order("shannon")
INFINITY = Order("infinity")


def _xlogx_terms(p: np.ndarray) -> list[float]:
    return [x * math.log(x) for x in p.tolist() if x > 0.0]


def shannon_entropy(p: ProbVec) -> float:
    """-sum p_i ln p_i with 0 ln 0 = 0. Exactly permutation invariant since
    the terms are summed with ``math.fsum``."""
    return max(0.0, -math.fsum(_xlogx_terms(p.sorted_entries())))


def alpha_norm(p: ProbVec, alpha) -> float:
    order = Order.of(alpha)
    s = p.sorted_entries()
    top = float(s[0])
    if order.is_shannon:
        return 1.0
    if order.is_infinity or order.alpha > LARGE_ALPHA:
        return top
    a = order.alpha
    # scaling by the max entry keeps large orders from underflowing
    return top * math.fsum((x / top) ** a for x in s.tolist() if x > 0.0) ** (1.0 / a)


def renyi_entropy(p: ProbVec, alpha) -> float:
    order = Order.of(alpha)
    if order.is_shannon:
        return shannon_entropy(p)
    if order.is_infinity:
        return -math.log(alpha_norm(p, order))
    a = order.alpha
    return a / (1.0 - a) * math.log(alpha_norm(p, order))


def norm_range(n: int, alpha) -> tuple[float, float]:
    """Range of the alpha-norm over n-ary distributions (deterministic and
    uniform endpoints)."""
    order = Order.of(alpha)
    if order.is_shannon:
        return 1.0, 1.0
    if order.is_infinity:
        return 1.0 / n, 1.0
    at_uniform = n ** (1.0 / order.alpha - 1.0)
    return min(1.0, at_uniform), max(1.0, at_uniform)


def sample_simplex_array(n: int, count: int, seed) -> np.ndarray:
    """``count`` rows drawn uniformly from the (n-1)-simplex by normalizing
    i.i.d. unit exponentials."""
    if n < 2:
        raise DimensionTooSmall(f"n must be >= 2, got {n}")
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    e = rng.standard_exponential((count, n))
    return e / e.sum(axis=1, keepdims=True)


def sample_simplex(n: int, count: int, seed) -> list[ProbVec]:
    return [ProbVec(row) for row in sample_simplex_array(n, count, seed)]
