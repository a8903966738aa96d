"""Discrete memoryless channels: classification, Arimoto conditional Renyi
entropy, order-alpha mutual information and Gallager's E0 function.

A channel is a row-stochastic matrix ``P[x, y] = P(y | x)``. For a
uniformly focusing channel under a uniform input every posterior row is a
permutation of every other, so E0 collapses to a Renyi divergence from
uniform and inherits the v/w bracket.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bounds import BoundReport, renyi_divergence_from_uniform
from .errors import (DimensionMismatch, DimensionTooSmall, EntropyExtremesError,
                     InvalidOrder, NotADistribution, NotFocusing, RhoOutOfRange)
from .extremal import V, W, inverse_entropy, v_dist, w_dist
from .simplex import (Order, ProbVec, alpha_norm, renyi_entropy,
                      shannon_entropy, uniform)

CLASSIFY_TOL = 1e-9


class Channel:
    """Row-stochastic transition matrix; each row is validated like a
    :class:`ProbVec` and the error names the offending row."""

    __slots__ = ("_m",)

    def __init__(self, matrix):
        m = np.array(matrix, dtype=float)
        if m.ndim != 2:
            raise DimensionMismatch(f"channel matrix must be 2-D, got shape {m.shape}")
        if m.shape[0] < 2 or m.shape[1] < 2:
            raise DimensionTooSmall(f"need at least 2 inputs and 2 outputs, got {m.shape}")
        rows = []
        for i, row in enumerate(m):
            try:
                rows.append(ProbVec(row).entries)
            except EntropyExtremesError as exc:
                raise type(exc)(f"row {i}: {exc}") from None
        m = np.vstack(rows)
        m.flags.writeable = False
        self._m = m

    @property
    def matrix(self) -> np.ndarray:
        return self._m

    @property
    def input_size(self) -> int:
        return self._m.shape[0]

    @property
    def output_size(self) -> int:
        return self._m.shape[1]

    def __repr__(self) -> str:
        return f"Channel({self._m.tolist()})"

    def to_json(self) -> str:
        return json.dumps({"matrix": self._m.tolist()})

    @classmethod
    def from_json(cls, text: str) -> "Channel":
        data = json.loads(text)
        if isinstance(data, dict):
            if "matrix" not in data:
                raise NotADistribution('channel JSON needs a "matrix" key')
            data = data["matrix"]
        return cls(data)

    @classmethod
    def from_csv(cls, text: str) -> "Channel":
        rows = [[float(v) for v in r] for r in csv.reader(io.StringIO(text)) if r]
        return cls(rows)


def load_channel(path) -> Channel:
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".csv":
        return Channel.from_csv(text)
    if path.suffix.lower() == ".json" or text.lstrip().startswith(("{", "[")):
        return Channel.from_json(text)
    return Channel.from_csv(text)


def circulant_channel(row) -> Channel:
    """Square channel whose rows are the cyclic shifts of ``row``; strongly
    symmetric by construction."""
    r = np.asarray(row, dtype=float)
    return Channel(np.vstack([np.roll(r, i) for i in range(r.size)]))


def random_focusing_channel(n: int, rng: np.random.Generator) -> Channel:
    return circulant_channel(rng.dirichlet(np.ones(n)))


@dataclass(frozen=True)
class ChannelClass:
    dispersive: bool
    focusing: bool
    strongly_symmetric: bool

    def to_dict(self) -> dict:
        return {"dispersive": self.dispersive, "focusing": self.focusing,
                "strongly_symmetric": self.strongly_symmetric}


def _all_permutations_of_first(rows: np.ndarray, tol: float) -> bool:
    s = np.sort(rows, axis=1)
    return bool(np.all(np.abs(s - s[0]) <= tol))


def classify(ch: Channel, tol: float = CLASSIFY_TOL) -> ChannelClass:
    """Rows (columns) are permutations of one another iff their sorted
    versions agree entrywise."""
    dispersive = _all_permutations_of_first(ch.matrix, tol)
    focusing = _all_permutations_of_first(ch.matrix.T, tol)
    return ChannelClass(dispersive, focusing, dispersive and focusing)


@dataclass(frozen=True)
class JointState:
    """Input law, output marginal and Bayes posterior ``posterior[y, x]``.
    Rows of outputs with zero probability are zero and ``defined`` is False."""

    channel: Channel
    input: ProbVec
    output_marginal: ProbVec
    posterior: np.ndarray
    defined: np.ndarray

    def posterior_row(self, y: int) -> ProbVec:
        if not self.defined[y]:
            raise ValueError(f"output {y} has zero probability")
        return ProbVec(self.posterior[y])


def posterior_state(ch: Channel, input: ProbVec) -> JointState:
    if input.n != ch.input_size:
        raise DimensionMismatch(
            f"input has {input.n} symbols, channel expects {ch.input_size}")
    joint = input.entries[:, None] * ch.matrix
    py = joint.sum(axis=0)
    defined = py > 0
    post = np.zeros((ch.output_size, ch.input_size))
    post[defined] = (joint[:, defined] / py[defined]).T
    post.flags.writeable = False
    defined.flags.writeable = False
    return JointState(ch, input, ProbVec(py), post, defined)


def conditional_entropy(state: JointState, alpha) -> float:
    """Shannon: ``E_y H(P(.|y))``. Finite order: Arimoto's
    ``a/(1-a) ln E_y ||P(.|y)||_a``."""
    order = Order.of(alpha)
    if order.is_infinity:
        raise InvalidOrder("conditional entropy is implemented for finite and Shannon orders")
    py = state.output_marginal.entries
    ys = np.flatnonzero(state.defined)
    rows = [ProbVec(state.posterior[y]) for y in ys]
    if order.is_shannon:
        return math.fsum(py[y] * shannon_entropy(r) for y, r in zip(ys, rows))
    a = order.alpha
    mean_norm = math.fsum(py[y] * alpha_norm(r, order) for y, r in zip(ys, rows))
    return a / (1.0 - a) * math.log(mean_norm)


def mutual_information_alpha(state: JointState, alpha) -> float:
    """``I_a(X;Y) = H_a(X) - H_a(X|Y)``."""
    return renyi_entropy(state.input, alpha) - conditional_entropy(state, alpha)


def gallager_e0(ch: Channel, input: ProbVec, rho: float) -> float:
    if not rho > -1.0:
        raise RhoOutOfRange(f"rho must exceed -1, got {rho!r}")
    if input.n != ch.input_size:
        raise DimensionMismatch(
            f"input has {input.n} symbols, channel expects {ch.input_size}")
    s = 1.0 / (1.0 + rho)
    inner = input.entries @ (ch.matrix ** s)
    return -math.log(math.fsum(inner ** (1.0 + rho)))


def e0_bounds(ch: Channel, rho: float) -> BoundReport:
    """Bracket on E0 under a uniform input among uniformly focusing channels
    with the same conditional entropy H(X|Y)."""
    if not rho > -1.0:
        raise RhoOutOfRange(f"rho must exceed -1, got {rho!r}")
    if not classify(ch).focusing:
        raise NotFocusing("E0 bounds need a uniformly focusing channel")
    n = ch.input_size
    u = uniform(n)
    hc = conditional_entropy(posterior_state(ch, u), Order.of(1))
    hc = min(max(hc, 0.0), math.log(n))
    v_hat = v_dist(n, inverse_entropy(V(n), hc))
    w_hat = w_dist(n, inverse_entropy(W(n), hc))
    value = gallager_e0(ch, u, rho)
    if rho == 0.0:
        return BoundReport("gallager-e0", value, 0.0, 0.0, v_hat, w_hat)
    order = Order.of(1.0 / (1.0 + rho))
    lower = rho * renyi_divergence_from_uniform(v_hat, order)
    upper = rho * renyi_divergence_from_uniform(w_hat, order)
    return BoundReport("gallager-e0", value, lower, upper, v_hat, w_hat)
