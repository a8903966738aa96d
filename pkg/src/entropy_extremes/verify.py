"""Monte-Carlo and grid verification of every invariant the library relies on.

Samples are split into fixed-size shards. Shard ``i`` draws from
``numpy.random.default_rng([seed, i])`` and returns plain counts, so the
totals do not depend on the number of worker threads or on completion
order. Grid checks are deterministic and run once.
"""
from __future__ import annotations

import json
import math
import os
from collections import OrderedDict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from .bounds import (Measure, MeasureSpec, entropy_bounds_batch,
                     extremal_params_batch, norm_bounds_batch)
from .channel import (classify, conditional_entropy, e0_bounds, gallager_e0,
                      mutual_information_alpha, posterior_state,
                      random_focusing_channel, Channel)
from .errors import DimensionTooSmall
from .extremal import v_dist, w_dist
from .simplex import ProbVec, renyi_entropy, sample_simplex_array, uniform

SHARD_SIZE = 10_000
SAMPLES_PER_CHANNEL = 100
THREADS_ENV = "ENTROPY_EXTREMES_THREADS"

NORM_ORDERS = (0.25, 0.5, 2.0, 4.0, math.inf)
ENTROPY_ORDERS = (0.25, 0.5, 2.0, 4.0)
TABLE_MEASURES = (Measure.RENYI, Measure.TSALLIS, Measure.TYPE_BETA,
                  Measure.GAMMA, Measure.R_NORM)
TABLE_ORDERS = (0.5, 2.0)
COLLAPSE_ORDERS = (0.5, 1.0, 2.0)
IDENTITY_RHOS = (-0.5, 0.25, 1.0, 4.0)
SANDWICH_RHOS = (-0.9, -0.5, 0.5, 1.0, 2.0, 8.0)
GRID_POINTS = 10_000


class Tally:
    """Ordered ``name -> [checked, violations]`` accumulator."""

    def __init__(self):
        self.counts: OrderedDict[str, list[int]] = OrderedDict()

    def add(self, name: str, ok) -> None:
        ok = np.asarray(ok, dtype=bool)
        c = self.counts.setdefault(name, [0, 0])
        c[0] += int(ok.size)
        c[1] += int(ok.size - np.count_nonzero(ok))

    def merge(self, other: "Tally") -> None:
        for name, (checked, bad) in other.counts.items():
            c = self.counts.setdefault(name, [0, 0])
            c[0] += checked
            c[1] += bad


@dataclass(frozen=True)
class VerifyReport:
    n: int
    samples: int
    seed: int
    tolerance: float
    families: tuple  # of (name, checked, violations)

    @property
    def violations(self) -> int:
        return sum(v for _, _, v in self.families)

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def counts(self) -> dict[str, tuple[int, int]]:
        return {name: (c, v) for name, c, v in self.families}

    def to_text(self) -> str:
        width = max(len(name) for name, _, _ in self.families)
        lines = [f"{name:<{width}}  checked={c:<9d} violations={v}"
                 for name, c, v in self.families]
        verdict = "PASS" if self.ok else "FAIL"
        lines.append(f"{verdict}: n={self.n} samples={self.samples} seed={self.seed} "
                     f"total_violations={self.violations}")
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps({
            "n": self.n, "samples": self.samples, "seed": self.seed,
            "tolerance": self.tolerance, "ok": self.ok,
            "total_violations": self.violations,
            "families": [{"name": name, "checked": c, "violations": v}
                         for name, c, v in self.families],
        })


def _alpha_log_np(a, x):
    return np.where(a == 1.0, np.log(x), np.expm1((1.0 - a) * np.log(x)) / (1.0 - a))


def _ratio_gap_np(a, b, x, y):
    return _alpha_log_np(b, x) / _alpha_log_np(b, y) - _alpha_log_np(a, x) / _alpha_log_np(a, y)


def _sample_checks(n: int, P: np.ndarray, rng: np.random.Generator,
                   tol: float, t: Tally) -> None:
    m = P.shape[0]
    ln_n = math.log(n)
    H = kernels.entropy_rows(P)

    # simplex
    t.add("simplex.entropy_range", (H >= 0.0) & (H <= ln_n + 1e-12))
    perm = P[:, rng.permutation(n)]
    t.add("simplex.permutation_invariance", kernels.entropy_rows(perm) == H)
    norms = {}
    for a in NORM_ORDERS:
        N = kernels.norm_rows(P, a)
        norms[a] = N
        if math.isinf(a):
            lo, hi = 1.0 / n, 1.0
        else:
            lo, hi = sorted((1.0, n ** (1.0 / a - 1.0)))
        slack = 1e-12 * max(1.0, hi)
        t.add("simplex.norm_range", (N >= lo - slack) & (N <= hi + slack))
        t.add("simplex.permutation_invariance", kernels.norm_rows(perm, a) == N)
    t.add("simplex.large_order_limit",
          np.abs(kernels.norm_rows(P, 64.0) - norms[math.inf]) <= 0.1)

    # norm sandwich at fixed entropy
    params = extremal_params_batch(n, H)
    for a in NORM_ORDERS:
        lo, hi = norm_bounds_batch(n, H, a, params)
        N = norms[a]
        t.add("bounds.norm_sandwich", (lo - tol <= N) & (N <= hi + tol))

    # entropy sandwich at fixed norm, with the direction flip
    for a in ENTROPY_ORDERS:
        lo, hi = entropy_bounds_batch(n, norms[a], a)
        t.add("bounds.entropy_sandwich", (lo - tol <= H) & (H <= hi + tol))

    # derived measures and Renyi divergence, through the norm bounds
    for name in TABLE_MEASURES:
        for order in TABLE_ORDERS:
            spec = MeasureSpec(name, order)
            a = spec.norm_order.value
            lo_n, hi_n = norm_bounds_batch(n, H, a, params)
            val = spec.transform(kernels.norm_rows(P, a))
            f_lo, f_hi = spec.transform(lo_n), spec.transform(hi_n)
            lo, hi = (f_lo, f_hi) if spec.increasing else (f_hi, f_lo)
            t.add("bounds.measure_sandwich", (lo - tol <= val) & (val <= hi + tol))
    for a in TABLE_ORDERS:
        spec = MeasureSpec(Measure.RENYI, a)
        lo_n, hi_n = norm_bounds_batch(n, H, a, params)
        d = np.maximum(0.0, ln_n - spec.transform(norms[a]))
        r_lo, r_hi = spec.transform(lo_n), spec.transform(hi_n)
        d_lo = np.maximum(0.0, ln_n - np.maximum(r_lo, r_hi))
        d_hi = np.maximum(0.0, ln_n - np.minimum(r_lo, r_hi))
        t.add("bounds.divergence_sandwich", (d_lo - tol <= d) & (d <= d_hi + tol))

    # tightness: family members attain their own bound
    k = max(m // 10, 1)
    pv = rng.uniform(0.0, 1.0 / n, k)
    pw = rng.uniform(1.0 / n, 1.0, k)
    hv = kernels.h_v(n, pv)
    hw = kernels.h_w(n, pw)
    params_v = extremal_params_batch(n, hv)
    params_w = extremal_params_batch(n, hw)
    q = rng.uniform(0.0, 1.0, k)
    h2 = kernels.entropy_rows(np.stack([q, 1.0 - q], axis=1))
    params_2 = extremal_params_batch(2, h2)
    for a in NORM_ORDERS:
        _, up = norm_bounds_batch(n, hv, a, params_v)
        t.add("bounds.tightness", np.abs(up - kernels.norm_v(n, pv, a)) <= tol)
        low, _ = norm_bounds_batch(n, hw, a, params_w)
        t.add("bounds.tightness", np.abs(low - kernels.norm_w(n, pw, a)) <= tol)

    # n = 2 collapse on an independent batch of binary distributions
    for a in NORM_ORDERS:
        lo, hi = norm_bounds_batch(2, h2, a, params_2)
        t.add("bounds.binary_collapse", np.abs(hi - lo) <= 1e-12)

    # ratio gap of alpha-logarithms
    ab = np.sort(rng.uniform(0.05, 5.0, (m, 2)), axis=1)
    a_, b_ = ab[:, 0], ab[:, 1]
    y = 1.0 + rng.exponential(2.0, m) + 1e-6
    x = 1.0 + rng.uniform(0.0, 1.0, m) * (y - 1.0)
    keep = a_ < b_
    t.add("bounds.ratio_gap_nonnegative",
          _ratio_gap_np(a_[keep], b_[keep], x[keep], y[keep]) >= -1e-12)
    t.add("bounds.ratio_gap_equality",
          np.abs(_ratio_gap_np(a_[keep], b_[keep], np.ones(keep.sum()), y[keep])) <= 1e-12)
    t.add("bounds.ratio_gap_equality",
          np.abs(_ratio_gap_np(a_[keep], b_[keep], y[keep], y[keep])) <= 1e-12)

    # each transform is monotone in the stated direction
    x12 = np.sort(rng.uniform(0.01, 3.0, (k, 2)), axis=1)
    x12 = x12[x12[:, 0] < x12[:, 1]]
    for name in TABLE_MEASURES:
        for order in TABLE_ORDERS:
            spec = MeasureSpec(name, order)
            diff = spec.transform(x12[:, 1]) - spec.transform(x12[:, 0])
            t.add("bounds.transform_direction", diff > 0 if spec.increasing else diff < 0)


def _channel_checks(n: int, count: int, rng: np.random.Generator,
                    tol: float, t: Tally) -> None:
    u = uniform(n)
    for _ in range(count):
        ch = random_focusing_channel(n, rng)
        st = posterior_state(ch, u)
        t.add("channel.uniform_output", np.abs(st.output_marginal.entries - 1.0 / n) <= 1e-12)
        rows = [ProbVec(st.posterior[y]) for y in range(ch.output_size) if st.defined[y]]
        for a in COLLAPSE_ORDERS:
            hc = conditional_entropy(st, a)
            t.add("channel.conditional_collapse",
                  [abs(hc - renyi_entropy(r, a)) <= 1e-12 for r in rows])
        for rho in IDENTITY_RHOS:
            e0 = gallager_e0(ch, u, rho)
            ia = mutual_information_alpha(st, 1.0 / (1.0 + rho))
            t.add("channel.e0_identity", abs(e0 / rho - ia) <= 1e-10)
        for rho in SANDWICH_RHOS:
            t.add("channel.e0_sandwich", e0_bounds(ch, rho).holds(tol))
        perm = ch.matrix[rng.permutation(n)][:, rng.permutation(ch.output_size)]
        t.add("channel.classify_permutation", classify(Channel(perm)) == classify(ch))


def _grid_checks(n: int, t: Tally) -> None:
    ln_n = math.log(n)
    gv = np.linspace(0.0, 1.0 / n, GRID_POINTS)
    gw = np.linspace(1.0 / n, 1.0, GRID_POINTS)
    hv = kernels.h_v(n, gv)
    hw = kernels.h_w(n, gw)
    t.add("extremal.v_entropy_increasing", np.diff(hv) > 0)
    t.add("extremal.w_entropy_decreasing", np.diff(hw) < 0)
    for a in ENTROPY_ORDERS:
        nv = kernels.norm_v(n, gv, a)
        nw = kernels.norm_w(n, gw, a)
        sign = 1.0 if a < 1.0 else -1.0
        # orient both curves by increasing entropy
        t.add("extremal.v_norm_monotone_in_entropy", sign * np.diff(nv) > 0)
        t.add("extremal.w_norm_monotone_in_entropy", sign * np.diff(nw[::-1]) > 0)
        t.add("extremal.norm_round_trip",
              np.abs(kernels.inv_norm_v(n, nv, a) - gv) <= 1e-10)
        t.add("extremal.norm_round_trip",
              np.abs(kernels.inv_norm_w(n, nw, a) - gw) <= 1e-10)
    t.add("extremal.entropy_round_trip", np.abs(kernels.inv_h_v(n, hv) - gv) <= 1e-10)
    t.add("extremal.entropy_round_trip", np.abs(kernels.inv_h_w(n, hw) - gw) <= 1e-10)
    t.add("extremal.entropy_range", (hv >= 0) & (hv <= ln_n + 1e-12))

    m = np.arange(2, n + 1, dtype=float)
    t.add("extremal.breakpoints", np.abs(kernels.h_w(n, 1.0 / m) - np.log(m)) <= 1e-12)
    t.add("extremal.breakpoints", np.abs(kernels.inv_h_w(n, np.log(m)) - 1.0 / m) <= 1e-12)
    # the steep side moves by about m*d*(1 - ln(m*m*d)), which passes 1e-7 from m = 6
    d = 1e-9
    modulus = np.maximum(1e-7, 1.01 * m * d * (1.0 - np.log(m * m * d)))
    for q in (1.0 / m - d, 1.0 / m + d):
        q = np.clip(q, 1.0 / n, 1.0)
        t.add("extremal.breakpoint_continuity", np.abs(kernels.h_w(n, q) - np.log(m)) <= modulus)

    if n >= 3:
        ps = np.linspace(1.0 / n, 1.0 / (n - 1), 101)
        for p in ps:
            a = np.sort(v_dist(n, p).entries)[::-1]
            b = np.sort(w_dist(n, p).entries)[::-1]
            t.add("extremal.v_rearranged_is_w", np.all(np.abs(a - b) <= 1e-15))


def _shard_sizes(samples: int) -> list[int]:
    full, rest = divmod(samples, SHARD_SIZE)
    return [SHARD_SIZE] * full + ([rest] if rest else [])


def _run_shard(n: int, size: int, seed: int, index: int, tol: float) -> Tally:
    rng = np.random.default_rng([seed, index])
    t = Tally()
    P = sample_simplex_array(n, size, rng)
    _sample_checks(n, P, rng, tol, t)
    _channel_checks(n, max(size // SAMPLES_PER_CHANNEL, 1), rng, tol, t)
    return t


def default_threads() -> int:
    cap = os.environ.get(THREADS_ENV, "").strip()
    cpus = os.cpu_count() or 1
    if cap:
        try:
            return max(1, min(cpus, int(cap)))
        except ValueError:
            pass
    return cpus


def run_verification(n: int, samples: int = 100_000, seed: int = 42,
                     threads: int | None = None, tolerance: float = 1e-9) -> VerifyReport:
    if n < 2:
        raise DimensionTooSmall(f"n must be >= 2, got {n}")
    if samples < 1:
        raise ValueError(f"samples must be positive, got {samples}")
    workers = threads if threads is not None else default_threads()
    sizes = _shard_sizes(samples)

    total = Tally()
    _grid_checks(n, total)
    jobs = [(n, size, seed, i, tolerance) for i, size in enumerate(sizes)]
    if workers <= 1 or len(jobs) == 1:
        parts = [_run_shard(*j) for j in jobs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda j: _run_shard(*j), jobs))
    for part in parts:
        total.merge(part)
    fams = tuple((name, c, v) for name, (c, v) in total.counts.items())
    return VerifyReport(n, samples, seed, tolerance, fams)
