"""Boundary polylines of the feasible (entropy, measure) region.

The ``v`` and ``w`` families trace the two edges of the set
``{(H(p), f(||p||_a)) : p in P_n}``. Curves are sampled evenly in Shannon
entropy; the kinks of the ``w`` edge at ``H = ln m`` are always included.
Linear interpolation between consecutive points is the intended reading.

Three horizontal axes are offered:

* ``shannon-entropy``: ``x = H(p)``, ``y = f(||p||_a)``.
* ``rel-entropy-from-uniform``: ``x = D(p || u) = ln n - H(p)`` and
  ``y = D_a(p || u)``; the measure must be Renyi.
* ``mutual-information``: for uniformly focusing channels under a uniform
  input, ``x = I(X;Y) = ln n - H(X|Y)`` and ``y`` is the E0 value of the
  extremal posterior, ``rho * D_{1/(1+rho)}``.
"""
from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np

from . import kernels
from .bounds import Measure, MeasureSpec, measure_value
from .errors import (DimensionTooSmall, EntropyExtremesError, InvalidOrder,
                     NoCurves, RhoOutOfRange)
from .extremal import v_dist, w_dist
from .simplex import Order, renyi_entropy

CSV_HEADER = ["label", "x", "y", "n", "measure", "order"]


class XAxis(str, Enum):
    SHANNON_ENTROPY = "shannon-entropy"
    REL_ENTROPY_FROM_UNIFORM = "rel-entropy-from-uniform"
    MUTUAL_INFORMATION = "mutual-information"


@dataclass(frozen=True)
class RegionCurve:
    label: str
    points: tuple
    n: int
    measure: MeasureSpec
    x_axis: XAxis
    rho: float | None = None

    @property
    def xs(self) -> np.ndarray:
        return np.array([x for x, _ in self.points])

    @property
    def ys(self) -> np.ndarray:
        return np.array([y for _, y in self.points])

    @property
    def measure_label(self) -> str:
        if self.x_axis is XAxis.MUTUAL_INFORMATION:
            return "gallager-e0"
        if self.x_axis is XAxis.REL_ENTROPY_FROM_UNIFORM:
            return "renyi-divergence"
        return self.measure.name.value

    def interpolate(self, x) -> np.ndarray:
        return np.interp(x, self.xs, self.ys)

    def to_dict(self) -> dict:
        d = {"label": self.label, "n": self.n, "measure": self.measure_label,
             "order": str(self.measure.order), "x_axis": self.x_axis.value,
             "points": [[x, y] for x, y in self.points]}
        if self.rho is not None:
            d["rho"] = self.rho
        return d


def _v_params(n: int, resolution: int) -> tuple[np.ndarray, np.ndarray]:
    h = np.linspace(0.0, math.log(n), resolution)
    p = kernels.inv_h_v(n, h)
    p[0], p[-1] = 0.0, 1.0 / n
    return h, p


def _w_params(n: int, resolution: int) -> tuple[np.ndarray, np.ndarray]:
    per = max(resolution // (n - 1), 2)
    hs, ps = [], []
    for m in range(1, n):
        h = np.linspace(math.log(m), math.log(m + 1), per)
        p = kernels.inv_h_w(n, h)
        # bracket ends are the exact kinks w(1/m), w(1/(m+1))
        h[0], h[-1] = math.log(m), math.log(m + 1)
        p[0], p[-1] = 1.0 / m, 1.0 / (m + 1)
        if m > 1:
            h, p = h[1:], p[1:]
        hs.append(h)
        ps.append(p)
    return np.concatenate(hs), np.concatenate(ps)


def _y_values(dists, n: int, spec: MeasureSpec, x_axis: XAxis, rho):
    if x_axis is XAxis.SHANNON_ENTROPY:
        return [measure_value(d, spec) for d in dists]
    ln_n = math.log(n)
    ys = [max(0.0, ln_n - renyi_entropy(d, spec.order)) for d in dists]
    if x_axis is XAxis.MUTUAL_INFORMATION:
        ys = [rho * y for y in ys]
    return ys


def _assemble(label, h, dists, n, spec, x_axis, rho) -> RegionCurve:
    ys = _y_values(dists, n, spec, x_axis, rho)
    xs = list(h) if x_axis is XAxis.SHANNON_ENTROPY else [math.log(n) - v for v in h]
    pairs = sorted(zip(xs, ys))
    pts = []
    for x, y in pairs:
        x = max(float(x), 0.0)
        if pts and x <= pts[-1][0]:
            continue
        pts.append((x, float(y)))
    return RegionCurve(label, tuple(pts), n, spec, x_axis, rho)


def boundary_curves(n: int, measure, x_axis=XAxis.SHANNON_ENTROPY,
                    resolution: int = 512, rho: float | None = None
                    ) -> tuple[RegionCurve, RegionCurve]:
    """Return the (V, W) edge curves.

    ``measure`` is a :class:`MeasureSpec`. On the mutual-information axis it
    may be None and is replaced by Renyi of order ``1/(1+rho)``.
    """
    if n < 2:
        raise DimensionTooSmall(f"n must be >= 2, got {n}")
    if resolution < 2:
        raise EntropyExtremesError(f"resolution must be >= 2, got {resolution}")
    x_axis = XAxis(x_axis)
    if x_axis is XAxis.MUTUAL_INFORMATION:
        if rho is None or not rho > -1.0 or rho == 0.0:
            raise RhoOutOfRange(f"mutual-information axis needs rho > -1, rho != 0; got {rho!r}")
        measure = MeasureSpec(Measure.RENYI, Order.finite(1.0 / (1.0 + rho)))
    elif x_axis is XAxis.REL_ENTROPY_FROM_UNIFORM:
        if measure.name is not Measure.RENYI:
            raise InvalidOrder("the divergence axis pairs with the renyi measure only")
        rho = None
    else:
        rho = None

    hv, pv = _v_params(n, resolution)
    hw, pw = _w_params(n, resolution)
    v_curve = _assemble("V", hv, [v_dist(n, p) for p in pv], n, measure, x_axis, rho)
    w_curve = _assemble("W", hw, [w_dist(n, p) for p in pw], n, measure, x_axis, rho)
    return v_curve, w_curve


def _check_nonempty(curves) -> list:
    curves = list(curves)
    if not curves:
        raise NoCurves("no curves to write")
    return curves


def emit_csv(curves, path) -> None:
    curves = _check_nonempty(curves)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for c in curves:
            order = str(c.measure.order)
            for x, y in c.points:
                w.writerow([c.label, f"{x:.17g}", f"{y:.17g}", c.n, c.measure_label, order])


def emit_json(curves, path) -> None:
    curves = _check_nonempty(curves)
    doc = {"curves": [c.to_dict() for c in curves]}
    Path(path).write_text(json.dumps(doc) + "\n", encoding="utf-8")


def load_csv(path) -> dict[str, list[tuple[float, float]]]:
    """Read an emitted CSV back as ``{label: [(x, y), ...]}``."""
    out: dict[str, list[tuple[float, float]]] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            out.setdefault(row["label"], []).append((float(row["x"]), float(row["y"])))
    return out
