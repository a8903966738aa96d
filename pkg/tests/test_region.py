import json
import math

import numpy as np
import pytest

from entropy_extremes.bounds import Measure, MeasureSpec
from entropy_extremes.errors import InvalidOrder, NoCurves, RhoOutOfRange
from entropy_extremes.region import (CSV_HEADER, RegionCurve, XAxis,
                                     boundary_curves, emit_csv, emit_json,
                                     load_csv)

NORM2 = MeasureSpec(Measure.ALPHA_NORM, 2)


def test_corners_n6():
    v, w = boundary_curves(6, NORM2)
    for c in (v, w):
        assert c.points[0] == pytest.approx((0.0, 1.0), abs=1e-9)
        assert c.points[-1] == pytest.approx((math.log(6), 6 ** -0.5), abs=1e-9)


def test_w_kinks_present_n6():
    _, w = boundary_curves(6, NORM2)
    pts = dict(w.points)
    for m in range(1, 7):
        x = math.log(m)
        assert x in pts
        assert pts[x] == pytest.approx(m ** -0.5, abs=1e-12)


def test_v_sampled_at_resolution():
    v, w = boundary_curves(4, NORM2, resolution=100)
    assert len(v.points) == 100
    assert np.allclose(np.diff(v.xs), math.log(4) / 99, atol=1e-12)
    # three brackets of 33 with shared ends dropped
    assert len(w.points) == 33 * 3 - 2


@pytest.mark.parametrize("n", [2, 3, 6])
@pytest.mark.parametrize("a", [0.5, 2.0, "inf"])
def test_x_strictly_increasing_and_spanning(n, a):
    for c in boundary_curves(n, MeasureSpec(Measure.ALPHA_NORM, a)):
        assert np.all(np.diff(c.xs) > 0)
        assert abs(c.xs[0]) <= 1e-9 and abs(c.xs[-1] - math.log(n)) <= 1e-9


def _v_minus_w(spec):
    v, w = boundary_curves(6, spec, resolution=256)
    x = np.linspace(0, math.log(6), 2000)[1:-1]
    return v.interpolate(x) - w.interpolate(x)


@pytest.mark.parametrize("a", [0.5, 2.0, 4.0])
def test_v_is_upper_edge_of_norm_plot(a):
    assert np.all(_v_minus_w(MeasureSpec(Measure.ALPHA_NORM, a)) > 0)


@pytest.mark.parametrize("name", [Measure.RENYI, Measure.TSALLIS, Measure.R_NORM])
@pytest.mark.parametrize("a,v_above", [(0.5, True), (2.0, False), (4.0, False)])
def test_edge_roles_swap_across_order_one(name, a, v_above):
    d = _v_minus_w(MeasureSpec(name, a))
    assert np.all(d > 0) if v_above else np.all(d < 0)


@pytest.mark.parametrize("a", [0.25, 0.5, 2.0, "inf"])
def test_binary_curves_coincide(a):
    v, w = boundary_curves(2, MeasureSpec(Measure.ALPHA_NORM, a))
    assert np.array_equal(v.xs, w.xs)
    assert np.max(np.abs(v.ys - w.ys)) <= 1e-12


@pytest.mark.parametrize("a", [0.5, 2.0])
def test_renyi_fixed_points(a):
    for c in boundary_curves(5, MeasureSpec(Measure.RENYI, a)):
        assert c.points[0][1] == pytest.approx(0.0, abs=1e-12)
        assert c.points[-1][1] == pytest.approx(math.log(5), abs=1e-12)


def test_divergence_axis_swaps_and_starts_at_zero():
    v, w = boundary_curves(4, MeasureSpec(Measure.RENYI, 2), XAxis.REL_ENTROPY_FROM_UNIFORM)
    assert v.points[0] == (0.0, 0.0)
    assert v.xs[-1] == pytest.approx(math.log(4), abs=1e-12)
    assert v.measure_label == "renyi-divergence"
    with pytest.raises(InvalidOrder):
        boundary_curves(4, NORM2, XAxis.REL_ENTROPY_FROM_UNIFORM)


def test_mutual_information_axis():
    v, w = boundary_curves(4, None, XAxis.MUTUAL_INFORMATION, rho=1.0)
    assert v.measure.order.value == 0.5 and v.measure_label == "gallager-e0"
    # noiseless corner: I = ln n, E0 = rho * ln n
    assert v.points[-1][1] == pytest.approx(math.log(4), abs=1e-12)
    for bad in (None, 0.0, -1.0):
        with pytest.raises(RhoOutOfRange):
            boundary_curves(4, None, XAxis.MUTUAL_INFORMATION, rho=bad)


def _tiny(label):
    return RegionCurve(label, ((0.0, 1.0), (0.5, 0.75), (1.0, 0.5)), 3, NORM2,
                       XAxis.SHANNON_ENTROPY)


def test_csv_rows(tmp_path):
    path = tmp_path / "c.csv"
    emit_csv([_tiny("V"), _tiny("W")], path)
    raw = path.read_bytes()
    assert b"\r" not in raw
    lines = raw.decode().splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert len(lines) == 7
    assert lines[1] == "V,0,1,3,alpha-norm,2.0"


def test_csv_empty(tmp_path):
    with pytest.raises(NoCurves):
        emit_csv([], tmp_path / "c.csv")


def test_csv_round_trip_bit_exact(tmp_path):
    curves = boundary_curves(6, MeasureSpec(Measure.TSALLIS, 0.5))
    emit_csv(curves, tmp_path / "c.csv")
    back = load_csv(tmp_path / "c.csv")
    for c in curves:
        assert back[c.label] == list(c.points)


def test_json_mirror(tmp_path):
    curves = boundary_curves(3, NORM2, resolution=16)
    emit_json(curves, tmp_path / "c.json")
    doc = json.loads((tmp_path / "c.json").read_text())
    assert [c["label"] for c in doc["curves"]] == ["V", "W"]
    assert [tuple(p) for p in doc["curves"][1]["points"]] == list(curves[1].points)


@pytest.mark.parametrize("a", [0.5, 2.0])
def test_lattice_inside_curves(a):
    from entropy_extremes import kernels

    from .conftest import simplex_grid_3
    P = simplex_grid_3(5e-3)
    H, N = kernels.entropy_rows(P), kernels.norm_rows(P, a)
    v, w = boundary_curves(3, MeasureSpec(Measure.ALPHA_NORM, a), resolution=8192)
    yv, yw = v.interpolate(H), w.interpolate(H)
    assert np.max(np.minimum(yv, yw) - N) <= 1e-6
    assert np.max(N - np.maximum(yv, yw)) <= 1e-6
