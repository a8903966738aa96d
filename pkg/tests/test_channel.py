import json
import math

import mpmath as mp
import numpy as np
import pytest

from entropy_extremes.channel import (Channel, circulant_channel, classify,
                                      conditional_entropy, e0_bounds,
                                      gallager_e0, load_channel,
                                      mutual_information_alpha,
                                      posterior_state, random_focusing_channel)
from entropy_extremes.errors import (DimensionMismatch, DimensionTooSmall,
                                     InvalidOrder, NotADistribution,
                                     NotFocusing, RhoOutOfRange)
from entropy_extremes.extremal import v_dist, w_dist
from entropy_extremes.simplex import ProbVec, deterministic, renyi_entropy, uniform

mp.mp.dps = 50
BSC = Channel([[0.9, 0.1], [0.1, 0.9]])
CYC = circulant_channel([0.7, 0.2, 0.1])


class TestChannel:
    def test_rejects_bad_row_by_index(self):
        with pytest.raises(NotADistribution, match="row 1"):
            Channel([[0.5, 0.5], [0.7, 0.7]])

    def test_rejects_small(self):
        with pytest.raises(DimensionTooSmall):
            Channel([[1.0], [1.0]])
        with pytest.raises(DimensionTooSmall):
            Channel([[0.5, 0.5]])

    def test_rejects_non_matrix(self):
        with pytest.raises(DimensionMismatch):
            Channel([0.5, 0.5])

    def test_loaders(self, tmp_path):
        j = tmp_path / "c.json"
        j.write_text(json.dumps({"matrix": [[0.9, 0.1], [0.2, 0.8]]}))
        c = tmp_path / "c.csv"
        c.write_text("0.9,0.1\n0.2,0.8\n")
        assert np.array_equal(load_channel(j).matrix, load_channel(c).matrix)
        assert np.array_equal(Channel.from_json(load_channel(j).to_json()).matrix,
                              load_channel(j).matrix)

    def test_json_needs_matrix_key(self):
        with pytest.raises(NotADistribution):
            Channel.from_json('{"rows": []}')


class TestClassify:
    def test_bsc(self):
        c = classify(BSC)
        assert c.dispersive and c.focusing and c.strongly_symmetric

    def test_asymmetric(self):
        c = classify(Channel([[0.5, 0.5], [1.0, 0.0]]))
        assert not c.dispersive and not c.focusing and not c.strongly_symmetric

    def test_cyclic_with_permuted_columns(self):
        c = classify(Channel(CYC.matrix[:, [2, 0, 1]]))
        assert c.strongly_symmetric

    def test_dispersive_only(self):
        c = classify(Channel([[0.6, 0.3, 0.1], [0.3, 0.6, 0.1]]))
        assert c.dispersive and not c.focusing

    def test_permutation_invariant(self, rng):
        for _ in range(50):
            m = rng.dirichlet(np.ones(4), 3)
            if rng.random() < 0.5:
                m = circulant_channel(rng.dirichlet(np.ones(4))).matrix
            ch = Channel(m)
            perm = Channel(m[rng.permutation(m.shape[0])][:, rng.permutation(m.shape[1])])
            assert classify(perm) == classify(ch)


class TestPosterior:
    def test_bsc_rows(self):
        st = posterior_state(BSC, uniform(2))
        assert np.allclose(st.posterior, [[0.9, 0.1], [0.1, 0.9]], atol=1e-15)

    def test_deterministic_input(self):
        st = posterior_state(CYC, deterministic(3))
        for y in range(3):
            assert st.posterior_row(y).tolist() == [1.0, 0.0, 0.0]

    def test_cyclic_rows_are_permutations(self):
        st = posterior_state(CYC, uniform(3))
        for y in range(3):
            assert np.allclose(np.sort(st.posterior[y])[::-1], [0.7, 0.2, 0.1], atol=1e-15)

    def test_zero_marginal_flagged(self):
        ch = Channel([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
        st = posterior_state(ch, uniform(2))
        assert st.defined.tolist() == [True, True, False]
        with pytest.raises(ValueError):
            st.posterior_row(2)
        assert conditional_entropy(st, 1) == 0.0

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            posterior_state(BSC, uniform(3))


class TestEntropies:
    def test_bsc_shannon(self):
        expected = -(mp.mpf("0.1") * mp.log(mp.mpf("0.1")) + mp.mpf("0.9") * mp.log(mp.mpf("0.9")))
        st = posterior_state(BSC, uniform(2))
        assert conditional_entropy(st, 1) == pytest.approx(float(expected), abs=1e-15)
        assert float(expected) == pytest.approx(0.325083, abs=1e-6)

    @pytest.mark.parametrize("a", [0.5, 1, 2.0])
    def test_noiseless(self, a):
        st = posterior_state(Channel(np.eye(4)), uniform(4))
        assert conditional_entropy(st, a) == pytest.approx(0.0, abs=1e-15)

    def test_useless_channel(self):
        st = posterior_state(Channel(np.full((3, 4), 0.25)), uniform(3))
        assert conditional_entropy(st, 2) == pytest.approx(math.log(3), abs=1e-15)
        assert mutual_information_alpha(st, 0.5) == pytest.approx(0.0, abs=1e-15)

    def test_infinity_unsupported(self):
        with pytest.raises(InvalidOrder):
            conditional_entropy(posterior_state(BSC, uniform(2)), "inf")

    def test_noiseless_mutual_information(self):
        st = posterior_state(Channel(np.eye(5)), uniform(5))
        assert mutual_information_alpha(st, 1) == pytest.approx(math.log(5), abs=1e-15)

    def test_cyclic_mutual_information(self):
        st = posterior_state(CYC, uniform(3))
        expected = math.log(3) - renyi_entropy(ProbVec([0.7, 0.2, 0.1]), 2)
        assert mutual_information_alpha(st, 2) == pytest.approx(expected, abs=1e-15)

    @pytest.mark.parametrize("a", [0.5, 1, 2.0])
    def test_collapse_on_focusing_channels(self, a, rng):
        for _ in range(100):
            n = int(rng.integers(3, 7))
            ch = random_focusing_channel(n, rng)
            st = posterior_state(ch, uniform(n))
            assert np.max(np.abs(st.output_marginal.entries - 1 / n)) <= 1e-12
            hc = conditional_entropy(st, a)
            for y in range(n):
                assert abs(hc - renyi_entropy(st.posterior_row(y), a)) <= 1e-12


class TestGallager:
    def test_zero_rho(self):
        assert gallager_e0(CYC, ProbVec([0.2, 0.3, 0.5]), 0.0) == pytest.approx(0.0, abs=1e-15)

    def test_noiseless_cutoff(self):
        assert gallager_e0(Channel(np.eye(4)), uniform(4), 1.0) == pytest.approx(math.log(4), abs=1e-15)

    def test_bsc_cutoff_rate(self):
        expected = -mp.log((mp.mpf(1) / 2 * (mp.sqrt(mp.mpf("0.9")) + mp.sqrt(mp.mpf("0.1")))) ** 2 * 2)
        assert gallager_e0(BSC, uniform(2), 1.0) == pytest.approx(float(expected), abs=1e-15)

    def test_rho_range(self):
        with pytest.raises(RhoOutOfRange):
            gallager_e0(BSC, uniform(2), -1.0)
        with pytest.raises(RhoOutOfRange):
            e0_bounds(BSC, -1.5)

    def test_zero_entries(self):
        ch = Channel([[1.0, 0.0], [0.5, 0.5]])
        assert math.isfinite(gallager_e0(ch, uniform(2), 1.0))

    @pytest.mark.parametrize("rho", [-0.5, 0.25, 1.0, 4.0])
    def test_tilted_identity(self, rho, rng):
        for _ in range(50):
            n = int(rng.integers(3, 7))
            ch = random_focusing_channel(n, rng)
            st = posterior_state(ch, uniform(n))
            e0 = gallager_e0(ch, uniform(n), rho)
            assert abs(e0 / rho - mutual_information_alpha(st, 1 / (1 + rho))) <= 1e-10


class TestE0Bounds:
    def test_zero_rho(self):
        r = e0_bounds(CYC, 0.0)
        assert r.lower == r.value == r.upper == 0.0

    def test_not_focusing(self):
        with pytest.raises(NotFocusing):
            e0_bounds(Channel([[0.6, 0.3, 0.1], [0.3, 0.6, 0.1]]), 1.0)

    @pytest.mark.parametrize("rho", [-0.9, -0.5, 0.5, 1.0, 2.0, 8.0])
    def test_sandwich(self, rho, rng):
        for _ in range(100):
            ch = random_focusing_channel(int(rng.integers(3, 7)), rng)
            assert e0_bounds(ch, rho).holds(1e-9)

    @pytest.mark.parametrize("n", [3, 4, 6])
    @pytest.mark.parametrize("rho", [-0.9, -0.5, 0.5, 1.0, 2.0, 8.0])
    def test_attainment(self, n, rho):
        for p in (0.02, 0.1, 0.9 / n):
            r = e0_bounds(circulant_channel(v_dist(n, p).entries), rho)
            assert abs(r.value - r.lower) <= 1e-9
        for p in (1 / n + 0.01, 0.45, 0.8):
            r = e0_bounds(circulant_channel(w_dist(n, p).entries), rho)
            assert abs(r.value - r.upper) <= 1e-9
