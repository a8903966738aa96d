"""Tight bounds between Shannon entropy and alpha-norms of probability vectors."""
from .bounds import (BoundReport, Measure, MeasureSpec, alpha_log,
                     alpha_log_ratio_gap, entropy_bounds_at_norm,
                     measure_bounds_at_entropy, measure_value,
                     norm_bounds_at_entropy, renyi_divergence_bounds,
                     renyi_divergence_from_uniform)
from .channel import (Channel, JointState, circulant_channel, classify,
                      conditional_entropy, e0_bounds, gallager_e0,
                      load_channel, mutual_information_alpha, posterior_state,
                      random_focusing_channel)
from .errors import *  # noqa: F401,F403
from .extremal import (ExtremalFamily, ExtremalProfile, Family, V, W,
                       entropy_profile, family_dist, inverse_entropy,
                       inverse_norm, norm_profile, v_dist, w_dist)
from .kernels import BACKEND
from .region import (RegionCurve, XAxis, boundary_curves, emit_csv, emit_json,
                     load_csv)
from .simplex import (INFINITY, SHANNON, Order, ProbVec, alpha_norm,
                      deterministic, make_probvec, parse_probvec,
                      rearrange_decreasing, renyi_entropy, sample_simplex,
                      shannon_entropy, uniform)
from .verify import VerifyReport, run_verification

__version__ = "0.1.0"
