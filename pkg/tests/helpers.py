"""Shared helpers for the test suite."""

import math

import numpy as np

from revproj import make_quadratic_profile, reference_interval


def random_profiles(seed, count):
    """Valid profiles drawn from c, k in (0.1, 4) with d^2 < 4ck * 0.9."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        c = float(rng.uniform(0.1, 4.0))
        k = float(rng.uniform(0.1, 4.0))
        d = float(rng.uniform(-0.999, 0.999) * 2.0 * math.sqrt(0.9 * c * k))
        out.append(make_quadratic_profile(c, d, k))
    return out


def chart(p):
    """Default admissible u-interval used when a test needs one."""
    return reference_interval(p)
