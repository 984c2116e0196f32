"""Hypothesis strategies shared by the property tests."""

import numpy as np
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays


def bool_matrices(min_n=1, max_n=8):
    return st.integers(min_n, max_n).flatmap(
        lambda n: arrays(np.bool_, (n, n), elements=st.booleans())
    )


def sparse_matrices(n, p=0.2):
    return st.integers(0, 2**32 - 1).map(lambda s: np.random.default_rng(s).random((n, n)) < p)
