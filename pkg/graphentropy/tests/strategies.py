import numpy as np
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from graphentropy.graph import from_edge_list


@st.composite
def edge_pairs(draw, min_n=1, max_n=64, allow_loops=True):
    n = draw(st.integers(min_n, max_n))
    vertex = st.integers(0, n - 1)
    pairs = draw(st.lists(st.tuples(vertex, vertex), max_size=3 * n))
    if not allow_loops:
        pairs = [(u, v) for u, v in pairs if u != v]
    return n, pairs


@st.composite
def graphs(draw, min_n=1, max_n=64):
    n, pairs = draw(edge_pairs(min_n, max_n))
    return from_edge_list(pairs, n=n)


def spectra(max_n=512, low=0.0, high=50.0):
    """Unsorted eigenvalue arrays of length 1..max_n"""
    return st.integers(1, max_n).flatmap(
        lambda n: arrays(
            np.float64, n,
            elements=st.floats(low, high, allow_nan=False, allow_infinity=False),
        )
    )


taus = st.floats(1e-3, 1e3, allow_nan=False, allow_infinity=False)


@st.composite
def seeded_spectra(draw, max_n=512, high=50.0):
    """
    Eigenvalue arrays of length 1..max_n filled from a seeded numpy
    generator, with a leading run of repeated values, so large n stays
    cheap to draw.
    """
    n = draw(st.integers(1, max_n))
    rng = np.random.default_rng(draw(st.integers(0, 2 ** 32 - 1)))
    values = rng.uniform(0.0, high, n)
    repeats = draw(st.integers(0, n - 1))
    values[:repeats] = values[0]
    return rng.permutation(values)
