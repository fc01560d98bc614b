import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geomint import _pykernels, kernels

cy = pytest.importorskip("geomint._kernels")

coords = st.integers(0, 2 ** 31 - 1).map(lambda s: np.random.default_rng(s))


def test_default_backend_is_compiled():
    assert kernels.BACKEND == "cython"


@settings(max_examples=200)
@given(coords, st.integers(1, 400), st.floats(0.1, 50))
def test_slice_profiles_bit_identical(rng, n, scale):
    along = rng.normal(0, scale, n)
    cross = rng.normal(0, scale, n)
    # exercise exact half-integers too
    along[: n // 3] = np.round(along[: n // 3] * 2) / 2
    a = _pykernels.slice_profiles(along, cross, 1e-9)
    b = cy.slice_profiles(along, cross, 1e-9)
    assert a[0] == b[0]
    for x, y in zip(a[1:], b[1:]):
        assert np.array_equal(np.asarray(x), np.asarray(y))


@settings(max_examples=200)
@given(coords, st.integers(1, 30), st.integers(1, 30), st.integers(-15, 15), st.integers(-15, 15))
def test_l1_bit_identical(rng, n, m, plo, qlo):
    p, q = rng.normal(size=n), rng.normal(size=m)
    assert _pykernels.l1_aligned(p, plo, q, qlo) == cy.l1_aligned(p, plo, q, qlo)


def test_fallback_selected_by_env(monkeypatch):
    import importlib

    monkeypatch.setenv("GEOMINT_PURE_PYTHON", "1")
    try:
        mod = importlib.reload(kernels)
        assert mod.BACKEND == "python"
        assert mod.slice_profiles is _pykernels.slice_profiles
    finally:
        monkeypatch.delenv("GEOMINT_PURE_PYTHON")
        importlib.reload(kernels)
    assert kernels.BACKEND == "cython"
