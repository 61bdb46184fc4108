import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile("default", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def random_unit(rng: np.random.Generator, n: int | None = None) -> np.ndarray:
    v = rng.normal(size=(3,) if n is None else (n, 3))
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


@st.composite
def unit_vectors(draw, min_xy: float = 0.0):
    theta = draw(st.floats(0.0, np.pi))
    phi = draw(st.floats(0.0, 2 * np.pi))
    v = np.array([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])
    if np.hypot(v[0], v[1]) < min_xy:
        v = np.array([min_xy * np.cos(phi), min_xy * np.sin(phi), np.sqrt(1 - min_xy**2) * np.sign(v[2] or 1.0)])
    return v


concurrences = st.floats(0.0, 1.0)
interior_concurrences = st.floats(0.02, 0.98)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
