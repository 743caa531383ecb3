import hypothesis
import pytest

from vlike import functional

hypothesis.settings.register_profile(
    "exact",
    max_examples=60,
    deadline=None,
    derandomize=True,
)
hypothesis.settings.load_profile("exact")


@pytest.fixture
def psi_even():
    """Weight with f_k = 1 + (-1)**k: support on even k, period two."""
    return functional([(1, [1]), (-1, [1])])


@pytest.fixture
def psi_one():
    """Weight with f_k = 1 for all k: full support, period one."""
    return functional([(1, [1])])


@pytest.fixture
def psi_zero():
    """The zero weight."""
    return functional([])
