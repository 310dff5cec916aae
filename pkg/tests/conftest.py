import pytest
import torch

from quatcyc.number_theory import make_params


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "skip_if_no_cuda: Skip test if no cuda device is available."
    )


@pytest.fixture(autouse=True)
def check_cuda_availability(request):
    if (
        "skip_if_no_cuda" in request.keywords
        and not torch.cuda.is_available()
    ):
        pytest.skip("Test requires a cuda device which is not available.")


@pytest.fixture
def params_3_2():
    """Smallest instance with m > 1, the one of the worked example."""
    return make_params(3, 2)


@pytest.fixture
def params_5_1():
    return make_params(5, 1)


@pytest.fixture
def params_7_1():
    return make_params(7, 1)
