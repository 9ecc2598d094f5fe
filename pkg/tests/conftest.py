import pytest

from rivervote import kernels


@pytest.fixture(params=sorted(kernels.BACKENDS), scope="session")
def backend(request):
    return kernels.BACKENDS[request.param]
