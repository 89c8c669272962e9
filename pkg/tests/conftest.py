import pytest

from radixnet import _kernels

ACCEPTANCE_LINES = []

KERNEL_BACKENDS = {
    "numba": (_kernels.matmul_csr_numba, _kernels.enumerate_paths_numba),
    "numpy": (_kernels.matmul_csr_numpy, _kernels.enumerate_paths_python),
}


@pytest.fixture(params=sorted(KERNEL_BACKENDS))
def backend(request, monkeypatch):
    """Run the test once per kernel backend by rebinding the active kernels."""
    matmul_csr, enumerate_paths = KERNEL_BACKENDS[request.param]
    monkeypatch.setattr(_kernels, "matmul_csr", matmul_csr)
    monkeypatch.setattr(_kernels, "enumerate_paths", enumerate_paths)
    return request.param


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
