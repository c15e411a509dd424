import numpy as np
import pytest
import scipy.linalg

from asymtunnel.model import hamiltonian_2x2, params_from_beta

BETAS = (0.25, 0.5, 1.0, 2.0, 4.0)


@pytest.fixture(params=BETAS, ids=lambda b: f"beta={b}")
def params(request):
    return params_from_beta(1.0, request.param)


def expm_ket(params, psi0, t):
    """Independent reference: exp(-iHt) psi0 straight from scipy."""
    return scipy.linalg.expm(-1j * t * hamiltonian_2x2(params)) @ np.asarray(psi0, dtype=complex)


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
