import numpy as np
import pytest

from rokit import OdeSystem
from rokit.problems import burgers_fd, lorenz96, shallow_water


def make_linear_system(B, autonomous=True):
    """OdeSystem for y' = B y with exact derivative callbacks."""
    B = np.asarray(B, dtype=float)
    return OdeSystem(dimension=B.shape[0],
                     eval_f=lambda t, y: B @ y,
                     eval_jvp=lambda t, y, u: B @ u,
                     eval_jacobian=lambda t, y: B,
                     is_autonomous=autonomous,
                     name="linear")


@pytest.fixture(scope="session")
def lorenz():
    return lorenz96()


@pytest.fixture(scope="session")
def burgers():
    return burgers_fd()


@pytest.fixture(scope="session")
def swe():
    return shallow_water()
