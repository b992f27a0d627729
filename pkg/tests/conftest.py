import numpy as np
import pytest

from curvelab.geometry import (curve_from_function, make_circle, make_ellipse,
                               reparametrize_constant_speed)

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("]")[1].split(":")[0])):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def ellipse256():
    return reparametrize_constant_speed(make_ellipse(2.0, 1.0, n=256))


@pytest.fixture(scope="session")
def ellipse512():
    return reparametrize_constant_speed(make_ellipse(2.0, 1.0, n=512))


@pytest.fixture(scope="session")
def unit_circle():
    return make_circle(1.0, n=128)


def random_smooth_curve(rng, n=256, modes=5, amplitude=0.15):
    """Star-shaped curve ``r(t) = 1 + sum`` of a few decaying Fourier modes."""
    k = np.arange(2, 2 + modes)
    a = rng.normal(size=modes) * amplitude / k
    b = rng.normal(size=modes) * amplitude / k
    center = rng.normal(size=2)

    def shape(t):
        r = 1.0 + np.cos(np.outer(t, k)) @ a + np.sin(np.outer(t, k)) @ b
        return center + r[:, None] * np.column_stack([np.cos(t), np.sin(t)])

    return curve_from_function(shape, n)


def band_limited_field(rng, theta, modes=8):
    k = np.arange(1, modes + 1)
    coef = rng.normal(size=(2, modes, 2)) / k[:, None]
    c, s = np.cos(np.outer(theta, k)), np.sin(np.outer(theta, k))
    return np.stack([c @ coef[0, :, d] + s @ coef[1, :, d] for d in range(2)], axis=1)
