import numpy as np
import pytest

from relkin import minkowski as mk
from relkin.frames import RotatingFrame, make_rotating_profile
from relkin.transport import LieTransportGrid
from relkin.worldlines import make_circular_orbit

ORIGIN = np.zeros(4)


def circular_orbit(v, omega=1.0):
    return make_circular_orbit(
        center=ORIGIN,
        axis_velocity=mk.E_T,
        rotation_plane=(mk.E_X, mk.E_Y),
        omega=omega,
        radius=v / omega,
    )


@pytest.fixture(scope="session")
def orbit_v05():
    return circular_orbit(0.5)


@pytest.fixture(scope="session")
def conventional_frame():
    profile = make_rotating_profile("conventional")
    return RotatingFrame(profile, ORIGIN, mk.E_T, mk.wedge(mk.E_Y, mk.E_X))


@pytest.fixture(scope="session")
def conventional_grid(conventional_frame, orbit_v05):
    return LieTransportGrid(
        conventional_frame, orbit_v05, orbit_v05.proper_period(), 1024
    )
