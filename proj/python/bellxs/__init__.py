"""Polarization-correlated Compton scattering observables for Bell photon pairs."""

from bellxs._core import *  # noqa: F401,F403
from bellxs._core import __version__  # noqa: F401
