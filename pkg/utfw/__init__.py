#!/usr/bin/env python3

__version__ = "0.1.0"

from .radial_grid import RadialGrid, RadialDensity, integrate_radial
from .geometry import Nucleus, MoleculeConfig
from .instability import TrialFamily, trial_density
from .utfw import Utfw
