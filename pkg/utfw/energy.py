"""
This module contains the evaluation of each term of the UTFW energy
functional for spherically symmetric densities.
"""

import logging
import numpy as np
from .radial_grid import integrate_radial

#logging.basicConfig(level=logging.DEBUG)
logger = logging.getLogger(__name__)

def weizsacker_term(self, rho):
    """
    The gradient term a^2 int (grad rho^(1/3))^2 dx. The radial
    derivative of rho^(1/3) is taken by second-order centered
    differences, one-sided at the two ends of the grid.
    """
    grid = rho.grid
    if grid.n < 3:
        raise ValueError('The gradient term needs at least 3 radial nodes')
    cube_root = np.cbrt(rho.values)
    d_cube_root_d_r = np.gradient(cube_root, grid.nodes, edge_order=2)
    return self.a_squared * integrate_radial(d_cube_root_d_r * d_cube_root_d_r, grid)

def tf_term(self, rho):
    """
    The Thomas-Fermi term b^2 int rho^(4/3) dx.
    """
    return self.b_squared * integrate_radial(rho.values ** (4 / 3), rho.grid)

def attraction_term_atomic(self, rho, z):
    """
    The attraction z alpha int rho / |x| dx by a nucleus at the origin.
    It enters the energy with a minus sign.
    """
    if z < 0:
        raise ValueError('Nuclear charge must be nonnegative, got {}'.format(z))
    return z * self.alpha * integrate_radial(rho.values / rho.grid.nodes, rho.grid)

def hartree_radial(self, rho):
    """
    The electronic repulsion D(rho, rho) = (alpha / 2) int int rho(x) rho(y) / |x - y|,
    computed with the Newton potential of the spherical density.
    """
    potential = rho.newton_potential()
    return 0.5 * self.alpha * integrate_radial(rho.values * potential, rho.grid)

def atomic_energy(self, rho, z):
    """
    Evaluate the atomic functional xi(rho) for a nucleus of charge z at
    the origin.
    """
    kinetic = self.weizsacker_term(rho) + self.tf_term(rho)
    energy = kinetic - self.attraction_term_atomic(rho, z) + self.hartree_radial(rho)
    logger.debug('atomic_energy: z={} kinetic={} energy={}'.format(z, kinetic, energy))
    return energy
