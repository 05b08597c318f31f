"""
This module contains the stability certificate for molecules: the
Voronoi localization of the kinetic energy, the pointwise minimization
of the remaining local functional, and the electrostatic inequality of
Lieb and Yau, chained into a single sign condition on the margin M.
"""

import logging
import numpy as np
import scipy.optimize
from .util import Struct
from .geometry import nuclear_repulsion, half_distances, phi_at
from .radial_grid import integrate_radial, product_quadrature

#logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

class CertificateReport(Struct):
    """
    All intermediate quantities of the certificate and the verdict, one
    of ``"stable"``, ``"not-certified"`` or ``"charge-exceeds-range"``.
    """
    pass

def xi1_pointwise_min(s, b1, alpha):
    """
    Minimize t -> b1^2 t^(4/3) - alpha s t over t >= 0, for s >= 0 (the
    local value of (W - Phi)_+). Returns the minimizer
    (3 alpha s / (4 b1^2))^3 and the minimum
    -(1/4) alpha^4 (3 / (4 b1^2))^3 s^4.
    """
    s = np.asarray(s, dtype=float)
    if np.any(s < 0):
        raise ValueError('s must be nonnegative')
    rho_star = (3 * alpha * s / (4 * b1 * b1)) ** 3
    value = -0.25 * alpha ** 4 * (3 / (4 * b1 * b1)) ** 3 * s ** 4
    if s.ndim == 0:
        return float(rho_star), float(value)
    return rho_star, value

def ball_integral(D, a, b2):
    """
    Integral of (W - Phi)^4 = (2 a b2 / D)^4 over the ball of radius D:
    64 pi a^4 b2^4 / (3 D).
    """
    return 64 * np.pi * a ** 4 * b2 ** 4 / (3 * D)

def exterior_bound(D, z):
    """
    Bound 3 pi z^4 / D on the integral of (z / |x - R_j|)^4 over the cell
    minus the ball. It is the exact value for a half space at distance D.
    """
    return 3 * np.pi * z ** 4 / D

def compute_M(z, b1, b2, a, alpha):
    """
    Stability margin per unit of sum_j 1 / D_j:

      M = -(1/4) alpha^4 (3 / (4 b1^2))^3 (3 pi z^4 + 64 pi a^4 b2^4 / 3) + alpha z^2 / 8.
    """
    if not b1 > 0:
        raise ValueError('b1 must be positive')
    return -0.25 * alpha ** 4 * (3 / (4 * b1 * b1)) ** 3 \
        * (3 * np.pi * z ** 4 + 64 * np.pi * a ** 4 * b2 ** 4 / 3) + alpha * z * z / 8

def certify(self, config):
    """
    Run the certificate on a molecule. All charges are replaced by their
    maximum z (the energy is concave in each charge, so the worst case
    is on the boundary), b2 = 3 alpha z / (4 a) cancels the Coulomb
    singularity in each inscribed ball and b1^2 = b^2 - b2^2. If M >= 0,

      xi(rho) + U >= M sum_j 1 / D_j >= 0

    for every admissible density. A single nucleus is decided by the
    atomic bound instead.
    """
    z_cert = float(np.max(config.charges))
    U = nuclear_repulsion(config, self.alpha)
    D = half_distances(config).D
    report = CertificateReport(K=config.K, route='molecular', U=U, D=D, z_cert=z_cert,
                               b1=None, b2=None, z_condition_ok=False, M=None,
                               per_cell_ball=None, per_cell_exterior=None,
                               lieb_yau_rhs=None, energy_lower_bound=None,
                               stable=False, verdict='not-certified')

    if config.K == 1:
        lower = self.atomic_bounds().lower
        report.route = 'atomic'
        report.z_condition_ok = bool(z_cert < lower)
        report.stable = report.z_condition_ok
        report.verdict = 'stable' if report.stable else 'not-certified'
        logger.info('Single nucleus z={}: atomic bound {} -> {}'.format(z_cert, lower, report.verdict))
        return report

    b2 = 3 * self.alpha * z_cert / (4 * self.a)
    report.b2 = b2
    if b2 >= self.b:
        report.verdict = 'charge-exceeds-range'
        logger.info('z={} needs b2={} >= b={}: {}'.format(z_cert, b2, self.b, report.verdict))
        return report

    b1 = np.sqrt(self.b_squared - b2 * b2)
    inv_D_sum = float(np.sum(1 / D))
    M = compute_M(z_cert, b1, b2, self.a, self.alpha)
    report.b1 = b1
    report.z_condition_ok = bool(z_cert <= 4 * self.a * b2 / (3 * self.alpha) * (1 + 1e-12))
    report.M = M
    report.per_cell_ball = ball_integral(D, self.a, b2)
    report.per_cell_exterior = exterior_bound(D, z_cert)
    report.lieb_yau_rhs = self.alpha * z_cert * z_cert / 8 * inv_D_sum
    report.energy_lower_bound = M * inv_D_sum
    report.stable = bool(M >= 0 and report.z_condition_ok)
    report.verdict = 'stable' if report.stable else 'not-certified'
    logger.info('Certificate: z={} b1={} b2={} M={} -> {}'.format(z_cert, b1, b2, M, report.verdict))
    return report

def largest_certified_charge(model, positions, xtol=None):
    """
    Bisect over a common charge z on all nuclei at ``positions`` for the
    largest z that the certificate declares stable.
    """
    from .geometry import MoleculeConfig
    positions = np.asarray(positions, dtype=float)

    def sign(z):
        report = model.certify(MoleculeConfig.from_arrays(z, positions))
        return 1.0 if report.stable else -1.0

    z_hi = model.charge_scale
    if xtol is None:
        xtol = 1e-10 * z_hi
    return scipy.optimize.bisect(sign, 0.0, z_hi, xtol=xtol, maxiter=200)

def lieb_yau_sides(config, blobs, masses=None, n_mu=16, n_phi=16):
    """
    The two sides of the Lieb-Yau electrostatic inequality

      (1/2) int int |x - y|^-1 dnu dnu - int Phi dnu + U / alpha >= (z^2 / 8) sum_j 1 / D_j

    for the measure nu = sum of radial blobs. ``blobs`` is a list of
    (center, RadialDensity) pairs; if ``masses`` is given each blob is
    rescaled to that total mass. All charges must be equal.
    """
    charges = config.charges
    if np.any(charges != charges[0]):
        raise ValueError('The electrostatic inequality is stated for equal charges, got {}'.format(charges))
    if config.K < 2:
        raise ValueError('Need at least two nuclei')
    z = charges[0]
    if masses is not None:
        blobs = [(c, rho * (m / rho.total_charge())) for (c, rho), m in zip(blobs, masses)]

    quadratures = [product_quadrature(c, rho, n_mu=n_mu, n_phi=n_phi) for c, rho in blobs]
    self_energy = sum(0.5 * integrate_radial(rho.values * rho.newton_potential(), rho.grid)
                      for _, rho in blobs)
    cross = 0.0
    for k in range(len(blobs)):
        points, weights = quadratures[k]
        for l in range(k + 1, len(blobs)):
            center, rho = blobs[l]
            cross += np.dot(weights, rho.newton_potential(np.linalg.norm(points - center, axis=1)))
    attraction = sum(np.dot(weights, phi_at(points, config)) for points, weights in quadratures)
    lhs = self_energy + cross - attraction + nuclear_repulsion(config, 1.0)
    rhs = z * z / 8 * np.sum(1 / half_distances(config).D)
    logger.debug('Lieb-Yau: self={} cross={} attraction={} lhs={} rhs={}'.format(
        self_energy, cross, attraction, lhs, rhs))
    return float(lhs), float(rhs)

def lieb_yau_gap(config, blobs, masses=None, n_mu=16, n_phi=16):
    """
    Left side minus right side of the Lieb-Yau inequality; see
    :func:`lieb_yau_sides`. It is nonnegative up to quadrature error.
    """
    lhs, rhs = lieb_yau_sides(config, blobs, masses=masses, n_mu=n_mu, n_phi=n_phi)
    return lhs - rhs
