#!/usr/bin/env python3

"""
Numerical checks of the weighted uncertainty principle on a ball,

  | int (3u + u' |x|) f^3 | <= 3 ||grad f|| ( int u^2 |x|^2 f^4 )^(1/2),   u(R) = 0,

and of the resulting localized bound

  a^2 int |grad f|^2 + b^2 int f^4 >= ab int [4 / (3|x|) - 2/R] f^3,

for radial functions f on the ball B_R.
"""

import logging
import numpy as np
from scipy.interpolate import PchipInterpolator
from .util import Struct
from .radial_grid import RadialGrid, integrate_radial, _cumulative

#logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

PROBE_N = 10000
EPS_QUAD = 1e-8
SHARP_COEFFICIENT = 4 / 3

def probe_grid(R, n=PROBE_N):
    """
    Default grid for probes on the ball of radius R.
    """
    return RadialGrid(n, R, 'linear')

class WeightFn():
    """
    A radial weight u with u(R) = 0, given with its derivative at the
    nodes of a grid whose outer radius is R.
    """

    def __init__(self, grid, u, u_prime, inner_integral=None):
        self.grid = grid
        self.R = grid.r_max
        self.u = np.asarray(u, dtype=float)
        self.u_prime = np.asarray(u_prime, dtype=float)
        if self.u.shape != grid.nodes.shape or self.u_prime.shape != grid.nodes.shape:
            raise ValueError('u and u_prime must be given at every grid node')
        if inner_integral is None:
            r = grid.nodes
            inner_integral = _cumulative(grid, r * self.u, r[0] * r[0] * self.u[0])
        # int_0^r s u(s) ds at the nodes
        self.inner_integral = np.asarray(inner_integral, dtype=float)

    @classmethod
    def from_function(cls, u, u_prime, grid):
        return cls(grid, u(grid.nodes), u_prime(grid.nodes))

    @classmethod
    def hardy(cls, grid):
        """
        u(r) = (1/2) (1/r - 1/R), for which 3u + u' r = 1/r - 3 / (2R).
        """
        r = grid.nodes
        R = grid.r_max
        u = 0.5 * (1 / r - 1 / R)
        u[-1] = 0.0
        return cls(grid, u, -0.5 / (r * r), inner_integral=0.5 * (r - r * r / (2 * R)))

    def shifted(self, c):
        """
        The weight u + c, which violates u(R) = 0 for c != 0.
        """
        r = self.grid.nodes
        return WeightFn(self.grid, self.u + c, self.u_prime, self.inner_integral + 0.5 * c * r * r)

class BallProbe():
    """
    A nonnegative radial test function f on the closed ball of radius
    R = grid.r_max, with its radial derivative. If the derivative is not
    given it is computed by finite differences.
    """

    def __init__(self, grid, f, f_prime=None):
        f = np.asarray(f, dtype=float)
        if f.shape != grid.nodes.shape:
            raise ValueError('f must be given at every grid node')
        if np.any(f < 0) or not np.all(np.isfinite(f)):
            raise ValueError('Probe functions must be finite and nonnegative')
        if f_prime is None:
            f_prime = np.gradient(f, grid.nodes, edge_order=2)
        self.grid = grid
        self.R = grid.r_max
        self.f = f
        self.f_prime = np.asarray(f_prime, dtype=float)

    @classmethod
    def from_function(cls, f, grid, f_prime=None):
        return cls(grid, f(grid.nodes), None if f_prime is None else f_prime(grid.nodes))

    @classmethod
    def constant(cls, c, grid):
        return cls(grid, np.full(grid.n, float(c)), np.zeros(grid.n))

    def __mul__(self, c):
        return BallProbe(self.grid, c * self.f, c * self.f_prime)

    __rmul__ = __mul__

def random_probe(rng, R, grid=None, min_knots=5, max_knots=10):
    """
    A random positive piecewise-cubic probe through 5-10 random knots on
    [0, R]. The monotone (PCHIP) interpolant keeps f positive.
    """
    if grid is None:
        grid = probe_grid(R)
    nknots = rng.integers(min_knots, max_knots + 1)
    interior = np.sort(rng.uniform(0, R, nknots - 2))
    knots = np.concatenate(([0.0], interior, [R]))
    if np.any(np.diff(knots) <= 0):
        knots = np.linspace(0, R, nknots)
    values = rng.uniform(0.05, 2.0, nknots)
    interp = PchipInterpolator(knots, values)
    return BallProbe(grid, interp(grid.nodes), interp.derivative()(grid.nodes))

def _check_compatible(u, probe):
    if u.grid.n != probe.grid.n or not np.isclose(u.R, probe.R, rtol=1e-12):
        raise ValueError('Weight and probe must live on the same grid')

def ibp_sides(u, probe):
    """
    The three terms of the integration by parts behind the weighted inequality:
    ``volume`` = 4 pi int (3u + u' r) f^3 r^2 dr,
    ``parts`` = -3 * 4 pi int f^2 u r f' r^2 dr, and
    ``surface`` = 4 pi R^3 u(R) f(R)^3, with volume = parts + surface.
    """
    _check_compatible(u, probe)
    r = probe.grid.nodes
    f = probe.f
    volume = integrate_radial((3 * u.u + u.u_prime * r) * f ** 3, probe.grid)
    parts = -3 * integrate_radial(f * f * u.u * r * probe.f_prime, probe.grid)
    surface = 4 * np.pi * probe.R ** 3 * u.u[-1] * f[-1] ** 3
    return Struct(volume=volume, parts=parts, surface=surface)

def ibp_residual(u, probe):
    """
    volume - parts - surface, which vanishes up to quadrature error.
    """
    sides = ibp_sides(u, probe)
    return sides.volume - sides.parts - sides.surface

def lemma_lhs(u, probe, tol=1e-10):
    """
    int_{B_R} (3u(|x|) + u'(|x|) |x|) f(x)^3 dx. Requires u(R) = 0.
    """
    _check_compatible(u, probe)
    if abs(u.u[-1]) > tol:
        raise ValueError('The weight must vanish at r = R, got u(R) = {}'.format(u.u[-1]))
    r = probe.grid.nodes
    return integrate_radial((3 * u.u + u.u_prime * r) * probe.f ** 3, probe.grid)

def lemma_rhs(u, probe):
    """
    3 (int |grad f|^2)^(1/2) (int u^2 |x|^2 f^4)^(1/2).
    """
    _check_compatible(u, probe)
    r = probe.grid.nodes
    gradient = integrate_radial(probe.f_prime ** 2, probe.grid)
    weighted = integrate_radial((u.u * r) ** 2 * probe.f ** 4, probe.grid)
    return 3 * np.sqrt(gradient) * np.sqrt(weighted)

def schwarz_ratio(u, probe):
    """
    |lemma_lhs| / lemma_rhs, which is at most 1. When both sides vanish
    (e.g. f constant) the ratio is 0 by convention; a vanishing right side
    with a nonzero left side is reported as an infinite ratio.
    """
    lhs = lemma_lhs(u, probe)
    rhs = lemma_rhs(u, probe)
    r = probe.grid.nodes
    scale = integrate_radial(np.abs(3 * u.u + u.u_prime * r) * probe.f ** 3, probe.grid)
    if rhs <= 1e-12 * max(scale, 1e-300):
        if abs(lhs) <= 1e-10 * max(scale, 1e-300):
            return 0.0
        logger.warning('Right side vanishes but left side is {}'.format(lhs))
        return np.inf
    return abs(lhs) / rhs

def extremal_f(u, lam_f, C, grid=None):
    """
    The probe f(r) = 1 / (lam_f int_0^r s u(s) ds + C) for which the weighted
    inequality is an equality.
    """
    if grid is not None and (grid.n != u.grid.n or not np.isclose(grid.r_max, u.R)):
        raise ValueError('The extremal function is built on the grid of the weight')
    grid = u.grid
    denominator = lam_f * u.inner_integral + C
    if np.any(denominator <= 0):
        raise ValueError('lam_f and C give a nonpositive denominator on [0, R]')
    f = 1 / denominator
    f_prime = -lam_f * grid.nodes * u.u * f * f
    return BallProbe(grid, f, f_prime)

def mup_sides(probe, a, b, coefficient=SHARP_COEFFICIENT):
    """
    Left side a^2 int |grad f|^2 + b^2 int f^4 and right side
    ab int [coefficient / |x| - 2/R] f^3 of the localized bound.
    """
    grid = probe.grid
    lhs = a * a * integrate_radial(probe.f_prime ** 2, grid) + b * b * integrate_radial(probe.f ** 4, grid)
    rhs = a * b * integrate_radial((coefficient / grid.nodes - 2 / probe.R) * probe.f ** 3, grid)
    return lhs, rhs

def mup_gap(probe, a, b, coefficient=SHARP_COEFFICIENT):
    """
    Left minus right side of the localized uncertainty principle; it is
    nonnegative for coefficient = 4/3.
    """
    lhs, rhs = mup_sides(probe, a, b, coefficient)
    return lhs - rhs

def amgm_step_check(X, Y, a, b):
    """
    a^2 X + b^2 Y >= 2ab sqrt(X Y) for X, Y >= 0.
    """
    if X < 0 or Y < 0:
        raise ValueError('X and Y must be nonnegative')
    lhs = a * a * X + b * b * Y
    return bool(lhs >= 2 * a * b * np.sqrt(X * Y) - 1e-12 * max(1.0, abs(lhs)))

def sharpness_search(a, b, coefficient, R=1.0, n=PROBE_N,
                     widths=(1e-1, 3e-2, 1e-2, 3e-3, 1e-3), amplitudes=None):
    """
    Scan the extremal family f = c / (1 + (r - r^2 / 2R) / eps) over the
    widths eps / R and amplitudes c eps (in units of a / b), and return
    the most negative relative gap of the localized bound with the given
    coefficient.
    """
    grid = probe_grid(R, n)
    u = WeightFn.hardy(grid)
    if amplitudes is None:
        amplitudes = np.geomspace(0.25, 4, 17)
    best = Struct(relative_gap=np.inf, gap=None, width=None, amplitude=None)
    for width in widths:
        eps = width * R
        for amplitude in amplitudes:
            c = amplitude * (a / b) / eps
            probe = extremal_f(u, 2 / (c * eps), 1 / c)
            lhs, rhs = mup_sides(probe, a, b, coefficient)
            relative = (lhs - rhs) / lhs
            if relative < best.relative_gap:
                best = Struct(relative_gap=relative, gap=lhs - rhs, width=width, amplitude=amplitude)
    logger.info('sharpness_search coefficient={}: {}'.format(coefficient, best))
    return best
