#!/usr/bin/env python3

"""
This module contains the radial grids, the radial quadrature rule, and
the container for spherically symmetric electron densities.
"""

import logging
import numpy as np
from scipy.interpolate import CubicSpline as spline

#logging.basicConfig(level=logging.DEBUG)
logger = logging.getLogger(__name__)

DEFAULT_N = 2000
DEFAULT_R_MAX = 50.0
DEFAULT_R_MIN_RATIO = 1e-6

def _simpson_weights(nint):
    """
    Composite Simpson coefficients (in units of the spacing) for nint
    uniform intervals, i.e. nint + 1 points. If nint is odd, the first
    interval is done with the trapezoid rule.
    """
    w = np.zeros(nint + 1)
    start = 0
    if np.mod(nint, 2) == 1:
        w[0] += 0.5
        w[1] += 0.5
        start = 1
    m = nint - start
    if m > 0:
        s = np.ones(m + 1)
        s[1:-1:2] = 4
        s[2:-1:2] = 2
        w[start:] += s / 3
    return w

class RadialGrid():
    """
    Radial nodes 0 < r_1 < ... < r_N = r_max together with weights for
    the plain integral of a function over [0, r_max].

    Args:
        n: number of nodes.
        r_max: outer cutoff radius.
        kind: ``"log"`` (log-spaced nodes from r_min to r_max) or
          ``"linear"`` (nodes r_max/n, 2 r_max/n, ..., r_max).
        r_min: innermost node of a log grid. Defaults to 1e-6 r_max.
    """

    kinds = ['log', 'linear']

    def __init__(self, n=DEFAULT_N, r_max=DEFAULT_R_MAX, kind='log', r_min=None):
        n = int(n)
        if kind not in self.kinds:
            raise ValueError('kind must be one of {}, got {!r}'.format(self.kinds, kind))
        if not r_max > 0:
            raise ValueError('r_max must be positive')
        if n < 2:
            raise ValueError('A radial grid needs at least 2 nodes')

        if kind == 'log':
            if r_min is None:
                r_min = DEFAULT_R_MIN_RATIO * r_max
            if not 0 < r_min < r_max:
                raise ValueError('Need 0 < r_min < r_max for a log grid')
            d_t = np.log(r_max / r_min) / (n - 1)
            nodes = r_min * np.exp(d_t * np.arange(n))
            nodes[-1] = r_max
            weights = _simpson_weights(n - 1) * d_t * nodes
            # Segment [0, r_min], constant extrapolation:
            weights[0] += r_min
            self.d_t = d_t
        else:
            h = r_max / n
            nodes = h * np.arange(1, n + 1)
            nodes[-1] = r_max
            w_all = _simpson_weights(n) * h
            weights = w_all[1:].copy()
            # The integrand at r = 0 is replaced by the linear
            # extrapolation 2 f(r_1) - f(r_2):
            weights[0] += 2 * w_all[0]
            weights[1] -= w_all[0]
            r_min = h
            self.d_t = h

        self.n = n
        self.r_max = float(r_max)
        self.r_min = float(r_min)
        self.kind = kind
        self.nodes = nodes
        self.weights = weights

    def __len__(self):
        return self.n

    def __repr__(self):
        return 'RadialGrid(n={}, r_max={}, kind={!r}, r_min={})'.format(
            self.n, self.r_max, self.kind, self.r_min)

    def integrate(self, f):
        """
        Plain quadrature of f over [0, r_max] (no 4 pi r^2 factor).
        """
        f = np.asarray(f, dtype=float)
        if f.shape != self.nodes.shape:
            raise ValueError('Expected {} values on the grid, got shape {}'.format(self.n, f.shape))
        return float(np.dot(self.weights, f))

    def refined(self, factor=2):
        """
        Return a grid on the same interval with the node spacing divided
        by ``factor``.
        """
        if self.kind == 'log':
            return RadialGrid((self.n - 1) * factor + 1, self.r_max, 'log', r_min=self.r_min)
        return RadialGrid(self.n * factor, self.r_max, 'linear')

    def extended(self, factor=20):
        """
        Return a log grid with the same innermost node, twice as many
        nodes and the cutoff r_max multiplied by ``factor``.
        """
        if not factor > 1:
            raise ValueError('The cutoff factor must exceed 1, got {}'.format(factor))
        return RadialGrid(2 * self.n, self.r_max * factor, 'log', r_min=self.r_min)

    def scaled(self, s):
        """
        Return the grid with every radius multiplied by s > 0.
        """
        if not s > 0:
            raise ValueError('Scale factor must be positive')
        if self.kind == 'log':
            return RadialGrid(self.n, self.r_max * s, 'log', r_min=self.r_min * s)
        return RadialGrid(self.n, self.r_max * s, 'linear')

    def to_dict(self):
        return {'kind': self.kind, 'n': self.n, 'r_max': self.r_max, 'r_min': self.r_min}

    @classmethod
    def from_nodes(cls, nodes, rtol=1e-8):
        """
        Rebuild a grid from its nodes (e.g. read from a density file). The
        nodes must be either log-spaced or of the linear form h, 2h, ..., n h.
        """
        nodes = np.asarray(nodes, dtype=float)
        if nodes.ndim != 1 or len(nodes) < 2:
            raise ValueError('Need at least 2 radial nodes')
        if nodes[0] <= 0 or np.any(np.diff(nodes) <= 0):
            raise ValueError('Radial nodes must be positive and strictly increasing')
        n = len(nodes)
        ratios = nodes[1:] / nodes[:-1]
        diffs = np.diff(nodes)
        if np.allclose(ratios, ratios[0], rtol=rtol, atol=0):
            grid = cls(n, nodes[-1], 'log', r_min=nodes[0])
        elif np.allclose(diffs, nodes[0], rtol=rtol, atol=0):
            grid = cls(n, nodes[-1], 'linear')
        else:
            raise ValueError('Radial nodes are neither log-spaced nor linear (h, 2h, ..., n h)')
        if not np.allclose(grid.nodes, nodes, rtol=1e-6, atol=0):
            raise RuntimeError('Should not get here')
        return grid

def integrate_radial(f, grid):
    """
    Return the integral of f(r) 4 pi r^2 dr over [0, r_max], i.e. the
    integral over the ball of radius r_max of a radial function given by
    its values at the grid nodes.
    """
    f = np.asarray(f, dtype=float)
    if f.shape != grid.nodes.shape:
        raise ValueError('Expected {} values on the grid, got shape {}'.format(grid.n, f.shape))
    return 4 * np.pi * float(np.dot(grid.weights, f * grid.nodes * grid.nodes))

def _cumulative(grid, g, origin):
    """
    Integral of g from 0 to each node, using the antiderivative of a
    cubic spline through the nodes. ``origin`` is the contribution of
    the segment [0, r_1].
    """
    F = spline(grid.nodes, g).antiderivative()
    values = F(grid.nodes)
    return values - values[0] + origin

class RadialDensity():
    """
    A nonnegative spherically symmetric electron density rho(r), given by
    its values at the nodes of a :class:`RadialGrid`.
    """

    def __init__(self, grid, values):
        values = np.array(values, dtype=float)
        if values.shape != grid.nodes.shape:
            raise ValueError('Expected {} density values, got shape {}'.format(grid.n, values.shape))
        if not np.all(np.isfinite(values)):
            raise ValueError('Density values must be finite')
        if np.any(values < 0):
            raise ValueError('The electron density must be nonnegative (min value {})'.format(np.min(values)))
        self.grid = grid
        self.values = values

    def __repr__(self):
        return 'RadialDensity(grid={!r}, total_charge={})'.format(self.grid, self.total_charge())

    @classmethod
    def from_function(cls, func, grid):
        """
        Sample a density given analytically at the grid nodes.
        """
        return cls(grid, func(grid.nodes))

    def total_charge(self):
        """
        Integral of rho over the ball of radius r_max.
        """
        return integrate_radial(self.values, self.grid)

    def enclosed_charge(self):
        """
        Integral of rho over the ball of radius r, at every node r.
        """
        r = self.grid.nodes
        origin = self.values[0] * r[0] ** 3 / 3
        return 4 * np.pi * _cumulative(self.grid, self.values * r * r, origin)

    def newton_potential(self, r=None):
        """
        The Coulomb potential int rho(y) / |x - y| dy of the density, which
        by Newton's theorem depends only on r = |x|:

          4 pi [ (1/r) int_0^r rho s^2 ds + int_r^r_max rho s ds ].

        Without arguments the potential is returned at the grid nodes.
        Otherwise it is evaluated at the radii ``r``; beyond r_max it is
        Q/r and inside the first node it is constant.
        """
        nodes = self.grid.nodes
        inner = self.enclosed_charge()
        outer_cum = _cumulative(self.grid, self.values * nodes, 0.0)
        outer = 4 * np.pi * (outer_cum[-1] - outer_cum)
        v_nodes = inner / nodes + outer
        if r is None:
            return v_nodes
        r = np.asarray(r, dtype=float)
        v = spline(nodes, v_nodes)(np.clip(r, nodes[0], nodes[-1]))
        return np.where(r > nodes[-1], inner[-1] / np.maximum(r, nodes[-1]), v)

    def scaled(self, t):
        """
        The rescaled density rho_t(x) = t^3 rho(t x), represented on the
        grid whose nodes are r_i / t.
        """
        return RadialDensity(self.grid.scaled(1 / t), t ** 3 * self.values)

    def __mul__(self, c):
        return RadialDensity(self.grid, c * self.values)

    __rmul__ = __mul__

def product_quadrature(center, rho, n_mu=16, n_phi=16):
    """
    Points and weights of a 3-D product rule for integrals against
    rho(|x - center|) dx: the radial nodes of the density, Gauss-Legendre
    nodes in cos(theta), and uniform nodes in the azimuth. The weights
    include the density, so sum(weights * f(points)) approximates
    int rho(|x - center|) f(x) dx.
    """
    grid = rho.grid
    mu, w_mu = np.polynomial.legendre.leggauss(n_mu)
    phi = (np.arange(n_phi) + 0.5) * 2 * np.pi / n_phi
    sin_theta = np.sqrt(1 - mu * mu)
    directions = np.stack([np.outer(sin_theta, np.cos(phi)).ravel(),
                           np.outer(sin_theta, np.sin(phi)).ravel(),
                           np.repeat(mu, n_phi)], axis=1)
    w_angle = np.repeat(w_mu, n_phi) * (2 * np.pi / n_phi)
    w_radial = grid.weights * grid.nodes * grid.nodes * rho.values
    points = np.asarray(center, dtype=float)[None, None, :] \
        + grid.nodes[:, None, None] * directions[None, :, :]
    weights = w_radial[:, None] * w_angle[None, :]
    return points.reshape(-1, 3), weights.ravel()

def load_density(filename):
    """
    Read a density from a two-column text file (radius, value), one pair
    per line. Lines starting with # are ignored.
    """
    data = np.loadtxt(filename, ndmin=2)
    if data.shape[1] != 2:
        raise ValueError('Density file {} must have exactly 2 columns'.format(filename))
    grid = RadialGrid.from_nodes(data[:, 0])
    logger.info('Read density with {} nodes from {}'.format(grid.n, filename))
    return RadialDensity(grid, data[:, 1])

def save_density(filename, rho):
    """
    Write a density in the two-column text format read by :func:`load_density`.
    """
    np.savetxt(filename, np.column_stack((rho.grid.nodes, rho.values)),
               header='radius density', fmt='%.17g')
