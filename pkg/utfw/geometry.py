"""
This module contains the molecular configuration: nuclear charges and
positions, nuclear repulsion, Voronoi cells, and the potentials Phi and W
used by the stability certificate.
"""

import json
import logging
import numpy as np
from scipy.spatial.distance import cdist, pdist, squareform
from .util import Struct, parse_number

#logging.basicConfig(level=logging.DEBUG)
logger = logging.getLogger(__name__)

class ConfigError(ValueError):
    """
    A molecule configuration could not be parsed. ``problems`` lists the
    offending fields.
    """
    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__('Invalid configuration: ' + '; '.join(self.problems))

class Nucleus(Struct):
    """
    A point nucleus with nonnegative charge z (not necessarily an
    integer) at the 3-vector R.
    """
    def __init__(self, z, R):
        z = float(z)
        R = np.array(R, dtype=float)
        if not (z >= 0 and np.isfinite(z)):
            raise ValueError('Nuclear charge must be finite and nonnegative, got {}'.format(z))
        if R.shape != (3,) or not np.all(np.isfinite(R)):
            raise ValueError('Nuclear position must be a finite 3-vector, got {}'.format(R))
        super().__init__(z=z, R=R)

class VoronoiInfo(Struct):
    """
    D[j] is the distance from nucleus j to the boundary of its Voronoi
    cell, i.e. half the distance to its nearest neighbor. It is infinite
    ("unbounded") for a lone nucleus.
    """
    pass

class MoleculeConfig():
    """
    An ordered list of K >= 1 nuclei at pairwise distinct positions.
    """

    def __init__(self, nuclei):
        nuclei = list(nuclei)
        if len(nuclei) < 1:
            raise ValueError('A configuration needs at least one nucleus')
        self.nuclei = nuclei
        self.charges = np.array([n.z for n in nuclei])
        self.positions = np.array([n.R for n in nuclei]).reshape(len(nuclei), 3)
        pairs = coincident_pairs(self.positions)
        if pairs:
            raise ValueError('Nuclei at coincident positions: {}'.format(
                ', '.join('{} and {}'.format(i, j) for i, j in pairs)))

    @classmethod
    def from_arrays(cls, charges, positions):
        positions = np.asarray(positions, dtype=float).reshape(-1, 3)
        charges = np.broadcast_to(np.asarray(charges, dtype=float), (len(positions),))
        return cls([Nucleus(z, R) for z, R in zip(charges, positions)])

    @property
    def K(self):
        return len(self.nuclei)

    @property
    def total_charge(self):
        return float(np.sum(self.charges))

    def __len__(self):
        return self.K

    def __repr__(self):
        return 'MoleculeConfig(charges={}, positions={})'.format(self.charges.tolist(), self.positions.tolist())

    def to_dict(self):
        return {'nuclei': [{'z': float(n.z), 'position': n.R.tolist()} for n in self.nuclei]}

def coincident_pairs(positions):
    """
    Index pairs (i, j), i < j, of positions that coincide.
    """
    K = len(positions)
    if K < 2:
        return []
    distances = squareform(pdist(positions))
    i, j = np.nonzero(np.triu(distances == 0, k=1))
    return list(zip(i.tolist(), j.tolist()))

def nuclear_repulsion(config, alpha):
    """
    U = alpha sum_{i<j} z_i z_j / |R_i - R_j|.
    """
    if config.K < 2:
        return 0.0
    distances = pdist(config.positions)
    if np.any(distances == 0):
        raise ValueError('Nuclei at coincident positions: U is infinite')
    charge_products = np.outer(config.charges, config.charges)[np.triu_indices(config.K, k=1)]
    return float(alpha * np.sum(charge_products / distances))

def half_distances(config):
    """
    D_j = (1/2) min_{k != j} |R_k - R_j|, the radius of the largest ball
    around R_j inside its Voronoi cell.
    """
    if config.K == 1:
        return VoronoiInfo(D=np.array([np.inf]))
    distances = squareform(pdist(config.positions))
    np.fill_diagonal(distances, np.inf)
    return VoronoiInfo(D=0.5 * np.min(distances, axis=1))

def _as_points(x):
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    return x.reshape(-1, 3), single

def cell_index(x, config):
    """
    Index j of the Voronoi cell containing x: the nearest nucleus, with
    ties going to the lowest index. ``x`` can be a 3-vector or an (n, 3)
    array of points.
    """
    points, single = _as_points(x)
    j = np.argmin(cdist(points, config.positions), axis=1)
    return int(j[0]) if single else j

def _phi(points, config):
    """
    Phi at each point, together with the cell index and the distance to
    the own nucleus.
    """
    distances = cdist(points, config.positions)
    j = np.argmin(distances, axis=1)
    rows = np.arange(len(points))
    own = distances[rows, j]
    foreign = distances.copy()
    # Nuclei are distinct, so every foreign distance is positive
    foreign[rows, j] = np.inf
    phi = np.sum(config.charges[None, :] / foreign, axis=1)
    return phi, j, own

def phi_at(x, config):
    """
    In the Voronoi cell of nucleus j, Phi is the electrostatic potential
    of all the other nuclei: Phi(x) = sum_{i != j} z_i / |x - R_i|.
    """
    points, single = _as_points(x)
    phi, _, _ = _phi(points, config)
    return float(phi[0]) if single else phi

def w_at(x, config, a, b2):
    """
    W = Phi + z_j / |x - R_j| outside the ball of radius D_j around R_j,
    and W = Phi + 2 a b2 / D_j inside it, for x in the cell of nucleus j.
    """
    if not b2 > 0:
        raise ValueError('b2 must be positive')
    if config.K == 1:
        raise ValueError('W needs at least two nuclei: the ball around a lone nucleus is unbounded')
    points, single = _as_points(x)
    phi, j, own = _phi(points, config)
    D = half_distances(config).D[j]
    inside = own < D
    with np.errstate(divide='ignore'):
        outside_value = np.where(inside, 0.0, config.charges[j] / np.where(inside, 1.0, own))
    w = phi + np.where(inside, 2 * a * b2 / D, outside_value)
    return float(w[0]) if single else w

def load_config(filename):
    """
    Read a JSON molecule file of the form
    ``{"lambda": ..., "alpha": ..., "nuclei": [{"z": ..., "position": [x, y, z]}, ...]}``.
    Returns (lam, alpha, config); alpha is None if absent. Every problem
    found is reported in the raised :class:`ConfigError`.
    """
    try:
        with open(filename) as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(['file: {}'.format(e)])
    return parse_config(data)

def parse_config(data):
    """
    Validate the dictionary form of a molecule file. See :func:`load_config`.
    """
    problems = []
    if not isinstance(data, dict):
        raise ConfigError(['top level: expected an object'])

    def number(key, where, positive=True):
        try:
            value = parse_number(where[key])
        except KeyError:
            problems.append('{}: missing'.format(key))
            return None
        except ValueError:
            problems.append('{}: not a number ({!r})'.format(key, where[key]))
            return None
        if not np.isfinite(value):
            problems.append('{}: must be finite ({})'.format(key, value))
            return None
        if positive and not value > 0:
            problems.append('{}: must be positive ({})'.format(key, value))
            return None
        return value

    lam = number('lambda', data)
    alpha = number('alpha', data) if 'alpha' in data else None

    nuclei = []
    entries = data.get('nuclei')
    if not isinstance(entries, list) or len(entries) == 0:
        problems.append('nuclei: expected a nonempty list')
        entries = []
    for i, entry in enumerate(entries):
        prefix = 'nuclei[{}]'.format(i)
        if not isinstance(entry, dict):
            problems.append('{}: expected an object'.format(prefix))
            continue
        try:
            z = parse_number(entry['z'])
            if not np.isfinite(z):
                problems.append('{}.z: must be finite ({})'.format(prefix, z))
                z = None
            elif not z >= 0:
                problems.append('{}.z: must be nonnegative ({})'.format(prefix, z))
                z = None
        except KeyError:
            problems.append('{}.z: missing'.format(prefix))
            z = None
        except ValueError:
            problems.append('{}.z: not a number ({!r})'.format(prefix, entry['z']))
            z = None
        position = entry.get('position')
        try:
            R = np.array([parse_number(c) for c in position], dtype=float)
            if R.shape != (3,) or not np.all(np.isfinite(R)):
                raise ValueError
        except (TypeError, ValueError):
            problems.append('{}.position: expected 3 finite numbers ({!r})'.format(prefix, position))
            R = None
        if z is not None and R is not None:
            nuclei.append((i, Nucleus(z, R)))

    if not problems:
        positions = np.array([n.R for _, n in nuclei])
        for i, j in coincident_pairs(positions):
            problems.append('nuclei[{}] and nuclei[{}]: coincident positions'.format(nuclei[i][0], nuclei[j][0]))
    if problems:
        raise ConfigError(problems)
    return lam, alpha, MoleculeConfig([n for _, n in nuclei])
