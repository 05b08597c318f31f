#!/usr/bin/env python3

import unittest
import os
import json
import tempfile
import numpy as np
from scipy.spatial.distance import pdist
from hypothesis import given, settings, assume
import hypothesis.strategies as st
import logging
from utfw.geometry import Nucleus, MoleculeConfig, ConfigError, nuclear_repulsion, half_distances, \
    cell_index, phi_at, w_at, load_config, parse_config

#logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

def two_unit_charges(d=2.0):
    return MoleculeConfig.from_arrays(1.0, [[0, 0, 0], [d, 0, 0]])

class MoleculeConfigTests(unittest.TestCase):

    def test_construct(self):
        config = MoleculeConfig([Nucleus(2, [0, 0, 0]), Nucleus(3.5, [1, 0, 0])])
        self.assertEqual(config.K, 2)
        self.assertEqual(len(config), 2)
        self.assertEqual(config.total_charge, 5.5)
        np.testing.assert_array_equal(config.charges, [2, 3.5])
        with self.assertRaises(ValueError):
            Nucleus(-1, [0, 0, 0])
        with self.assertRaises(ValueError):
            Nucleus(np.inf, [0, 0, 0])
        with self.assertRaises(ValueError):
            Nucleus(1, [0, 0])
        with self.assertRaises(ValueError):
            MoleculeConfig([])
        with self.assertRaises(ValueError) as context:
            MoleculeConfig.from_arrays(1, [[0, 0, 0], [1, 0, 0], [0, 0, 0]])
        self.assertIn('0 and 2', str(context.exception))

    def test_nuclear_repulsion(self):
        alpha = 1 / 137
        self.assertEqual(nuclear_repulsion(MoleculeConfig.from_arrays(5, [[0, 0, 0]]), alpha), 0.0)
        self.assertAlmostEqual(nuclear_repulsion(two_unit_charges(1.0), alpha), alpha, places=15)
        triangle = [[0, 0, 0], [1, 0, 0], [0.5, np.sqrt(3) / 2, 0]]
        self.assertAlmostEqual(nuclear_repulsion(MoleculeConfig.from_arrays(1, triangle), alpha), 3 * alpha, places=14)
        config = MoleculeConfig.from_arrays([2, 3, 5], [[0, 0, 0], [0, 0, 1], [0, 0, 3]])
        self.assertAlmostEqual(nuclear_repulsion(config, 1.0), 6 + 10 / 3 + 15 / 2, places=13)

    def test_half_distances(self):
        self.assertEqual(half_distances(MoleculeConfig.from_arrays(1, [[0, 0, 0]])).D[0], np.inf)
        np.testing.assert_allclose(half_distances(two_unit_charges(3.0)).D, [1.5, 1.5])
        config = MoleculeConfig.from_arrays(1, [[0, 0, 0], [1, 0, 0], [3, 0, 0]])
        np.testing.assert_allclose(half_distances(config).D, [0.5, 0.5, 1.0])

    @settings(max_examples=100, deadline=None)
    @given(st.data())
    def test_scaling_and_permutation(self, data):
        n = data.draw(st.integers(min_value=2, max_value=6))
        coordinate = st.floats(min_value=-10, max_value=10)
        positions = np.array(data.draw(st.lists(st.tuples(coordinate, coordinate, coordinate),
                                                min_size=n, max_size=n)))
        assume(np.min(pdist(positions)) > 0.1)
        charges = np.array(data.draw(st.lists(st.floats(min_value=0, max_value=100), min_size=n, max_size=n)))
        scale = data.draw(st.floats(min_value=0.1, max_value=10))
        perm = data.draw(st.permutations(range(n)))

        config = MoleculeConfig.from_arrays(charges, positions)
        scaled = MoleculeConfig.from_arrays(charges, scale * positions)
        np.testing.assert_allclose(half_distances(scaled).D, scale * half_distances(config).D, rtol=1e-12)
        np.testing.assert_allclose(nuclear_repulsion(scaled, 1.0), nuclear_repulsion(config, 1.0) / scale,
                                   rtol=1e-12)
        permuted = MoleculeConfig.from_arrays(charges[perm], positions[perm])
        np.testing.assert_allclose(half_distances(permuted).D, half_distances(config).D[perm], rtol=1e-12)
        np.testing.assert_allclose(nuclear_repulsion(permuted, 1.0), nuclear_repulsion(config, 1.0), rtol=1e-12)

    def test_cell_index(self):
        config = two_unit_charges(2.0)
        self.assertEqual(cell_index([0, 0, 0], config), 0)
        self.assertEqual(cell_index([2, 0, 0], config), 1)
        # Tie goes to the lowest index
        self.assertEqual(cell_index([1, 0, 0], config), 0)
        self.assertEqual(cell_index([1.5, 0, 0], config), 1)
        np.testing.assert_array_equal(cell_index(np.array([[0, 0, 0], [1, 5, 0], [10, 0, 0]]), config), [0, 0, 1])

    def test_phi(self):
        config = two_unit_charges(2.0)
        self.assertAlmostEqual(phi_at([0, 0, 0], config), 0.5, places=15)
        self.assertAlmostEqual(phi_at([1, 0, 0], config), 1.0, places=15)
        self.assertEqual(phi_at([3, 4, 5], MoleculeConfig.from_arrays(7, [[0, 0, 0]])), 0.0)
        config = MoleculeConfig.from_arrays([2, 3], [[0, 0, -1], [0, 0, 1]])
        self.assertAlmostEqual(phi_at([0, 0, -0.5], config), 3 / 1.5, places=14)
        self.assertAlmostEqual(phi_at([0, 0, 0.5], config), 2 / 1.5, places=14)
        # At a nucleus only the others contribute
        config = MoleculeConfig.from_arrays([2, 3, 5], [[0, 0, 0], [0, 0, 2], [0, 4, 0]])
        np.testing.assert_allclose(phi_at(config.positions, config), [3 / 2 + 5 / 4, 2 / 2 + 5 / np.sqrt(20), 2 / 4 + 3 / np.sqrt(20)], rtol=1e-14)

    def test_w(self):
        a, b2 = 0.3, 0.7
        config = two_unit_charges(2.0)
        x = np.array([0, 0, 0])
        self.assertAlmostEqual(w_at(x, config, a, b2) - phi_at(x, config), 2 * a * b2, places=14)
        x = np.array([-2, 0, 0])
        self.assertAlmostEqual(w_at(x, config, a, b2) - phi_at(x, config), 0.5, places=14)
        rng = np.random.default_rng(0)
        points = rng.uniform(-3, 5, (200, 3))
        D = half_distances(config).D
        diff = w_at(points, config, a, b2) - phi_at(points, config)
        self.assertTrue(np.all(diff >= 0))
        self.assertLessEqual(np.max(diff), max(2 * a * b2 / D[0], 1 / D[0]) + 1e-12)
        with self.assertRaises(ValueError):
            w_at(x, config, a, 0)
        with self.assertRaises(ValueError):
            w_at(x, MoleculeConfig.from_arrays(1, [[0, 0, 0]]), a, b2)

class ConfigFileTests(unittest.TestCase):

    def test_parse(self):
        lam, alpha, config = parse_config({'lambda': '1/5', 'alpha': '1/137', 'nuclei': [
            {'z': 50, 'position': [0, 0, -1]}, {'z': 50, 'position': [0, 0, 1]}]})
        self.assertAlmostEqual(lam, 0.2, places=15)
        self.assertAlmostEqual(alpha, 1 / 137, places=15)
        self.assertEqual(config.K, 2)
        lam, alpha, config = parse_config({'lambda': 0.2, 'nuclei': [{'z': 1, 'position': [0, 0, 0]}]})
        self.assertIsNone(alpha)

    def test_problems(self):
        with self.assertRaises(ConfigError) as context:
            parse_config({'alpha': -1, 'nuclei': [{'z': 'x', 'position': [0, 0]}, {'position': [0, 0, 0]}]})
        problems = context.exception.problems
        self.assertTrue(any(p.startswith('lambda') for p in problems))
        self.assertTrue(any(p.startswith('alpha') for p in problems))
        self.assertTrue(any(p.startswith('nuclei[0].z') for p in problems))
        self.assertTrue(any(p.startswith('nuclei[0].position') for p in problems))
        self.assertTrue(any(p.startswith('nuclei[1].z') for p in problems))

        with self.assertRaises(ConfigError) as context:
            parse_config({'lambda': 0.2, 'nuclei': [{'z': 1, 'position': [0, 0, 0]},
                                                    {'z': 1, 'position': [1, 0, 0]},
                                                    {'z': 1, 'position': [0, 0, 0]}]})
        self.assertEqual(context.exception.problems, ['nuclei[0] and nuclei[2]: coincident positions'])

        with self.assertRaises(ConfigError):
            parse_config([1, 2, 3])
        with self.assertRaises(ConfigError):
            parse_config({'lambda': 0.2, 'nuclei': []})

    def test_non_finite(self):
        with self.assertRaises(ConfigError) as context:
            parse_config({'lambda': 0.2, 'nuclei': [{'z': float('inf'), 'position': [0, 0, 0]},
                                                    {'z': float('nan'), 'position': [1, 0, 0]}]})
        self.assertEqual(context.exception.problems, ['nuclei[0].z: must be finite (inf)', 'nuclei[1].z: must be finite (nan)'])
        with self.assertRaises(ConfigError) as context:
            parse_config(json.loads('{"lambda": Infinity, "nuclei": [{"z": 1, "position": [0, 0, 0]}]}'))
        self.assertEqual(context.exception.problems, ['lambda: must be finite (inf)'])

    def test_load(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            filename = os.path.join(tmpdir, 'molecule.json')
            with open(filename, 'w') as f:
                json.dump({'lambda': 0.185, 'nuclei': [{'z': 10, 'position': [0, 0, 0]}]}, f)
            lam, alpha, config = load_config(filename)
            self.assertEqual(lam, 0.185)
            self.assertEqual(config.charges[0], 10)
            with open(filename, 'w') as f:
                f.write('{"lambda": 0.2, ')
            with self.assertRaises(ConfigError):
                load_config(filename)
            with self.assertRaises(ConfigError):
                load_config(os.path.join(tmpdir, 'missing.json'))

if __name__ == "__main__":
    unittest.main()
