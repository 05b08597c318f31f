#!/usr/bin/env python3

import unittest
import numpy as np
import logging
from utfw.utfw import Utfw
from utfw.geometry import MoleculeConfig
from utfw.critical_charge import bounds_table, molecular_rhs, d25_sides

#logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

lams = [1 / 9, 1 / 5, 0.185]

class AtomicBoundsTests(unittest.TestCase):

    def test_lower_closed_form(self):
        for lam in lams + [1.0, 0.03]:
            for alpha in [1 / 137, 0.01, 0.5]:
                bounds = Utfw(lam, alpha).atomic_bounds()
                np.testing.assert_allclose(bounds.lower, np.sqrt(1.5 * lam) / alpha, rtol=1e-9)
                np.testing.assert_allclose(bounds.lower_from_lambda, bounds.lower, rtol=1e-12)

    def test_values(self):
        """
        Values for alpha = 1/137.
        """
        self.assertAlmostEqual(Utfw(1 / 9).atomic_bounds().lower, 55.93, delta=0.01)
        self.assertAlmostEqual(Utfw(1 / 5).atomic_bounds().lower, 75.04, delta=0.01)
        self.assertAlmostEqual(Utfw(0.185).atomic_bounds().lower, 72.17, delta=0.01)
        bounds = Utfw(0.2, 0.0072992700729927).atomic_bounds()
        self.assertAlmostEqual(bounds.lower, 75.04, delta=0.01)
        self.assertAlmostEqual(bounds.gap, 0.0203, delta=1e-4)
        self.assertAlmostEqual(bounds.upper, 75.06, delta=0.01)

    def test_gap(self):
        for lam in lams:
            bounds = Utfw(lam).atomic_bounds()
            np.testing.assert_allclose(bounds.gap, 7 / (12 * np.pi) * np.sqrt(1.5 * lam ** 3), rtol=1e-9)
            self.assertLess(bounds.gap, 0.021)
            self.assertEqual(bounds.upper, bounds.lower + bounds.gap)
            # The alternative expression is reported but differs
            self.assertGreater(abs(bounds.gap_alt - bounds.gap), 1e-3 * bounds.gap)

    def test_total_charge_stable(self):
        model = Utfw(0.2)
        lower = model.atomic_bounds().lower
        self.assertTrue(model.total_charge_stable(lower))
        self.assertTrue(model.total_charge_stable(0))
        self.assertFalse(model.total_charge_stable(lower * (1 + 1e-9)))
        config = MoleculeConfig.from_arrays([30, 40], [[0, 0, 0], [0, 0, 3]])
        self.assertTrue(model.total_charge_stable(config))
        config = MoleculeConfig.from_arrays([30, 50], [[0, 0, 0], [0, 0, 3]])
        self.assertFalse(model.total_charge_stable(config))
        with self.assertRaises(ValueError):
            model.total_charge_stable(-1)

class MolecularBoundTests(unittest.TestCase):

    def test_residual(self):
        for lam in lams + [1.0]:
            for alpha in [1 / 137, 0.05]:
                model = Utfw(lam, alpha)
                bound = model.molecular_x_root()
                self.assertLess(abs(bound.residual), 1e-9)
                x = bound.x_root
                np.testing.assert_allclose((1 - x) / x ** 3, molecular_rhs(model), rtol=1e-9)
                self.assertTrue(0 < x < 1)
                self.assertLess(bound.z_max, model.atomic_bounds().lower)
                np.testing.assert_allclose(bound.b1 ** 2 + bound.b2 ** 2, model.b_squared, rtol=1e-12)

    def test_values(self):
        bound = Utfw(1 / 9).molecular_x_root()
        self.assertAlmostEqual(bound.x_root, 0.0890, delta=1e-3)
        self.assertAlmostEqual(bound.z_max, 53.4, delta=0.1)
        self.assertAlmostEqual(bound.rhs, 1291, delta=2)
        self.assertAlmostEqual(Utfw(0.2).molecular_x_root().z_max, 70.9, delta=0.1)
        self.assertAlmostEqual(Utfw(0.185).molecular_x_root().z_max, 68.3, delta=0.1)

    def test_z_max_increasing(self):
        z_max = [Utfw(lam).molecular_x_root().z_max for lam in np.linspace(0.02, 1.0, 50)]
        self.assertTrue(np.all(np.diff(z_max) > 0))
        for alpha in [0.01, 0.1]:
            z_max = [Utfw(lam, alpha).molecular_x_root().z_max for lam in lams]
            self.assertLess(z_max[0], z_max[2])
            self.assertLess(z_max[2], z_max[1])

    def test_d25_equality_point(self):
        """
        Both sides are equal at b1 = b sqrt(x) for the root x.
        """
        for lam in lams + [1.0]:
            for alpha in [1 / 137, 0.05]:
                model = Utfw(lam, alpha)
                bound = model.molecular_x_root()
                b1 = model.b * np.sqrt(bound.x_root)
                np.testing.assert_allclose(b1, bound.b1, rtol=1e-9)
                lhs, rhs = d25_sides(model, b1)
                np.testing.assert_allclose(lhs, rhs, rtol=1e-9)

    def test_d25_condition(self):
        """
        The condition switches from False to True at the b1 of the molecular bound.
        """
        for lam in lams:
            model = Utfw(lam)
            b1 = model.molecular_x_root().b1
            self.assertTrue(model.d25_condition(b1 * (1 + 1e-6)))
            self.assertFalse(model.d25_condition(b1 * (1 - 1e-6)))
            self.assertTrue(model.d25_condition(0.999 * model.b))
            self.assertFalse(model.d25_condition(0.01 * model.b))
        model = Utfw(0.2)
        for b1 in [0, -1, model.b, 2 * model.b]:
            with self.assertRaises(ValueError):
                model.d25_condition(b1)

    def test_compare_to_quoted(self):
        row = Utfw(1 / 9).compare_to_quoted()
        self.assertEqual(row.name, 'kirzhnits')
        self.assertEqual(row.label, '1/9')
        self.assertEqual(row.quoted_molecular, 55)
        self.assertEqual(row.quoted_atomic, 56)
        self.assertTrue(row.flagged)
        self.assertAlmostEqual(row.molecular_difference, 55 - 53.38, delta=0.05)
        self.assertLess(abs(row.atomic_difference), 1)

        row = Utfw(0.185).compare_to_quoted()
        self.assertEqual(row.quoted_molecular, 71)
        self.assertEqual(Utfw(0.2).compare_to_quoted().quoted_molecular, 74)

        row = Utfw(0.5).compare_to_quoted()
        self.assertIsNone(row.name)
        self.assertIsNone(row.quoted_molecular)
        self.assertFalse(row.flagged)
        # Quoted values only apply to the physical alpha
        self.assertIsNone(Utfw(0.2, 0.01).compare_to_quoted().quoted_atomic)

    def test_bounds_table(self):
        table = bounds_table(lams)
        self.assertEqual([row.label for row in table], ['1/9', '1/5', '0.185'])
        self.assertEqual([row.quoted_molecular for row in table], [55, 74, 71])

if __name__ == "__main__":
    unittest.main()
