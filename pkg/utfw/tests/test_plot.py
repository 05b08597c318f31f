#!/usr/bin/env python3

import unittest
import os
import tempfile
import logging
import matplotlib.pyplot as plt
from utfw.plot import plot_bounds

#logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

class PlotTests(unittest.TestCase):

    def test_plot_bounds(self):
        """
        Just make sure the plots run without errors.
        """
        with tempfile.TemporaryDirectory() as tmp:
            filename = os.path.join(tmp, 'bounds.png')
            plot_bounds(nlam=20, savefig=filename, show=False)
            self.assertGreater(os.path.getsize(filename), 0)
            plt.close()
            plot_bounds(nlam=5, alpha=0.01, show=False)
            plt.close()

    def test_invalid_range(self):
        with self.assertRaises(ValueError):
            plot_bounds(lam_min=0.5, lam_max=0.1, show=False)

if __name__ == "__main__":
    unittest.main()
