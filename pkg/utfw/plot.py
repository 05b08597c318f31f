"""
This module contains a function to plot the critical charges as a
function of the Weizsacker coefficient lambda.
"""

import logging
import numpy as np
import matplotlib.pyplot as plt
from .util import ALPHA_PHYSICAL
from .utfw import Utfw
from .configurations import lambdas, quoted_bounds

#logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

def plot_bounds(lam_min=0.05, lam_max=1.0, nlam=100, alpha=ALPHA_PHYSICAL,
                newfigure=True, savefig=None, show=True):
    """
    Plot the atomic lower and upper bounds and the molecular bound
    z_max versus lambda. If alpha is the physical value, the integer
    bounds quoted for the named values of lambda are marked.

    Args:
        lam_min, lam_max: range of lambda.
        nlam: number of values of lambda.
        alpha: fine structure constant.
        newfigure: Whether to create a new matplotlib figure.
        savefig: Filename to save the figure to. If ``None``, the figure is not saved.
        show: Whether to call matplotlib's ``show()`` function after making the plot.
    """
    if not 0 < lam_min < lam_max:
        raise ValueError('Need 0 < lam_min < lam_max')
    lams = np.linspace(lam_min, lam_max, nlam)
    lower = np.zeros(nlam)
    upper = np.zeros(nlam)
    z_max = np.zeros(nlam)
    for j, lam in enumerate(lams):
        model = Utfw(lam, alpha)
        bounds = model.atomic_bounds()
        lower[j] = bounds.lower
        upper[j] = bounds.upper
        z_max[j] = model.molecular_x_root().z_max

    if newfigure:
        fig = plt.figure(figsize=(6, 4.5))
    else:
        fig = plt.gcf()
    plt.plot(lams, lower, label='atomic lower bound 4ab/3' + r'$\alpha$')
    plt.plot(lams, upper, ':', label='atomic upper bound')
    plt.plot(lams, z_max, '--', label='molecular bound ' + r'$z_{max}$')
    if abs(alpha - ALPHA_PHYSICAL) <= 1e-12 * ALPHA_PHYSICAL:
        for name, quoted in quoted_bounds.items():
            lam = lambdas[name]
            if lam_min <= lam <= lam_max:
                plt.plot(lam, quoted['atomic'], 'ko', markersize=4)
                plt.plot(lam, quoted['molecular'], 'kx', markersize=5)
                plt.annotate(name, (lam, quoted['atomic']), textcoords='offset points', xytext=(4, 4), fontsize=7)
    plt.xlabel(r'$\lambda$')
    plt.ylabel('nuclear charge z')
    plt.title(r'$\alpha$ = {:.6g}'.format(alpha))
    plt.legend(loc=0, fontsize=8)
    plt.tight_layout()
    if savefig is not None:
        fig.savefig(savefig)
        logger.info('Saved figure to {}'.format(savefig))
    if show:
        plt.show()
