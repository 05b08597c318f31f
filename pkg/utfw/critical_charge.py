"""
This module contains the routines for the critical nuclear charges:
the atomic stability window, the total-charge condition, and the
per-nucleus bound for molecules.
"""

import logging
import numpy as np
import scipy.optimize
from .util import Struct, ALPHA_PHYSICAL
from .configurations import quoted_for_lambda, lambda_label

#logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

# Bracket and iteration cap for the root of (1 - x) / x^3 = rhs
X_BRACKET = (1e-12, 1 - 1e-12)
MAXITER = 200

class AtomicBounds(Struct):
    """
    lower = 4ab / (3 alpha), gap = 7 pi a^3 / (6 b^3), upper = lower + gap.
    """
    pass

class MolecularBound(Struct):
    """
    Root x of (1 - x) / x^3 = rhs, the resulting per-nucleus bound
    z_max = (4ab / 3 alpha) sqrt(1 - x), and the split b^2 = b1^2 + b2^2.
    """
    pass

def atomic_bounds(self):
    """
    Bounds on the critical charge of an atom. The atom is stable
    (inf xi = 0) for z < lower and unstable (inf xi = -infinity) for
    z > upper.
    """
    lower = self.charge_scale
    gap = 7 * np.pi * self.a ** 3 / (6 * self.b ** 3)
    return AtomicBounds(lower=lower,
                        gap=gap,
                        upper=lower + gap,
                        # Same as lower when a and b come from lambda:
                        lower_from_lambda=np.sqrt(1.5 * self.lam) / self.alpha,
                        # Alternative form 7 pi a^3 / (3 b^6) of the gap; it
                        # does not reproduce (7 / 12 pi) sqrt(3 lambda^3 / 2).
                        gap_alt=7 * np.pi * self.a ** 3 / (3 * self.b ** 6))

def total_charge_stable(self, Z):
    """
    Sufficient stability condition that ignores the nuclear repulsion:
    True iff Z = sum_i z_i <= 4ab / (3 alpha). ``Z`` can be a number or a
    :class:`~utfw.geometry.MoleculeConfig`.
    """
    if hasattr(Z, 'total_charge'):
        Z = Z.total_charge
    if Z < 0:
        raise ValueError('Total charge must be nonnegative, got {}'.format(Z))
    return bool(Z <= self.charge_scale)

def molecular_rhs(self):
    """
    Right side of (1 - x) / x^3 = (b^4 / a^2) (4/3)^2 / (2 pi alpha (4 + 9 alpha^4)).
    """
    alpha = self.alpha
    return (self.b_squared * self.b_squared / self.a_squared) * (4 / 3) ** 2 / (2 * np.pi * alpha * (4 + 9 * alpha ** 4))

def molecular_x_root(self):
    """
    Solve (1 - x) / x^3 = rhs for x in (0, 1) by bisection. The left side
    decreases strictly from +infinity to 0 on (0, 1), so the root is
    unique. Each nucleus of a molecule is stable if z_i <= z_max.
    """
    rhs = molecular_rhs(self)

    def residual(x):
        return (1 - x) / (x * x * x) - rhs

    logger.info('Bisection for x in {} with rhs={}'.format(X_BRACKET, rhs))
    x_root = scipy.optimize.bisect(residual, X_BRACKET[0], X_BRACKET[1],
                                   xtol=1e-16, rtol=4 * np.finfo(float).eps, maxiter=MAXITER)
    z_max = self.charge_scale * np.sqrt(1 - x_root)
    b2 = 3 * self.alpha * z_max / (4 * self.a)
    b1 = np.sqrt(self.b_squared - b2 * b2)
    bound = MolecularBound(x_root=x_root, z_max=z_max, rhs=rhs, b1=b1, b2=b2,
                           residual=residual(x_root) / rhs)
    logger.info('x_root={} z_max={} relative residual={}'.format(x_root, z_max, bound.residual))
    return bound

def d25_sides(self, b1):
    """
    Return the two sides of a^2 (b^2 - b1^2) / b1^6 <= (4/3)^2 / (2 pi (4 alpha + 9 alpha^5)).
    """
    if not 0 < b1 < self.b:
        raise ValueError('b1 must lie in (0, b) = (0, {}), got {}'.format(self.b, b1))
    alpha = self.alpha
    lhs = self.a_squared * (self.b_squared - b1 * b1) / b1 ** 6
    rhs = (4 / 3) ** 2 / (2 * np.pi * (4 * alpha + 9 * alpha ** 5))
    return lhs, rhs

def d25_condition(self, b1, rtol=0.0):
    """
    True if the split b^2 = b1^2 + b2^2 with b2 cancelling the Coulomb
    singularity gives a nonnegative stability margin M. The left side
    decreases in b1, so the condition is False below the equality point
    and True above it.
    """
    lhs, rhs = d25_sides(self, b1)
    return bool(lhs <= rhs * (1 + rtol))

def compare_to_quoted(self):
    """
    Juxtapose the computed bounds with the integers quoted for this lambda
    (only available for the physical alpha = 1/137). Differences larger
    than 1 are flagged.
    """
    bounds = atomic_bounds(self)
    molecular = molecular_x_root(self)
    name, quoted = quoted_for_lambda(self.lam)
    if abs(self.alpha - ALPHA_PHYSICAL) > 1e-12 * ALPHA_PHYSICAL:
        name, quoted = None, None
    row = Struct(lam=self.lam,
                 label=lambda_label(self.lam),
                 name=name,
                 atomic_lower=bounds.lower,
                 atomic_upper=bounds.upper,
                 gap=bounds.gap,
                 molecular_z_max=molecular.z_max,
                 x_root=molecular.x_root,
                 quoted_atomic=None,
                 quoted_molecular=None,
                 atomic_difference=None,
                 molecular_difference=None,
                 flagged=False)
    if quoted is not None:
        row.quoted_atomic = quoted['atomic']
        row.quoted_molecular = quoted['molecular']
        row.atomic_difference = quoted['atomic'] - bounds.lower
        row.molecular_difference = quoted['molecular'] - molecular.z_max
        row.flagged = bool(abs(row.molecular_difference) > 1 or abs(row.atomic_difference) > 1)
        if row.flagged:
            logger.info('lambda={}: computed molecular bound {:.3f} differs from the quoted {} by more than 1'.format(
                row.label, molecular.z_max, quoted['molecular']))
    return row

def bounds_table(lams, alpha=ALPHA_PHYSICAL):
    """
    Rows of :meth:`Utfw.compare_to_quoted` for several values of lambda.
    """
    from .utfw import Utfw
    return [Utfw(lam, alpha).compare_to_quoted() for lam in lams]
