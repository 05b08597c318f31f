"""
This module contains the top-level class for the ultrarelativistic
Thomas-Fermi-Weizsacker (UTFW) model.
"""

import logging
import numpy as np
from .util import ALPHA_PHYSICAL, A2_PER_LAMBDA, B2_CONSTANT, require_positive

#logging.basicConfig(level=logging.DEBUG)
logger = logging.getLogger(__name__)

class Utfw():
    """
    This is the main class for representing the UTFW energy functional

    .. math::

       \\xi(\\rho) = a^2 \\int (\\nabla \\rho^{1/3})^2 + b^2 \\int \\rho^{4/3}
                    - \\int V \\rho + D(\\rho, \\rho)

    in units with hbar = c = 1. An instance holds the constants
    ``lam`` (the Weizsacker coefficient lambda), ``alpha``, ``a`` and ``b``,
    and is not modified after construction.
    """

    # Import methods that are defined in separate files:
    from .energy import weizsacker_term, tf_term, attraction_term_atomic, \
        hartree_radial, atomic_energy
    from .critical_charge import atomic_bounds, total_charge_stable, \
        molecular_x_root, d25_condition, compare_to_quoted
    from .certificate import certify
    from .instability import scaling_check, search_negative, molecular_trial_terms, molecular_trial_energy, \
        search_negative_molecular
    from .configurations import from_paper, configurations

    def __init__(self, lam, alpha=ALPHA_PHYSICAL):
        """
        Create the model from the Weizsacker coefficient lambda, with
        a^2 = (3 / 8 pi^2) (3 pi^2)^(2/3) lambda and b^2 = (3/4) (3 pi^2)^(1/3).
        """
        lam = float(lam)
        alpha = float(alpha)
        require_positive(lam=lam, alpha=alpha)
        self._set(lam, alpha, np.sqrt(A2_PER_LAMBDA * lam), np.sqrt(B2_CONSTANT))

    def _set(self, lam, alpha, a, b):
        object.__setattr__(self, 'lam', lam)
        object.__setattr__(self, 'alpha', alpha)
        object.__setattr__(self, 'a', a)
        object.__setattr__(self, 'b', b)
        logger.debug('Created {}'.format(self))

    def __setattr__(self, name, value):
        raise AttributeError('Utfw objects are immutable')

    @classmethod
    def from_lambda(cls, lam, alpha=ALPHA_PHYSICAL):
        """
        Same as the constructor.
        """
        return cls(lam, alpha)

    @classmethod
    def from_ab(cls, a, b, alpha=ALPHA_PHYSICAL):
        """
        Create the model with arbitrary positive constants a and b. The
        recorded ``lam`` is the value that would give this a, namely
        a^2 / ((3 / 8 pi^2) (3 pi^2)^(2/3)).
        """
        a = float(a)
        b = float(b)
        alpha = float(alpha)
        require_positive(a=a, b=b, alpha=alpha)
        self = cls.__new__(cls)
        self._set(a * a / A2_PER_LAMBDA, alpha, a, b)
        return self

    @property
    def a_squared(self):
        return self.a * self.a

    @property
    def b_squared(self):
        return self.b * self.b

    @property
    def charge_scale(self):
        """
        The recurring charge 4ab / (3 alpha): the atomic lower bound of
        the critical charge.
        """
        return 4 * self.a * self.b / (3 * self.alpha)

    def __repr__(self):
        return 'Utfw(lam={!r}, alpha={!r}, a={!r}, b={!r})'.format(self.lam, self.alpha, self.a, self.b)

    def __eq__(self, other):
        return isinstance(other, Utfw) and self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash((self.lam, self.alpha, self.a, self.b))

    def __reduce__(self):
        return (Utfw.from_dict, (self.to_dict(),))

    def to_dict(self):
        return {'lambda': self.lam, 'alpha': self.alpha, 'a': self.a, 'b': self.b}

    @classmethod
    def from_dict(cls, d):
        """
        Rebuild the model from the dictionary written by :meth:`to_dict`.
        """
        lam, alpha, a, b = (float(d[key]) for key in ['lambda', 'alpha', 'a', 'b'])
        require_positive(lam=lam, alpha=alpha, a=a, b=b)
        self = cls.__new__(cls)
        self._set(lam, alpha, a, b)
        return self
