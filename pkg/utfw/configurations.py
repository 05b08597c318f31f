"""
This module contains the named choices of the Weizsacker coefficient
lambda, and the integer stability bounds quoted for them in the
literature.
"""

from fractions import Fraction

# Named values of lambda
lambdas = {
    "weizsacker": 1.0,
    "kirzhnits": 1 / 9,
    "tomishima-yonei": 1 / 5,
    "lieb": 0.185,
}

# Integer bounds quoted for the physical alpha = 1/137: the atom is
# stable if z < atomic, the molecule is stable if each z_i <= molecular.
quoted_bounds = {
    "kirzhnits": {"atomic": 56, "molecular": 55},
    "tomishima-yonei": {"atomic": 75, "molecular": 74},
    "lieb": {"atomic": 73, "molecular": 71},
}

configurations = list(lambdas.keys())

def quoted_for_lambda(lam, rtol=1e-9):
    """
    Return the name and the quoted integer bounds for a value of lambda,
    or (None, None) if no bounds were quoted for it.
    """
    for name, bounds in quoted_bounds.items():
        if abs(lambdas[name] - lam) <= rtol * lambdas[name]:
            return name, bounds
    return None, None

def lambda_label(lam):
    """
    Short label for a value of lambda, e.g. "1/9" or "0.185".
    """
    frac = Fraction(lam).limit_denominator(100)
    if frac.denominator != 1 and abs(float(frac) - lam) < 1e-12:
        return '{}/{}'.format(frac.numerator, frac.denominator)
    return '{:g}'.format(lam)

@classmethod
def from_paper(cls, name, **kwargs):
    """
    Get the model for one of the named choices of lambda. Available
    values for ``name`` are::

       "weizsacker"       lambda = 1
       "kirzhnits"        lambda = 1/9 (gradient expansion)
       "tomishima-yonei"  lambda = 1/5
       "lieb"             lambda = 0.185 (fitted to the Scott correction)

    The list is also available as :obj:`Utfw.configurations`. Any
    other argument of the constructor (i.e. ``alpha``) can be given in
    ``kwargs``:

    .. code-block::

      model = utfw.Utfw.from_paper('lieb', alpha=1/137)
    """
    if name not in lambdas:
        raise ValueError('Unrecognized configuration name {!r}. Available: {}'.format(name, configurations))
    return cls(lambdas[name], **kwargs)
