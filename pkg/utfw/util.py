#!/usr/bin/env python3

"""
Various utility functions and constants.
"""

import logging
from fractions import Fraction
import numpy as np

#logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

# Physical value of the fine structure constant used as the default everywhere.
ALPHA_PHYSICAL = 1 / 137

# (3 pi^2)^(1/3), which appears in both a^2 and b^2
THREE_PI2_CBRT = (3 * np.pi * np.pi) ** (1 / 3)

# a^2 = A2_PER_LAMBDA * lambda
A2_PER_LAMBDA = 3 / (8 * np.pi * np.pi) * THREE_PI2_CBRT ** 2

# b^2 does not depend on lambda
B2_CONSTANT = 0.75 * THREE_PI2_CBRT

class Struct():
    """
    This class is just a mutable object to which we can attach
    attributes. Results of the calculations (bounds, certificates,
    search results) are returned as Structs so they can be printed and
    serialized uniformly.
    """
    def __init__(self, **kwargs):
        self.__dict__.update(kwargs)

    def __repr__(self):
        items = ', '.join('{}={!r}'.format(k, v) for k, v in self.__dict__.items())
        return '{}({})'.format(type(self).__name__, items)

    def __eq__(self, other):
        return type(self) == type(other) and to_jsonable(self) == to_jsonable(other)

    def to_dict(self):
        return to_jsonable(self)

    @classmethod
    def from_dict(cls, d):
        return cls(**{k: from_jsonable(v) for k, v in d.items()})

def to_jsonable(obj):
    """
    Convert Structs, numpy scalars/arrays and infinities into plain
    python objects that the json module can write. Infinity is written
    as the string "unbounded" (the half-distance of a lone nucleus).
    """
    if isinstance(obj, Struct):
        return {k: to_jsonable(v) for k, v in obj.__dict__.items()}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        if np.isinf(obj) and obj > 0:
            return "unbounded"
        return float(obj)
    return obj

def from_jsonable(obj):
    """
    Inverse of :func:`to_jsonable` for the values produced there. Nested
    dicts are turned back into Structs.
    """
    if isinstance(obj, dict):
        return Struct.from_dict(obj)
    if isinstance(obj, list):
        return [from_jsonable(v) for v in obj]
    if obj == "unbounded":
        return np.inf
    return obj

def parse_number(text):
    """
    Parse a number given on the command line or in a config file. Plain
    decimals and fractions such as ``1/9`` are accepted.
    """
    if isinstance(text, (int, float, np.integer, np.floating)):
        return float(text)
    try:
        return float(Fraction(str(text).strip()))
    except (ValueError, ZeroDivisionError):
        raise ValueError('Could not parse a number from {!r}'.format(text))

def require_positive(**kwargs):
    """
    Raise ValueError if any of the named values is not strictly positive
    (or not finite).
    """
    for name, value in kwargs.items():
        if not np.isfinite(value) or value <= 0:
            raise ValueError('{} must be positive, got {}'.format(name, value))
