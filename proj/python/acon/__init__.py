"""Pseudo-spectral simulator for the constrained ternary phase-field system.

The heavy lifting lives in the compiled extension; this package re-exports
it and adds small numpy conveniences.
"""

from ._core import *  # noqa: F401,F403
from ._core import ScalarField, PeriodicGrid

__version__ = "0.1.0"


def as_numpy(field):
    """Copy a ScalarField into a numpy array shaped like its grid."""
    return field.to_numpy()


def field_from_numpy(grid, values):
    """Build a ScalarField on ``grid`` from an array with one entry per node."""
    return ScalarField.from_array(grid, values)
