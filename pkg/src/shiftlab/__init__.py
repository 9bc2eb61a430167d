"""shiftlab: a toolkit for two-dimensional subshifts of finite type.

Gathers period-avoidance witnesses into concentric balls, semi-decides the
existence of aperiodic points, slices periodic fibers to one-dimensional
band automata, counts admissible patterns, and builds the 3D line-and-plane
family with unboundedly large smallest periods.
"""

from .kernel import BACKEND as KERNEL_BACKEND  # noqa: F401

__version__ = "0.1.0"
