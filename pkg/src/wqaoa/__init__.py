"""Parameter setting for QAOA on weighted problems.

Library layout:

- :mod:`wqaoa.graphs` - weighted graphs, random generation, girth
- :mod:`wqaoa.distributions` - weight distributions and trig expectations
- :mod:`wqaoa.polynomials` - spin-polynomial costs and rescaling rules
- :mod:`wqaoa.closed_form` - exact depth-1 results
- :mod:`wqaoa.tree` - infinite-girth transfer recursion for depth p
- :mod:`wqaoa.simulator` - exact statevector and weight-sector simulation
- :mod:`wqaoa.schemes` - parameter setting rules
- :mod:`wqaoa.optimize` - derivative-free trust-region optimizer
- :mod:`wqaoa.skmodel` - biased fully-connected spin glass bounds
- :mod:`wqaoa.experiments` - benchmark harness behind the CLI
"""

from . import closed_form, distributions, graphs, polynomials, simulator, tree
from .errors import (
    CapacityError,
    DegenerateScaleError,
    GenerationError,
    MomentError,
    NumericalError,
    PreconditionError,
)

__version__ = "0.1.0"
